#pragma once

// Dense univariate polynomials over a runtime field. Coefficients are stored
// low degree first and kept trimmed, so degree() is size()-1 and the zero
// polynomial has an empty vector (degree -1).

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtbounds/gf.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::shared_ptr<const Gf> field) : f_(std::move(field)) {}
    Poly(std::shared_ptr<const Gf> field, std::vector<GfElt> coeffs)
        : f_(std::move(field)), c_(std::move(coeffs)) {
        for (GfElt c : c_)
            if (c >= f_->order()) throw std::invalid_argument("Poly: coefficient out of range");
        trim();
    }

    static Poly zero(std::shared_ptr<const Gf> f) { return Poly(std::move(f)); }
    static Poly constant(std::shared_ptr<const Gf> f, GfElt c) {
        return Poly(std::move(f), {c});
    }
    static Poly one(std::shared_ptr<const Gf> f) { return constant(std::move(f), 1); }
    static Poly monomial(std::shared_ptr<const Gf> f, GfElt c, std::size_t deg) {
        std::vector<GfElt> v(deg + 1, 0);
        v[deg] = c;
        return Poly(std::move(f), std::move(v));
    }
    static Poly x(std::shared_ptr<const Gf> f) { return monomial(std::move(f), 1, 1); }
    static Poly xm_minus_lambda(std::shared_ptr<const Gf> f, std::size_t m, GfElt lambda) {
        std::vector<GfElt> v(m + 1, 0);
        v[0] = f->neg(lambda);
        v[m] = 1;
        return Poly(std::move(f), std::move(v));
    }

    const std::shared_ptr<const Gf>& field() const { return f_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<GfElt>& coeffs() const { return c_; }
    GfElt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    GfElt lead() const {
        if (is_zero()) throw std::logic_error("Poly: leading coefficient of zero");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.same_field(b) && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_field(b);
        const Gf& K = *a.f_;
        std::vector<GfElt> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = K.add(a.coeff(i), b.coeff(i));
        return Poly(a.f_, std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.require_field(b);
        const Gf& K = *a.f_;
        std::vector<GfElt> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = K.sub(a.coeff(i), b.coeff(i));
        return Poly(a.f_, std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_field(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.f_);
        const Gf& K = *a.f_;
        std::vector<GfElt> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = K.add(c[i + j], K.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.f_, std::move(c));
    }

    Poly scaled(GfElt s) const {
        std::vector<GfElt> c(c_);
        for (auto& v : c) v = f_->mul(v, s);
        return Poly(f_, std::move(c));
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(f_->inv(lead()));
    }

    // Euclidean division; the divisor need not be monic.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        a.require_field(b);
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        const Gf& K = *a.f_;
        std::vector<GfElt> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Poly(a.f_), a};
        std::vector<GfElt> q(std::size_t(a.degree() - db) + 1, 0);
        GfElt binv = K.inv(b.lead());
        for (int i = a.degree(); i >= db; --i) {
            GfElt c = K.mul(r[std::size_t(i)], binv);
            if (c == 0) continue;
            q[std::size_t(i - db)] = c;
            for (int j = 0; j <= db; ++j)
                r[std::size_t(i - db + j)] = K.sub(r[std::size_t(i - db + j)],
                                                   K.mul(c, b.c_[std::size_t(j)]));
        }
        return {Poly(a.f_, std::move(q)), Poly(a.f_, std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    GfElt eval(GfElt x) const {
        GfElt acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = f_->add(f_->mul(acc, x), c_[i]);
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            GfElt c = c_[std::size_t(i)];
            if (c == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0) {
                s += std::to_string(c);
                continue;
            }
            if (c != 1) s += std::to_string(c);
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    bool same_field(const Poly& o) const {
        if (!f_ || !o.f_) return f_ == o.f_;
        return f_->is(*o.f_);
    }
    void require_field(const Poly& o) const {
        if (!f_ || !same_field(o))
            throw std::invalid_argument("Poly: operands over different fields");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::shared_ptr<const Gf> f_;
    std::vector<GfElt> c_;
};

// gcd made monic; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Reinterpret a polynomial over a subfield as one over an extension built on
// it. Valid because the index embedding of a base field into its extensions
// is the identity, so coefficient handles transfer unchanged.
inline Poly poly_embed(const Poly& p, std::shared_ptr<const Gf> ext) {
    for (GfElt c : p.coeffs())
        if (c >= ext->order()) throw std::invalid_argument("poly_embed: coefficient outside field");
    return Poly(std::move(ext), p.coeffs());
}

// Horner evaluation of a subfield polynomial at an extension-field point,
// again relying on the identity index embedding.
inline GfElt eval_embedded(const Poly& p, const Gf& ext, GfElt x) {
    GfElt acc = 0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = ext.add(ext.mul(acc, x), c[i]);
    return acc;
}

// Irreducible factors of x^m - lambda over F_q, one per conjugacy class of
// roots, in class order (so factor i has the roots omega_k, k in class i).
inline std::vector<Poly> tower_class_factors(const FieldTower& T) {
    const auto& F = T.splitting_field();
    const auto& Fq = T.base_field();
    std::uint32_t q = T.q();
    std::vector<Poly> out;
    Poly prod = Poly::one(F);
    for (std::size_t i = 0; i < T.class_count(); ++i) {
        Poly fi = Poly::one(F);
        for (std::uint32_t k : T.conjugacy_class(i)) {
            Poly lin(F, {F->neg(T.omega(k)), 1});
            fi = fi * lin;
        }
        prod = prod * fi;
        // Coefficients are Frobenius-fixed, so their indices lie below q and
        // convert to base-field handles as-is.
        std::vector<GfElt> c = fi.coeffs();
        for (GfElt v : c)
            if (v >= q) throw std::logic_error("class factor has a coefficient outside F_q");
        out.emplace_back(Fq, std::move(c));
    }
    if (prod != Poly::xm_minus_lambda(F, T.m(), T.lambda()))
        throw std::logic_error("class factors do not multiply back to x^m - lambda");
    return out;
}

} // namespace qtb
