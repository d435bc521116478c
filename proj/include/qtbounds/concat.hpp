#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

namespace detail {

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, nt = 1, r = std::int64_t(n), nr = std::int64_t(a % n);
    while (nr != 0) {
        std::int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return std::uint64_t(t < 0 ? t + std::int64_t(n) : t);
}

} // namespace detail

// Isomorphism between the degree-d intermediate field of an extension and the
// canonical field of that size: a fixed primitive element of the subfield is
// sent to the smallest root of its minimal polynomial.
class SubfieldMap {
public:
    SubfieldMap(std::shared_ptr<const Gf> big, int d) : big_(std::move(big)) {
        if (d <= 0 || big_->deg_over_base() % d != 0)
            throw std::invalid_argument("SubfieldMap: degree must divide the extension degree");
        if (d == big_->deg_over_base()) {
            small_ = big_;
            identity_ = true;
            return;
        }
        small_ = Gf::extension_of_degree(big_->base(), d);
        step_ = std::uint64_t(big_->order() - 1) / (small_->order() - 1);
        GfElt gamma0 = big_->exp(step_);
        Poly mp = Poly::one(big_);
        GfElt conj = gamma0;
        for (int j = 0; j < d; ++j) {
            mp = mp * (Poly::x(big_) - Poly::constant(big_, conj));
            conj = big_->frobenius(conj);
        }
        std::vector<GfElt> cs(std::size_t(mp.degree()) + 1);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            GfElt c = mp.coeff(i);
            if (c >= big_->base_order())
                throw std::logic_error("SubfieldMap: minimal polynomial not over the base");
            cs[i] = c;
        }
        Poly mp_small(small_, cs);
        for (GfElt y = 0; y < small_->order(); ++y)
            if (mp_small.eval(y) == 0) {
                rho_ = y;
                break;
            }
        if (rho_ == 0) throw std::logic_error("SubfieldMap: no root of the minimal polynomial");
        if (small_->elt_order(rho_) != small_->order() - 1)
            throw std::logic_error("SubfieldMap: transferred element is not primitive");
        inv_log_rho_ = detail::inv_mod(small_->log(rho_), small_->order() - 1);
    }

    const std::shared_ptr<const Gf>& field() const { return small_; }

    GfElt to_small(GfElt x) const {
        if (identity_ || x == 0) return x;
        std::uint64_t lg = big_->log(x);
        if (lg % step_ != 0) throw std::invalid_argument("SubfieldMap: element outside the subfield");
        return small_->pow(rho_, std::int64_t(lg / step_));
    }

    GfElt to_big(GfElt y) const {
        if (identity_ || y == 0) return y;
        std::uint64_t k = (std::uint64_t(small_->log(y)) * inv_log_rho_) % (small_->order() - 1);
        return big_->exp(step_ * k);
    }

private:
    std::shared_ptr<const Gf> big_;
    std::shared_ptr<const Gf> small_;
    bool identity_ = false;
    std::uint64_t step_ = 1;
    GfElt rho_ = 0;
    std::uint64_t inv_log_rho_ = 1;
};

enum class ConstituentKind { kZero, kFull, kNontrivial };

// One evaluation of the reduced generating matrix at a conjugacy class
// representative. rows holds the raw evaluation, span its row space over the
// splitting field, distance the minimum weight over the class subfield.
struct Constituent {
    std::size_t cls;
    Mat rows;
    LinearCode span;
    ConstituentKind kind;
    ExtNat distance;
};

struct Constituents {
    std::vector<Constituent> classes;
    std::vector<std::size_t> gamma; // classes that are not full, i.e. carry eigenvalues
};

inline Constituents constituents(const QtCode& c) {
    const FieldTower& t = *c.tower();
    auto f = t.splitting_field();
    Constituents out;
    out.classes.reserve(t.class_count());
    std::size_t dim_acc = 0;
    for (std::size_t i = 0; i < t.class_count(); ++i) {
        Mat rows = c.reduced_at(t.omega(t.class_rep(i)));
        LinearCode span(rows);
        std::size_t k = span.dim();
        ConstituentKind kind;
        ExtNat dist{0};
        if (k == 0) {
            kind = ConstituentKind::kZero;
            dist = ExtNat::inf();
        } else if (k == c.ell()) {
            kind = ConstituentKind::kFull;
            dist = ExtNat(1);
        } else {
            kind = ConstituentKind::kNontrivial;
            SubfieldMap sm(f, int(t.subfield_degree(i)));
            Mat small(sm.field(), span.gen().rows, span.gen().cols);
            for (std::size_t a = 0; a < small.rows; ++a)
                for (std::size_t b = 0; b < small.cols; ++b)
                    small(a, b) = sm.to_small(span.gen()(a, b));
            dist = min_distance(LinearCode(std::move(small)));
        }
        if (kind != ConstituentKind::kFull) out.gamma.push_back(i);
        dim_acc += t.subfield_degree(i) * k;
        out.classes.push_back(Constituent{i, std::move(rows), std::move(span), kind, dist});
    }
    if (dim_acc != c.dimension())
        throw std::logic_error("constituents: class dimensions do not sum to the code dimension");
    return out;
}

// Distance of the q-ary constacyclic code whose check polynomial is the
// product of the chosen irreducible factors of x^m - lambda (generator is the
// complementary product).
inline ExtNat inner_sum_distance(const FieldTower& t, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw std::invalid_argument("inner_sum_distance: empty class subset");
    auto factors = tower_class_factors(t);
    Poly g = Poly::xm_minus_lambda(t.base_field(), t.m(), t.lambda());
    for (std::size_t i : subset) g = g / factors.at(i);
    std::size_t dim = t.m() - std::size_t(g.degree());
    Mat gen(t.base_field(), dim, t.m());
    for (std::size_t k = 0; k < dim; ++k)
        for (int j = 0; j <= g.degree(); ++j) gen(k, k + std::size_t(j)) = g.coeff(std::size_t(j));
    return min_distance(LinearCode(std::move(gen)));
}

// Concatenation bound: minimum over prefixes of (outer distance) x (distance
// of the direct sum of the matching minimal constacyclic inner codes). Full
// constituents lead the prefix order, then the nontrivial ones by ascending
// distance; ties fall back to class index.
struct JensenReport {
    ExtNat value{0};
    std::vector<std::size_t> order;
    std::size_t prefix = 0;
    ExtNat outer{0};
    ExtNat inner{0};
};

inline JensenReport jensen_bound(const QtCode& c, const Constituents& cons) {
    const FieldTower& t = *c.tower();
    JensenReport r;
    std::vector<std::size_t> nontriv;
    for (const auto& ct : cons.classes) {
        if (ct.kind == ConstituentKind::kFull) r.order.push_back(ct.cls);
        if (ct.kind == ConstituentKind::kNontrivial) nontriv.push_back(ct.cls);
    }
    std::sort(nontriv.begin(), nontriv.end(), [&](std::size_t a, std::size_t b) {
        const ExtNat &da = cons.classes[a].distance, &db = cons.classes[b].distance;
        return da != db ? da < db : a < b;
    });
    r.order.insert(r.order.end(), nontriv.begin(), nontriv.end());
    if (r.order.empty()) {
        r.value = ExtNat::inf();
        return r;
    }
    ExtNat best = ExtNat::inf();
    std::vector<std::size_t> prefix;
    for (std::size_t i : r.order) {
        prefix.push_back(i);
        ExtNat outer = cons.classes[i].distance;
        ExtNat inner = inner_sum_distance(t, prefix);
        ExtNat v = outer * inner;
        if (v < best) {
            best = v;
            r.prefix = prefix.size();
            r.outer = outer;
            r.inner = inner;
        }
    }
    r.value = best;
    return r;
}

inline JensenReport jensen_bound(const QtCode& c) { return jensen_bound(c, constituents(c)); }

// The q-ary code cut out by the non-full classes: subfield subcode of the sum
// of all Frobenius shifts of their row spaces. Agrees with the eigencode of
// the full spectrum.
inline LinearCode eigencode_from_constituents(const QtCode& c, const Constituents& cons) {
    const FieldTower& t = *c.tower();
    const Gf& f = *t.splitting_field();
    Mat stack(t.splitting_field(), 0, c.ell());
    for (std::size_t i : cons.gamma) {
        const Mat& g = cons.classes[i].span.gen();
        for (std::uint32_t j = 0; j < t.subfield_degree(i); ++j) {
            Mat fr = g;
            for (std::size_t a = 0; a < fr.rows; ++a)
                for (std::size_t b = 0; b < fr.cols; ++b) fr(a, b) = f.frobenius(g(a, b), int(j));
            stack = vstack(stack, fr);
        }
    }
    return LinearCode(base_solution_basis(right_kernel(stack)));
}

// Smallest field element whose trace onto the degree-d subfield is one.
inline GfElt unit_trace_element(const FieldTower& t, std::uint32_t deg_over_q) {
    const Gf& f = *t.splitting_field();
    for (GfElt b = 0; b < f.order(); ++b)
        if (t.trace_to_subfield(deg_over_q, b) == 1) return b;
    throw std::logic_error("unit_trace_element: trace map is onto, unreachable");
}

// Rebuild the flat codeword from per-class constituent words: entry (k, t) is
// Tr(sum_i b_i kappa_{i,t} alpha^{-k} xi^{-k u_i}) with Tr onto the base field
// and the usual 1/m constant dropped.
inline std::vector<GfElt> trace_reconstruct(const QtCode& c, const Constituents& cons,
                                            const std::vector<std::vector<GfElt>>& kappa) {
    const FieldTower& t = *c.tower();
    const Gf& f = *t.splitting_field();
    if (kappa.size() != t.class_count())
        throw std::invalid_argument("trace_reconstruct: one word per conjugacy class expected");
    std::vector<GfElt> b(t.class_count(), 0);
    for (std::size_t i = 0; i < t.class_count(); ++i) {
        if (kappa[i].size() != c.ell())
            throw std::invalid_argument("trace_reconstruct: word length mismatch");
        for (GfElt x : kappa[i])
            if (!t.in_subfield(t.subfield_degree(i), x))
                throw std::invalid_argument("trace_reconstruct: entry outside the class subfield");
        if (!cons.classes[i].span.contains(kappa[i]))
            throw std::invalid_argument("trace_reconstruct: word outside the constituent");
        b[i] = unit_trace_element(t, t.subfield_degree(i));
    }
    std::vector<GfElt> out(c.length(), 0);
    for (std::uint32_t k = 0; k < t.m(); ++k) {
        for (std::size_t tt = 0; tt < c.ell(); ++tt) {
            GfElt acc = 0;
            for (std::size_t i = 0; i < t.class_count(); ++i) {
                GfElt kv = kappa[i][tt];
                if (kv == 0) continue;
                std::int64_t ui = t.class_rep(i);
                GfElt rot = f.mul(f.pow(t.alpha(), -std::int64_t(k)),
                                  f.pow(t.xi(), -std::int64_t(k) * ui));
                acc = f.add(acc, f.mul(f.mul(b[i], kv), rot));
            }
            GfElt e = t.trace_to_subfield(1, acc);
            if (e >= t.q()) throw std::logic_error("trace_reconstruct: trace left the base field");
            out[k * c.ell() + tt] = e;
        }
    }
    return out;
}

} // namespace qtb
