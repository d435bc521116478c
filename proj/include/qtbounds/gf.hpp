#pragma once

// Runtime-sized finite fields with log/antilog tables.
//
// A field is either a prime field F_p or an extension F_b[y]/(f(y)) of
// another field by a monic irreducible f. Element handles are dense indices:
// an extension element's index is the mixed-radix encoding of its coefficient
// vector over the base field, least significant digit first. Consequences
// relied on throughout:
//   - index 0 is the additive and index 1 the multiplicative identity,
//   - for u < base order, the F-element with index u IS the embedded base
//    element u (the embedding of the base into the extension is the identity
//    on indices),
//   - in characteristic 2 every add is a plain XOR of indices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtb {

using GfElt = std::uint32_t;

class Gf {
public:
    // Field orders are capped at desk scale; tables are quadratic-free but
    // the optional add table is O(order^2).
    static constexpr std::uint32_t kMaxOrder = 1u << 22;
    static constexpr std::uint32_t kAddTableCap = 2048;

    static std::shared_ptr<const Gf> prime(std::uint32_t p);
    static std::shared_ptr<const Gf> extension(std::shared_ptr<const Gf> base,
                                               std::vector<GfElt> modulus);
    // Extension by the lexicographically smallest monic irreducible of the
    // given degree (coefficient vectors compared low-degree-first).
    static std::shared_ptr<const Gf> extension_of_degree(
        const std::shared_ptr<const Gf>& base, int deg);
    static std::vector<GfElt> smallest_irreducible(
        const std::shared_ptr<const Gf>& base, int deg);

    std::uint32_t order() const { return order_; }
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t base_order() const { return base_order_; }
    int deg_over_base() const { return deg_; }
    int deg_over_prime() const { return deg_prime_; }
    const std::shared_ptr<const Gf>& base() const { return base_; }
    // Modulus coefficients over the base field, low degree first, monic,
    // length deg_over_base()+1. Empty for prime fields.
    const std::vector<GfElt>& modulus() const { return modulus_; }

    bool is(const Gf& other) const { return this == &other; }

    GfElt add(GfElt a, GfElt b) const {
        if (p_ == 2) return a ^ b;
        if (!add_tab_.empty()) return add_tab_[a * order_ + b];
        return add_slow(a, b);
    }
    GfElt neg(GfElt a) const { return neg_tab_[a]; }
    GfElt sub(GfElt a, GfElt b) const { return add(a, neg(b)); }

    GfElt mul(GfElt a, GfElt b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t e = std::uint64_t(log_tab_[a]) + log_tab_[b];
        if (e >= order_ - 1) e -= order_ - 1;
        return exp_tab_[e];
    }
    GfElt inv(GfElt a) const {
        if (a == 0) throw std::domain_error("Gf: inverse of zero");
        std::uint32_t l = log_tab_[a];
        return exp_tab_[l == 0 ? 0 : order_ - 1 - l];
    }
    GfElt divide(GfElt a, GfElt b) const { return mul(a, inv(b)); }

    // a^e with e possibly negative; 0^0 = 1.
    GfElt pow(GfElt a, std::int64_t e) const {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw std::domain_error("Gf: 0 to negative power");
            return 0;
        }
        std::int64_t n = order_ - 1;
        std::int64_t r = e % n;
        if (r < 0) r += n;
        return exp_tab_[(std::uint64_t(log_tab_[a]) * std::uint64_t(r)) % std::uint64_t(n)];
    }

    // Fixed primitive element; exp/log are taken with respect to it.
    GfElt generator() const { return order_ == 2 ? 1 : exp_tab_[1]; }
    std::uint32_t log(GfElt a) const {
        if (a == 0) throw std::domain_error("Gf: log of zero");
        return log_tab_[a];
    }
    GfElt exp(std::uint64_t e) const { return exp_tab_[e % (order_ - 1)]; }

    std::uint32_t elt_order(GfElt a) const {
        if (a == 0) throw std::domain_error("Gf: order of zero");
        std::uint32_t n = order_ - 1;
        return n / std::gcd(n, log_tab_[a]);
    }

    // Digits of x over the immediate base field, low position first.
    GfElt digit(GfElt x, int i) const {
        return (x / pw_[std::size_t(i)]) % base_order_;
    }
    GfElt from_digits(const std::vector<GfElt>& d) const {
        if (d.size() > std::size_t(deg_)) throw std::invalid_argument("Gf: too many digits");
        GfElt x = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            if (d[i] >= base_order_) throw std::invalid_argument("Gf: digit out of range");
            x = x * base_order_ + d[i];
        }
        return x;
    }

    // x^(b^j) where b = base_order(): the Frobenius of the extension over its
    // base, iterated j times.
    GfElt frobenius(GfElt x, int j = 1) const {
        if (x == 0) return 0;
        std::uint64_t n = order_ - 1;
        std::uint64_t e = 1;
        for (int t = 0; t < j; ++t) e = (e * base_order_) % n;
        return exp_tab_[(std::uint64_t(log_tab_[x]) * e) % n];
    }

    // Membership in the intermediate field of degree d over the base
    // (d must divide deg_over_base()).
    bool in_subfield(int d, GfElt x) const {
        if (deg_ % d != 0) throw std::invalid_argument("Gf: subfield degree must divide extension degree");
        return frobenius(x, d) == x;
    }

    // Trace onto the intermediate field of degree d over the base:
    // sum of x^(q^(d*t)) over t < deg/d, q = base order.
    GfElt trace_to_subfield(int d, GfElt x) const {
        if (deg_ % d != 0) throw std::invalid_argument("Gf: subfield degree must divide extension degree");
        GfElt acc = 0;
        GfElt cur = x;
        for (int t = 0; t < deg_ / d; ++t) {
            acc = add(acc, cur);
            cur = frobenius(cur, d);
        }
        return acc;
    }

    // All elements of the intermediate field of degree d over the base, in
    // index order.
    std::vector<GfElt> subfield_elements(int d) const {
        std::vector<GfElt> out;
        for (GfElt x = 0; x < order_; ++x)
            if (in_subfield(d, x)) out.push_back(x);
        return out;
    }

private:
    Gf() = default;

    std::uint32_t p_ = 0;
    std::uint32_t order_ = 0;
    std::uint32_t base_order_ = 0;
    int deg_ = 1;
    int deg_prime_ = 1;
    std::shared_ptr<const Gf> base_; // null for prime fields
    std::vector<GfElt> modulus_;

    std::vector<GfElt> exp_tab_;         // size order-1
    std::vector<std::uint32_t> log_tab_; // size order, log_tab_[0] unused
    std::vector<GfElt> neg_tab_;
    std::vector<GfElt> add_tab_; // optional, order <= kAddTableCap
    std::vector<std::uint32_t> pw_; // base_order^i, i <= deg

    GfElt add_slow(GfElt a, GfElt b) const {
        if (!base_) return (a + b) % p_;
        GfElt x = 0;
        for (int i = deg_ - 1; i >= 0; --i) {
            GfElt d = base_->add(digit(a, i), digit(b, i));
            x = x * base_order_ + d;
        }
        return x;
    }

    // Table-free polynomial arithmetic on digit vectors, used only during
    // construction.
    std::vector<GfElt> digits_of(GfElt x) const {
        std::vector<GfElt> d(std::size_t(deg_), 0);
        for (int i = 0; i < deg_; ++i) d[std::size_t(i)] = digit(x, i);
        return d;
    }
    GfElt pack(const std::vector<GfElt>& d) const {
        GfElt x = 0;
        for (std::size_t i = d.size(); i-- > 0;) x = x * base_order_ + d[i];
        return x;
    }
    std::vector<GfElt> mul_vec(const std::vector<GfElt>& a, const std::vector<GfElt>& b) const;
    GfElt mul_slow(GfElt a, GfElt b) const { return pack(mul_vec(digits_of(a), digits_of(b))); }
    GfElt pow_slow(GfElt a, std::uint64_t e) const;

    void build_tables();

    static std::vector<std::uint32_t> prime_factors(std::uint32_t n);
    static bool poly_irreducible(const std::shared_ptr<const Gf>& base,
                                 const std::vector<GfElt>& f);
};

inline std::vector<GfElt> Gf::mul_vec(const std::vector<GfElt>& a,
                                      const std::vector<GfElt>& b) const {
    const Gf& K = base_ ? *base_ : *this;
    auto bmul = [&](GfElt x, GfElt y) -> GfElt {
        if (base_) return K.mul(x, y);
        return GfElt((std::uint64_t(x) * y) % p_);
    };
    std::vector<GfElt> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = K.add(c[i + j], bmul(a[i], b[j]));
    }
    // Reduce mod the monic modulus.
    for (std::size_t k = c.size(); k-- > std::size_t(deg_);) {
        GfElt lead = c[k];
        if (lead == 0) continue;
        c[k] = 0;
        for (int i = 0; i < deg_; ++i) {
            GfElt t = bmul(lead, modulus_[std::size_t(i)]);
            c[k - std::size_t(deg_) + std::size_t(i)] =
                K.sub(c[k - std::size_t(deg_) + std::size_t(i)], t);
        }
    }
    c.resize(std::size_t(deg_));
    return c;
}

inline GfElt Gf::pow_slow(GfElt a, std::uint64_t e) const {
    GfElt r = 1;
    GfElt b = a;
    while (e) {
        if (e & 1) r = mul_slow(r, b);
        b = mul_slow(b, b);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint32_t> Gf::prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline void Gf::build_tables() {
    pw_.assign(std::size_t(deg_) + 1, 1);
    for (int i = 1; i <= deg_; ++i) pw_[std::size_t(i)] = pw_[std::size_t(i - 1)] * base_order_;

    neg_tab_.assign(order_, 0);
    if (p_ == 2) {
        for (GfElt x = 0; x < order_; ++x) neg_tab_[x] = x;
    } else if (!base_) {
        for (GfElt x = 0; x < order_; ++x) neg_tab_[x] = x ? p_ - x : 0;
    } else {
        for (GfElt x = 0; x < order_; ++x) {
            GfElt v = 0;
            for (int i = deg_ - 1; i >= 0; --i)
                v = v * base_order_ + base_->neg(digit(x, i));
            neg_tab_[x] = v;
        }
    }

    // Primitive element: first index whose order is order-1.
    std::uint32_t n = order_ - 1;
    auto fs = prime_factors(n);
    GfElt g = 0;
    for (GfElt cand = 2; cand < order_; ++cand) {
        bool ok = true;
        for (auto f : fs)
            if (pow_slow(cand, n / f) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (g == 0 && n > 1) throw std::logic_error("Gf: no primitive element found");
    if (n == 1) g = 1;

    exp_tab_.assign(n, 1);
    log_tab_.assign(order_, 0);
    GfElt cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_tab_[i] = cur;
        log_tab_[cur] = i;
        cur = mul_slow(cur, g);
    }
    if (cur != 1) throw std::logic_error("Gf: generator order mismatch");

    if (order_ <= kAddTableCap && p_ != 2) {
        add_tab_.assign(std::size_t(order_) * order_, 0);
        for (GfElt a = 0; a < order_; ++a)
            for (GfElt b = 0; b < order_; ++b)
                add_tab_[std::size_t(a) * order_ + b] = add_slow(a, b);
    }
}

inline std::shared_ptr<const Gf> Gf::prime(std::uint32_t p) {
    if (p < 2) throw std::invalid_argument("Gf: characteristic must be at least 2");
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("Gf: characteristic must be prime");
    // Memoized so that fields compare by pointer identity everywhere.
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const Gf>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<Gf>(new Gf());
    f->p_ = p;
    f->order_ = p;
    f->base_order_ = p;
    f->deg_ = 1;
    f->deg_prime_ = 1;
    f->build_tables();
    cache.emplace(p, f);
    return f;
}

inline std::shared_ptr<const Gf> Gf::extension(std::shared_ptr<const Gf> base,
                                               std::vector<GfElt> modulus) {
    if (!base) throw std::invalid_argument("Gf: null base field");
    if (modulus.size() < 2) throw std::invalid_argument("Gf: modulus must have degree >= 1");
    if (modulus.back() != 1) throw std::invalid_argument("Gf: modulus must be monic");
    for (GfElt c : modulus)
        if (c >= base->order()) throw std::invalid_argument("Gf: modulus coefficient out of range");
    int deg = int(modulus.size()) - 1;
    std::uint64_t ord = 1;
    for (int i = 0; i < deg; ++i) {
        ord *= base->order();
        if (ord > kMaxOrder) throw std::invalid_argument("Gf: field order above desk-scale cap");
    }
    auto f = std::shared_ptr<Gf>(new Gf());
    f->p_ = base->characteristic();
    f->order_ = std::uint32_t(ord);
    f->base_order_ = base->order();
    f->deg_ = deg;
    f->deg_prime_ = deg * base->deg_over_prime();
    f->base_ = std::move(base);
    f->modulus_ = std::move(modulus);
    f->build_tables();
    return f;
}

inline bool Gf::poly_irreducible(const std::shared_ptr<const Gf>& base,
                                 const std::vector<GfElt>& f) {
    // Degree-1 polynomials are irreducible; otherwise use the standard
    // criterion: x^(q^d) = x mod f, and x^(q^(d/t)) - x coprime to f for
    // every prime t | d.
    int d = int(f.size()) - 1;
    if (d == 1) return true;
    const Gf& K = *base;
    std::uint32_t q = K.order();

    auto polymulmod = [&](const std::vector<GfElt>& a, const std::vector<GfElt>& b) {
        std::vector<GfElt> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
        }
        for (std::size_t k = c.size(); k-- > std::size_t(d);) {
            GfElt lead = c[k];
            if (lead == 0) continue;
            c[k] = 0;
            for (int i = 0; i < d; ++i)
                c[k - std::size_t(d) + std::size_t(i)] =
                    K.sub(c[k - std::size_t(d) + std::size_t(i)], K.mul(lead, f[std::size_t(i)]));
        }
        c.resize(std::size_t(d));
        return c;
    };
    auto xpowq = [&](std::vector<GfElt> a, int times) {
        // a -> a^(q^times) mod f via repeated squaring on the exponent q.
        for (int t = 0; t < times; ++t) {
            std::vector<GfElt> r{1};
            r.resize(std::size_t(d), 0);
            std::vector<GfElt> b = a;
            std::uint32_t e = q;
            while (e) {
                if (e & 1) r = polymulmod(r, b);
                b = polymulmod(b, b);
                e >>= 1;
            }
            a = r;
        }
        return a;
    };
    auto is_x = [&](const std::vector<GfElt>& a) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            GfElt want = (i == 1) ? 1u : 0u;
            if (a[i] != want) return false;
        }
        return true;
    };
    auto polygcd_with_f = [&](std::vector<GfElt> a) {
        // gcd(f, a) where a has degree < d.
        std::vector<GfElt> r0 = f, r1 = a;
        auto degof = [](const std::vector<GfElt>& v) {
            for (std::size_t i = v.size(); i-- > 0;)
                if (v[i] != 0) return int(i);
            return -1;
        };
        while (degof(r1) >= 0) {
            int d0 = degof(r0), d1 = degof(r1);
            if (d0 < d1) { std::swap(r0, r1); continue; }
            GfElt c = K.divide(r0[std::size_t(d0)], r1[std::size_t(d1)]);
            for (int i = 0; i <= d1; ++i)
                r0[std::size_t(d0 - d1 + i)] =
                    K.sub(r0[std::size_t(d0 - d1 + i)], K.mul(c, r1[std::size_t(i)]));
        }
        return degof(r0);
    };

    std::vector<GfElt> x(std::size_t(d), 0); // d >= 2 here
    x[1] = 1;
    if (!is_x(xpowq(x, d))) return false;
    for (std::uint32_t t : prime_factors(std::uint32_t(d))) {
        auto a = xpowq(x, d / int(t));
        // a - x
        std::vector<GfElt> diff = a;
        diff[1] = K.sub(diff[1], 1);
        bool zero = true;
        for (GfElt c : diff)
            if (c != 0) { zero = false; break; }
        if (zero) return false;
        if (polygcd_with_f(diff) > 0) return false;
    }
    return true;
}

inline std::vector<GfElt> Gf::smallest_irreducible(
    const std::shared_ptr<const Gf>& base, int deg) {
    if (deg < 1) throw std::invalid_argument("Gf: extension degree must be positive");
    std::uint32_t q = base->order();
    // Enumerate monic candidates in lexicographic order on the coefficient
    // vector read low degree first (c_0 most significant for the comparison).
    std::vector<GfElt> c(std::size_t(deg) + 1, 0);
    c[std::size_t(deg)] = 1;
    // Odometer over (c_0, ..., c_{deg-1}) with c_0 slowest.
    while (true) {
        if (poly_irreducible(base, c)) return c;
        int pos = deg - 1;
        while (pos >= 0) {
            if (++c[std::size_t(pos)] < q) break;
            c[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) throw std::logic_error("Gf: no irreducible polynomial found");
    }
}

inline std::shared_ptr<const Gf> Gf::extension_of_degree(
    const std::shared_ptr<const Gf>& base, int deg) {
    // Memoized on (base, deg); with the canonical modulus choice this makes
    // repeated tower constructions land on pointer-identical field objects.
    static std::mutex mu;
    static std::map<std::pair<const Gf*, int>, std::shared_ptr<const Gf>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({base.get(), deg});
        if (it != cache.end()) return it->second;
    }
    auto f = extension(base, smallest_irreducible(base, deg));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::pair<const Gf*, int>{base.get(), deg}, f).first->second;
}

} // namespace qtb
