#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtbounds/constabounds.hpp"
#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

// Eigenvalue data of the reduced generating matrix. For each root omega_k of
// x^m - lambda: the multiplicity of omega_k in det G(x) (a simple count of
// vanishing diagonal entries, the diagonal divisors are squarefree) and a
// basis of the right kernel of G(omega_k) over the splitting field.
struct Spectrum {
    ZeroMask eigenvalues = 0;
    std::vector<std::uint32_t> multiplicity;
    std::vector<Mat> eigenbasis;
};

inline Spectrum spectrum(const QtCode& c) {
    const FieldTower& t = *c.tower();
    require_mask_width(t);
    auto f = t.splitting_field();
    Spectrum sp;
    sp.multiplicity.assign(t.m(), 0);
    sp.eigenbasis.reserve(t.m());
    std::uint32_t total = 0;
    for (std::uint32_t k = 0; k < t.m(); ++k) {
        std::uint32_t mult = 0;
        for (std::size_t j = 0; j < c.ell(); ++j)
            if (eval_embedded(c.diag(j), *f, t.omega(k)) == 0) ++mult;
        Mat v = right_kernel(c.reduced_at(t.omega(k)));
        if (v.rows != mult)
            throw std::logic_error("spectrum: eigenspace dimension disagrees with multiplicity");
        sp.multiplicity[k] = mult;
        sp.eigenbasis.push_back(std::move(v));
        if (mult > 0) sp.eigenvalues |= ZeroMask(1) << k;
        total += mult;
    }
    std::uint32_t codim = 0;
    for (std::size_t j = 0; j < c.ell(); ++j) codim += std::uint32_t(c.diag(j).degree());
    if (total != codim)
        throw std::logic_error("spectrum: multiplicities do not sum to the diagonal codimension");
    for (std::size_t i = 0; i < t.class_count(); ++i) {
        bool any = false, all = true;
        for (std::uint32_t k : t.conjugacy_class(i)) {
            bool in = (sp.eigenvalues >> k) & 1;
            any = any || in;
            all = all && in;
        }
        if (any != all)
            throw std::logic_error("spectrum: eigenvalue set not closed under conjugacy");
    }
    return sp;
}

// Stacked parity rows (1, beta, ..., beta^{m-1}) (x) v for every eigenvector v,
// over the splitting field. Block k of a length m*ell row multiplies array row
// k of the codeword.
inline Mat parity_check(const QtCode& c, const Spectrum& sp) {
    if (sp.eigenvalues == 0)
        throw std::invalid_argument("parity_check: code has an empty spectrum");
    const FieldTower& t = *c.tower();
    const Gf& f = *t.splitting_field();
    std::size_t total = 0;
    for (auto m : sp.multiplicity) total += m;
    Mat h(t.splitting_field(), total, c.length());
    std::size_t row = 0;
    for (std::uint32_t k = 0; k < t.m(); ++k) {
        if (sp.multiplicity[k] == 0) continue;
        GfElt beta = t.omega(k);
        const Mat& v = sp.eigenbasis[k];
        for (std::size_t vr = 0; vr < v.rows; ++vr) {
            GfElt pw = 1;
            for (std::uint32_t a = 0; a < t.m(); ++a) {
                for (std::size_t j = 0; j < c.ell(); ++j)
                    h(row, a * c.ell() + j) = f.mul(pw, v(vr, j));
                pw = f.mul(pw, beta);
            }
            ++row;
        }
    }
    return h;
}

// Basis of the common eigenspace over the eigenvalue set p: the intersection
// of the right kernels, computed as the kernel of the stacked evaluations.
inline Mat eigenspace_intersection(const QtCode& c, ZeroMask p) {
    const FieldTower& t = *c.tower();
    Mat stack(t.splitting_field(), 0, c.ell());
    for (std::uint32_t k : mask_indices(p)) stack = vstack(stack, c.reduced_at(t.omega(k)));
    return right_kernel(stack);
}

// The q-ary code cut out by the common eigenspace: all base-field vectors
// orthogonal to every common eigenvector. A zero common eigenspace leaves the
// full q-ary space.
inline LinearCode eigencode(const QtCode& c, const Spectrum& sp, ZeroMask p) {
    if (p == 0) throw std::invalid_argument("eigencode: empty eigenvalue set");
    if ((p & ~sp.eigenvalues) != 0)
        throw std::invalid_argument("eigencode: set not contained in the spectrum");
    Mat vp = eigenspace_intersection(c, p);
    if (vp.rows == 0) return LinearCode::full(c.field(), c.ell());
    return LinearCode(base_solution_basis(vp));
}

// Sorted-index lexicographic order on subsets; the tie-break order for
// reported witnesses.
inline bool lex_mask_less(ZeroMask a, ZeroMask b) {
    return mask_indices(a) < mask_indices(b);
}

namespace detail {

// Nonempty subsets of u, smallest size first, colexicographic (numeric mask
// order) within a size, at most cap entries.
inline std::vector<ZeroMask> subsets_by_size(ZeroMask u, std::uint64_t cap, bool& exhaustive) {
    std::vector<std::uint32_t> idx = mask_indices(u);
    std::size_t n = idx.size();
    std::vector<ZeroMask> out;
    exhaustive = true;
    for (std::size_t s = 1; s <= n; ++s) {
        std::uint64_t comp = (std::uint64_t(1) << s) - 1;
        while (true) {
            if (out.size() >= cap) {
                exhaustive = false;
                return out;
            }
            ZeroMask p = 0;
            for (std::size_t b = 0; b < n; ++b)
                if ((comp >> b) & 1) p |= ZeroMask(1) << idx[b];
            out.push_back(p);
            if (s == n) break;
            std::uint64_t low = comp & (~comp + 1);
            std::uint64_t ripple = comp + low;
            comp = (((ripple ^ comp) >> 2) / low) | ripple;
            if (comp >= (std::uint64_t(1) << n)) break;
        }
    }
    return out;
}

} // namespace detail

struct SpectralOptions {
    std::uint64_t subset_cap = std::uint64_t(1) << 16;
    std::size_t shift_state_cap = std::size_t(1) << 20;
    std::uint64_t enum_budget = kDefaultEnumBudget;
};

// One evaluated defining-set/eigencode pairing: value = min(pair_value,
// eigen_value) maximized over the scanned pairs.
struct BoundReport {
    ExtNat value{0};
    ZeroMask witness = 0;
    BoundFamily family = BoundFamily::kExact;
    ExtNat pair_value{0};
    ExtNat eigen_value{0};
    std::string detail;
    bool exhaustive = true;
};

// Per-code evaluation cache. The eigencode distance map is not synchronized;
// use one context per worker. The defining-set distance cache may be shared
// across codes on the same tower.
class SpectralContext {
public:
    explicit SpectralContext(const QtCode& code,
                             std::shared_ptr<DistTrueCache> dists = nullptr)
        : code_(&code),
          sp_(spectrum(code)),
          dists_(dists ? std::move(dists) : std::make_shared<DistTrueCache>(code.tower())) {}

    const QtCode& code() const { return *code_; }
    const Spectrum& spec() const { return sp_; }
    DistTrueCache& dist_true_cache() { return *dists_; }

    ExtNat pair_distance(ZeroMask p) { return dists_->get(p); }

    ExtNat eigen_distance(ZeroMask p) {
        if (p == 0) return ExtNat::inf();
        auto it = eig_.find(p);
        if (it != eig_.end()) return it->second;
        ExtNat d = min_distance(eigencode(*code_, sp_, p), MinDistStrategy::kAuto, enum_budget_);
        eig_.emplace(p, d);
        return d;
    }

    void set_enum_budget(std::uint64_t b) { enum_budget_ = b; }

private:
    const QtCode* code_;
    Spectrum sp_;
    std::shared_ptr<DistTrueCache> dists_;
    std::map<ZeroMask, ExtNat> eig_;
    std::uint64_t enum_budget_ = kDefaultEnumBudget;
};

// Point query for a single eigenvalue subset: the exact distance certified for
// the subset, the eigencode distance, and their min.
struct SubsetReport {
    ZeroMask subset = 0;
    ExtNat pair_value{0};
    ExtNat eigen_value{0};
    ExtNat bound{0};
};

inline SubsetReport subset_report(SpectralContext& ctx, ZeroMask p) {
    SubsetReport r;
    r.subset = p;
    r.pair_value = ctx.pair_distance(p);
    r.eigen_value = ctx.eigen_distance(p);
    r.bound = std::min(r.pair_value, r.eigen_value);
    return r;
}

// Maximize min(pair value, eigencode distance) over the supplied pairs. Pairs
// outside the spectrum or with an empty subset carry no information and are
// skipped. Ties keep the lexicographically smallest witness subset, then the
// earliest pair in scan order.
inline BoundReport combine_pairs(SpectralContext& ctx, const std::vector<DefSetBound>& pairs,
                                 bool exhaustive = true) {
    const Spectrum& sp = ctx.spec();
    BoundReport best;
    best.exhaustive = exhaustive;
    bool have = false;
    for (const auto& pr : pairs) {
        if (pr.subset == 0 || (pr.subset & ~sp.eigenvalues) != 0) continue;
        ExtNat eig = ctx.eigen_distance(pr.subset);
        ExtNat v = std::min(pr.value, eig);
        bool take = !have || best.value < v ||
                    (v == best.value && lex_mask_less(pr.subset, best.witness));
        if (take) {
            best.value = v;
            best.witness = pr.subset;
            best.family = pr.family;
            best.pair_value = pr.value;
            best.eigen_value = eig;
            best.detail = pr.witness;
            have = true;
        }
    }
    if (!have) best.detail = "no admissible pairs";
    return best;
}

// Defining-set pairs of one family over the spectrum. When every root is an
// eigenvalue the pair (all roots, infinity) certified by the vanishing of the
// associated constacyclic code joins every family.
inline std::vector<DefSetBound> family_pairs(SpectralContext& ctx, BoundFamily f,
                                             const SpectralOptions& opt, bool& exhaustive) {
    const FieldTower& t = *ctx.code().tower();
    ZeroMask u = ctx.spec().eigenvalues;
    std::vector<DefSetBound> pairs;
    exhaustive = true;
    switch (f) {
        case BoundFamily::kExact: {
            for (ZeroMask p : detail::subsets_by_size(u, opt.subset_cap, exhaustive))
                pairs.push_back({p, ctx.pair_distance(p), BoundFamily::kExact, "exact"});
            break;
        }
        case BoundFamily::kConsecutive:
            pairs = consecutive_sets(t, u);
            break;
        case BoundFamily::kTwoStride:
            pairs = ht_sets(t, u);
            break;
        case BoundFamily::kProduct:
            pairs = roos_sets(t, u);
            break;
        case BoundFamily::kChain:
            pairs = shift_independent(t, u, &exhaustive, opt.shift_state_cap);
            break;
    }
    if (u == full_mask(t.m())) pairs.push_back({u, ExtNat::inf(), f, "full spectrum"});
    return pairs;
}

// The spectral bound over the union of the listed families.
inline BoundReport spectral_bound(SpectralContext& ctx, const std::vector<BoundFamily>& families,
                                  const SpectralOptions& opt = {}) {
    ctx.set_enum_budget(opt.enum_budget);
    std::vector<DefSetBound> pairs;
    bool exhaustive = true;
    for (BoundFamily f : families) {
        bool ex = true;
        auto part = family_pairs(ctx, f, opt, ex);
        exhaustive = exhaustive && ex;
        pairs.insert(pairs.end(), part.begin(), part.end());
    }
    return combine_pairs(ctx, pairs, exhaustive);
}

inline BoundReport spectral_bound(SpectralContext& ctx, BoundFamily family,
                                  const SpectralOptions& opt = {}) {
    return spectral_bound(ctx, std::vector<BoundFamily>{family}, opt);
}

// Shift variant of the spectral bound: for every universe P inside the
// spectrum, grow independent sets A (new positions drawn from outside P) and
// certify min(|A|, eigencode distance of A cut to the spectrum). An A that
// leaves the spectrum entirely carries eigencode distance infinity.
inline BoundReport shift_spectral_bound(SpectralContext& ctx, const SpectralOptions& opt = {}) {
    ctx.set_enum_budget(opt.enum_budget);
    const FieldTower& t = *ctx.code().tower();
    ZeroMask ob = ctx.spec().eigenvalues;
    BoundReport best;
    best.family = BoundFamily::kChain;
    bool have = false;
    bool exhaustive = true;

    std::vector<ZeroMask> universes;
    universes.push_back(0);
    {
        bool ex = true;
        for (ZeroMask p : detail::subsets_by_size(ob, opt.subset_cap, ex)) universes.push_back(p);
        exhaustive = exhaustive && ex;
    }
    for (ZeroMask p : universes) {
        bool ex = true;
        for (ZeroMask a : shift_reachable(t, p, &ex, opt.shift_state_cap)) {
            if (a == 0) continue;
            ZeroMask ta = a & ob;
            ExtNat eig = ctx.eigen_distance(ta);
            ExtNat v = std::min(ExtNat(std::uint64_t(std::popcount(a))), eig);
            bool take = !have || best.value < v ||
                        (v == best.value && lex_mask_less(ta, best.witness));
            if (take) {
                best.value = v;
                best.witness = ta;
                best.pair_value = ExtNat(std::uint64_t(std::popcount(a)));
                best.eigen_value = eig;
                best.detail = "A=" + mask_str(a) + " universe=" + mask_str(p);
                have = true;
            }
        }
        exhaustive = exhaustive && ex;
    }
    best.exhaustive = exhaustive;
    return best;
}

} // namespace qtb
