#pragma once

// Defining-set bound families for lambda-constacyclic codes of length m.
// Subsets of the root set Omega = {omega_0, ..., omega_{m-1}} are bitmasks
// over root indices. Every family returns pairs (P, d_P) with the contract:
// any constacyclic code over the splitting field whose zero set contains P
// has minimum distance at least d_P.
//
// Families: exact subset distances (B1), consecutive sets (B2), two-stride
// sets (B3), the two-set product construction (B4), and independent-set
// chains (B5).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtbounds/extnat.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

using ZeroMask = std::uint64_t;

inline void require_mask_width(const FieldTower& t) {
    if (t.m() > 63)
        throw std::invalid_argument("root-set bitmasks support co-index up to 63");
}

inline ZeroMask full_mask(std::uint32_t m) { return (ZeroMask(1) << m) - 1; }

inline std::vector<std::uint32_t> mask_indices(ZeroMask p) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t k = 0; p >> k; ++k)
        if ((p >> k) & 1) out.push_back(k);
    return out;
}

inline ZeroMask mask_from_indices(const std::vector<std::uint32_t>& idx) {
    ZeroMask p = 0;
    for (auto k : idx) p |= ZeroMask(1) << k;
    return p;
}

// Index rotation k -> k + t (mod m); on roots this is scaling by xi^t.
inline ZeroMask rotate_mask(ZeroMask p, std::uint32_t t, std::uint32_t m) {
    t %= m;
    if (t == 0) return p;
    return ((p << t) | (p >> (m - t))) & full_mask(m);
}

inline std::string mask_str(ZeroMask p) {
    std::string s = "{";
    bool first = true;
    for (auto k : mask_indices(p)) {
        if (!first) s += ",";
        s += std::to_string(k);
        first = false;
    }
    return s + "}";
}

enum class BoundFamily { kExact, kConsecutive, kTwoStride, kProduct, kChain };

inline const char* family_tag(BoundFamily f) {
    switch (f) {
        case BoundFamily::kExact: return "B1";
        case BoundFamily::kConsecutive: return "B2";
        case BoundFamily::kTwoStride: return "B3";
        case BoundFamily::kProduct: return "B4";
        case BoundFamily::kChain: return "B5";
    }
    return "?";
}

struct DefSetBound {
    ZeroMask subset = 0;
    ExtNat value;
    BoundFamily family = BoundFamily::kExact;
    std::string witness;
};

// Parity rows of the constacyclic code with zero set P: codeword coefficient
// vectors are annihilated by the Vandermonde rows (1, w_k, w_k^2, ...).
inline Mat vandermonde_parity(const FieldTower& t, ZeroMask p) {
    require_mask_width(t);
    if (p == 0) throw std::invalid_argument("vandermonde_parity: empty zero set");
    auto idx = mask_indices(p);
    Mat h(t.splitting_field(), idx.size(), t.m());
    const Gf& f = *t.splitting_field();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        GfElt w = t.omega(idx[i]);
        GfElt cur = 1;
        for (std::uint32_t j = 0; j < t.m(); ++j) {
            h(i, j) = cur;
            cur = f.mul(cur, w);
        }
    }
    return h;
}

// Exact minimum distance of the constacyclic code over the splitting field
// with zero set P. The full zero set cuts the code to zero, distance inf.
inline ExtNat dist_true(const FieldTower& t, ZeroMask p) {
    require_mask_width(t);
    if (p == full_mask(t.m())) return ExtNat::inf();
    if (p == 0) return ExtNat(1);
    return ExtNat(detail::support_rank_distance(vandermonde_parity(t, p)));
}

class DistTrueCache {
public:
    explicit DistTrueCache(std::shared_ptr<const FieldTower> t) : t_(std::move(t)) {}

    const FieldTower& tower() const { return *t_; }

    ExtNat get(ZeroMask p) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(p);
            if (it != map_.end()) return it->second;
        }
        ExtNat d = dist_true(*t_, p);
        std::lock_guard<std::mutex> lock(mu_);
        return map_.emplace(p, d).first->second;
    }

private:
    std::shared_ptr<const FieldTower> t_;
    std::mutex mu_;
    std::unordered_map<ZeroMask, ExtNat> map_;
};

// Family 1: every subset of the universe with its exact distance. The scan
// is 2^|s|, hard-capped because it is meant for desk-scale spectra.
inline std::vector<DefSetBound> exact_subset_bounds(DistTrueCache& cache, ZeroMask s,
                                                    std::uint32_t max_bits = 16) {
    require_mask_width(cache.tower());
    if (std::uint32_t(std::popcount(s)) > max_bits)
        throw std::invalid_argument("exact_subset_bounds: universe above the subset-scan cap");
    std::vector<DefSetBound> out;
    ZeroMask sub = s;
    while (true) {
        out.push_back({sub, cache.get(sub), BoundFamily::kExact, "exact"});
        if (sub == 0) break;
        sub = (sub - 1) & s;
    }
    return out;
}

namespace detail {

inline void keep_max(std::map<ZeroMask, DefSetBound>& best, DefSetBound b) {
    auto it = best.find(b.subset);
    if (it == best.end() || it->second.value < b.value) best[b.subset] = std::move(b);
}

inline std::vector<DefSetBound> flatten(std::map<ZeroMask, DefSetBound>&& best) {
    std::vector<DefSetBound> out;
    out.reserve(best.size());
    for (auto& [mask, b] : best) out.push_back(std::move(b));
    return out;
}

} // namespace detail

// Family 2: consecutive sets E = {e + z*n : 0 <= z <= delta-2} inside the
// universe, stride n coprime to m, valued |E|+1. All subsets are emitted,
// not only maximal ones: a shorter run has a smaller subset, which can win
// after intersection with an eigenvalue pattern.
inline std::vector<DefSetBound> consecutive_sets(const FieldTower& t, ZeroMask s) {
    require_mask_width(t);
    std::uint32_t m = t.m();
    std::map<ZeroMask, DefSetBound> best;
    for (std::uint32_t n = 1; n < m; ++n) {
        if (std::gcd(n, m) != 1) continue;
        for (std::uint32_t e = 0; e < m; ++e) {
            ZeroMask mask = 0;
            for (std::uint32_t len = 1; len <= m; ++len) {
                std::uint32_t k = (e + (len - 1) * n) % m;
                if (!((s >> k) & 1)) break;
                mask |= ZeroMask(1) << k;
                std::string w = "e=" + std::to_string(e) + " n=" + std::to_string(n) +
                                " delta=" + std::to_string(len + 1);
                detail::keep_max(best, {mask, ExtNat(len + 1), BoundFamily::kConsecutive, w});
            }
        }
    }
    return detail::flatten(std::move(best));
}

// Family 3: D = {e + z*n1 + y*n2 : z <= delta-2, y <= s_rep} with
// gcd(m, n1) = 1 and gcd(m, n2) < delta, valued delta + s_rep. The repeat
// count is capped so the y-line has s_rep+1 distinct points; past that the
// set stops growing while the claimed value would keep rising.
inline std::vector<DefSetBound> ht_sets(const FieldTower& t, ZeroMask s) {
    require_mask_width(t);
    std::uint32_t m = t.m();
    std::map<ZeroMask, DefSetBound> best;
    for (std::uint32_t n1 = 1; n1 < m; ++n1) {
        if (std::gcd(n1, m) != 1) continue;
        for (std::uint32_t n2 = 1; n2 < m; ++n2) {
            std::uint32_t g = std::gcd(n2, m);
            for (std::uint32_t e = 0; e < m; ++e) {
                ZeroMask zline = 0;
                for (std::uint32_t delta = 2; delta <= m; ++delta) {
                    std::uint32_t k = (e + (delta - 2) * n1) % m;
                    if (!((s >> k) & 1)) break;
                    zline |= ZeroMask(1) << k;
                    if (g >= delta) continue;
                    ZeroMask d = zline;
                    for (std::uint32_t rep = 1; rep < m / g; ++rep) {
                        ZeroMask layer = rotate_mask(zline, rep * n2, m);
                        if ((layer & ~s) != 0) break;
                        d |= layer;
                        std::string w = "e=" + std::to_string(e) +
                                        " n1=" + std::to_string(n1) +
                                        " n2=" + std::to_string(n2) +
                                        " delta=" + std::to_string(delta) +
                                        " s=" + std::to_string(rep);
                        detail::keep_max(best,
                                         {d, ExtNat(delta + rep), BoundFamily::kTwoStride, w});
                    }
                }
            }
        }
    }
    return detail::flatten(std::move(best));
}

// Family 4: pick a consecutive set N and a nonempty M with every translate
// N + j, j in M, inside the universe; if some consecutive M' containing M
// has |M'| <= |M| + |N| - 1, the union of translates is bounded by
// |M| + |N|. M is scanned as the full intersection of the translate-valid
// set with a stride window, anchored at valid points; covering windows
// shrink to that case.
inline std::vector<DefSetBound> roos_sets(const FieldTower& t, ZeroMask s) {
    require_mask_width(t);
    std::uint32_t m = t.m();
    std::map<ZeroMask, DefSetBound> best;
    for (std::uint32_t n = 1; n < m || (m == 1 && n == 1); ++n) {
        if (std::gcd(n, m) != 1) continue;
        for (std::uint32_t e = 0; e < m; ++e) {
            ZeroMask nmask = 0;
            for (std::uint32_t nu = 1; nu <= m; ++nu) {
                nmask |= ZeroMask(1) << ((e + (nu - 1) * n) % m);
                // T: translate amounts j with N + j inside the universe.
                ZeroMask tset = full_mask(m);
                for (auto k : mask_indices(nmask))
                    tset &= rotate_mask(s, m - k % m, m);
                if (tset == 0) continue;
                for (std::uint32_t n2 = 1; n2 < m || (m == 1 && n2 == 1); ++n2) {
                    if (std::gcd(n2, m) != 1) continue;
                    // Multiply indices by n2^{-1}: windows of stride n2
                    // become cyclic intervals.
                    std::uint32_t inv = 1;
                    while ((std::uint64_t(inv) * n2) % m != 1 % m) ++inv;
                    ZeroMask that = 0;
                    for (auto j : mask_indices(tset))
                        that |= ZeroMask(1) << ((std::uint64_t(j) * inv) % m);
                    auto pts = mask_indices(that);
                    for (auto a : pts) {
                        for (auto b : pts) {
                            std::uint32_t w = (b + m - a) % m + 1;
                            ZeroMask window = 0;
                            for (std::uint32_t z = 0; z < w; ++z)
                                window |= ZeroMask(1) << ((a + z) % m);
                            ZeroMask mhat = that & window;
                            std::uint32_t msize = std::uint32_t(std::popcount(mhat));
                            if (w > msize + nu - 1) continue;
                            ZeroMask prod = 0;
                            for (auto j : mask_indices(mhat))
                                prod |= rotate_mask(nmask, std::uint32_t((std::uint64_t(j) * n2) % m), m);
                            std::string wit = "N(e=" + std::to_string(e) + ",n=" +
                                              std::to_string(n) + ",len=" + std::to_string(nu) +
                                              ") |M|=" + std::to_string(msize) +
                                              " window=" + std::to_string(w);
                            detail::keep_max(best, {prod, ExtNat(msize + nu),
                                                    BoundFamily::kProduct, std::move(wit)});
                        }
                    }
                }
            }
        }
    }
    return detail::flatten(std::move(best));
}

// Family 4, general form at recursion depth one: N is any subset carrying a
// value d_N from an already-computed bound pair, M as above with window
// allowance |M| + d_N - 2. Off the default path; the consecutive-N form
// covers everything the comparison pipeline needs.
inline std::vector<DefSetBound> roos_general(const FieldTower& t, ZeroMask s,
                                             const std::vector<DefSetBound>& seeds) {
    require_mask_width(t);
    std::uint32_t m = t.m();
    std::map<ZeroMask, DefSetBound> best;
    for (const auto& seed : seeds) {
        if (seed.subset == 0 || seed.value.is_inf()) continue;
        std::uint64_t dn = seed.value.value();
        if (dn < 2) continue;
        ZeroMask tset = full_mask(m);
        for (auto k : mask_indices(seed.subset)) tset &= rotate_mask(s, m - k % m, m);
        if (tset == 0) continue;
        for (std::uint32_t n2 = 1; n2 < m || (m == 1 && n2 == 1); ++n2) {
            if (std::gcd(n2, m) != 1) continue;
            std::uint32_t inv = 1;
            while ((std::uint64_t(inv) * n2) % m != 1 % m) ++inv;
            ZeroMask that = 0;
            for (auto j : mask_indices(tset))
                that |= ZeroMask(1) << ((std::uint64_t(j) * inv) % m);
            auto pts = mask_indices(that);
            for (auto a : pts) {
                for (auto b : pts) {
                    std::uint32_t w = (b + m - a) % m + 1;
                    ZeroMask window = 0;
                    for (std::uint32_t z = 0; z < w; ++z)
                        window |= ZeroMask(1) << ((a + z) % m);
                    ZeroMask mhat = that & window;
                    std::uint32_t msize = std::uint32_t(std::popcount(mhat));
                    if (w > msize + dn - 2) continue;
                    ZeroMask prod = 0;
                    for (auto j : mask_indices(mhat))
                        prod |= rotate_mask(seed.subset,
                                            std::uint32_t((std::uint64_t(j) * n2) % m), m);
                    std::string wit = "N=" + mask_str(seed.subset) + " dN=" +
                                      std::to_string(dn) + " |M|=" + std::to_string(msize) +
                                      " window=" + std::to_string(w);
                    detail::keep_max(best, {prod, ExtNat(msize + dn - 1),
                                            BoundFamily::kProduct, std::move(wit)});
                }
            }
        }
    }
    return detail::flatten(std::move(best));
}

// Family 5: breadth-first closure of the independent-set rules over the
// universe s. From a set A fully inside s one may adjoin any root outside s;
// any rotation of A landing inside s is again reachable. Each reachable A
// certifies the pair (A cap s, |A|); the returned list keeps the Pareto
// frontier (smaller subset, larger value).
namespace detail {

struct ShiftStep {
    ZeroMask parent;
    char rule;
    std::uint32_t arg;
};

// Breadth-first closure of the independent-set rules over universe s: extend
// by one position outside s only while the set is inside s, rotate whenever
// the image lands back inside s.
inline std::unordered_map<ZeroMask, ShiftStep> shift_search(const FieldTower& t, ZeroMask s,
                                                            bool* exhaustive,
                                                            std::size_t state_cap) {
    require_mask_width(t);
    std::uint32_t m = t.m();
    std::unordered_map<ZeroMask, ShiftStep> seen;
    std::queue<ZeroMask> fifo;
    bool complete = true;
    seen.emplace(0, ShiftStep{0, '.', 0});
    fifo.push(0);
    while (!fifo.empty()) {
        ZeroMask a = fifo.front();
        fifo.pop();
        auto visit = [&](ZeroMask nxt, char rule, std::uint32_t arg) {
            if (seen.count(nxt)) return;
            if (seen.size() >= state_cap) { complete = false; return; }
            seen.emplace(nxt, ShiftStep{a, rule, arg});
            fifo.push(nxt);
        };
        if ((a & ~s) == 0)
            for (std::uint32_t b = 0; b < m; ++b)
                if (!((s >> b) & 1)) visit(a | (ZeroMask(1) << b), '+', b);
        for (std::uint32_t k = 1; k < m; ++k) {
            ZeroMask rot = rotate_mask(a, k, m);
            if ((rot & ~s) == 0 && rot != a) visit(rot, '*', k);
        }
    }
    if (exhaustive) *exhaustive = complete;
    return seen;
}

} // namespace detail

// All reachable independent sets for universe s, sorted, including the empty set.
inline std::vector<ZeroMask> shift_reachable(const FieldTower& t, ZeroMask s,
                                             bool* exhaustive = nullptr,
                                             std::size_t state_cap = std::size_t(1) << 20) {
    auto seen = detail::shift_search(t, s, exhaustive, state_cap);
    std::vector<ZeroMask> states;
    states.reserve(seen.size());
    for (const auto& [a, step] : seen) states.push_back(a);
    std::sort(states.begin(), states.end());
    return states;
}

inline std::vector<DefSetBound> shift_independent(const FieldTower& t, ZeroMask s,
                                                  bool* exhaustive = nullptr,
                                                  std::size_t state_cap = std::size_t(1) << 20) {
    auto seen = detail::shift_search(t, s, exhaustive, state_cap);

    // Best value per certified subset (states scanned in sorted order so the
    // chosen witness chain is deterministic), then the Pareto frontier.
    std::vector<ZeroMask> states;
    states.reserve(seen.size());
    for (const auto& [a, step] : seen) states.push_back(a);
    std::sort(states.begin(), states.end());
    std::map<ZeroMask, std::pair<std::uint32_t, ZeroMask>> best; // T_A -> (|A|, A)
    for (ZeroMask a : states) {
        std::uint32_t v = std::uint32_t(std::popcount(a));
        ZeroMask ta = a & s;
        auto it = best.find(ta);
        if (it == best.end() || it->second.first < v) best[ta] = {v, a};
    }
    // The frontier pass is quadratic; past desk scale return everything.
    bool prune = best.size() <= 4096;
    std::vector<DefSetBound> out;
    for (const auto& [ta, va] : best) {
        bool dominated = false;
        if (prune)
            for (const auto& [tb, vb] : best) {
                if (tb == ta) continue;
                if ((tb & ~ta) == 0 && vb.first >= va.first) { dominated = true; break; }
            }
        if (dominated) continue;
        std::string trace;
        for (ZeroMask cur = va.second; cur != 0;) {
            const detail::ShiftStep& st = seen.at(cur);
            std::string piece = (st.rule == '+' ? "+" : "*") + std::to_string(st.arg);
            trace = trace.empty() ? piece : piece + " " + trace;
            cur = st.parent;
        }
        out.push_back({ta, ExtNat(va.first), BoundFamily::kChain, std::move(trace)});
    }
    return out;
}

} // namespace qtb
