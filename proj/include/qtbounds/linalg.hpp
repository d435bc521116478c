#pragma once

// Dense matrices and linear codes over runtime fields, plus the two exact
// minimum-distance engines (codeword enumeration and parity-check support
// rank). The engines cover complementary regimes: enumeration costs q^dim,
// support rank is driven by the true distance and the corank, so high-rate
// codes stay cheap there.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"

namespace qtb {

struct Mat {
    std::shared_ptr<const Gf> field;
    std::size_t rows = 0, cols = 0;
    std::vector<GfElt> a;

    Mat() = default;
    Mat(std::shared_ptr<const Gf> f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

    static Mat from_rows(std::shared_ptr<const Gf> f,
                         const std::vector<std::vector<GfElt>>& rows_in, std::size_t ncols) {
        Mat m(std::move(f), rows_in.size(), ncols);
        for (std::size_t i = 0; i < rows_in.size(); ++i) {
            if (rows_in[i].size() != ncols) throw std::invalid_argument("Mat: ragged rows");
            for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rows_in[i][j];
        }
        return m;
    }
    static Mat identity(std::shared_ptr<const Gf> f, std::size_t n) {
        Mat m(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    GfElt& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    GfElt operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::vector<GfElt> row(std::size_t i) const {
        return std::vector<GfElt>(a.begin() + std::ptrdiff_t(i * cols),
                                  a.begin() + std::ptrdiff_t((i + 1) * cols));
    }
    std::vector<GfElt> col(std::size_t j) const {
        std::vector<GfElt> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline Mat vstack(const Mat& top, const Mat& bot) {
    if (top.cols != bot.cols) throw std::invalid_argument("vstack: width mismatch");
    Mat m(top.field, top.rows + bot.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), m.a.begin());
    std::copy(bot.a.begin(), bot.a.end(), m.a.begin() + std::ptrdiff_t(top.a.size()));
    return m;
}

inline Mat transpose(const Mat& m) {
    Mat t(m.field, m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    const Gf& K = *x.field;
    Mat z(x.field, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            GfElt v = x(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z(i, j) = K.add(z(i, j), K.mul(v, y(k, j)));
        }
    return z;
}

inline std::vector<GfElt> mat_vec(const Mat& m, const std::vector<GfElt>& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    const Gf& K = *m.field;
    std::vector<GfElt> out(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out[i] = K.add(out[i], K.mul(m(i, j), v[j]));
    return out;
}

inline std::size_t weight(const std::vector<GfElt>& v) {
    std::size_t w = 0;
    for (GfElt x : v) w += x != 0;
    return w;
}

// In-place reduced row echelon form; returns the pivot columns in order.
// Rows below the rank come out zero but are not removed.
inline std::vector<std::size_t> rref_inplace(Mat& m) {
    const Gf& K = *m.field;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t sel = r;
        while (sel < m.rows && m(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(r, j));
        GfElt inv = K.inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = K.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            GfElt f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m(i, j) = K.sub(m(i, j), K.mul(f, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Mat m) { return rref_inplace(m).size(); }

// Basis (as rows) of the right kernel {x : m x = 0}.
inline Mat right_kernel(Mat m) {
    const Gf& K = *m.field;
    auto pivots = rref_inplace(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    Mat ker(m.field, m.cols - pivots.size(), m.cols);
    std::size_t r = 0;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        ker(r, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            ker(r, pivots[i]) = K.neg(m(i, f));
        ++r;
    }
    return ker;
}

// Solutions over the base field of a homogeneous system with extension-field
// coefficients. Each scalar equation splits into one base-field equation per
// digit, because base-field unknowns scale extension elements digit-wise.
inline Mat base_solution_basis(const Mat& m) {
    const Gf& F = *m.field;
    auto base = F.base();
    if (!base) return right_kernel(m);
    int e = F.deg_over_base();
    Mat split(base, m.rows * std::size_t(e), m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            for (int t = 0; t < e; ++t)
                split(i * std::size_t(e) + std::size_t(t), j) = F.digit(m(i, j), t);
    return right_kernel(split);
}

// Row space of a generator matrix, held in reduced row echelon form with zero
// rows dropped; the stored form is canonical, so equality of codes is
// equality of the stored matrices.
class LinearCode {
public:
    LinearCode(std::shared_ptr<const Gf> f, std::size_t n)
        : g_(std::move(f), 0, n) {}
    explicit LinearCode(Mat gen) : g_(std::move(gen)) {
        auto pivots = rref_inplace(g_);
        g_.rows = pivots.size();
        g_.a.resize(g_.rows * g_.cols);
        pivots_ = std::move(pivots);
    }

    static LinearCode full(std::shared_ptr<const Gf> f, std::size_t n) {
        return LinearCode(Mat::identity(std::move(f), n));
    }

    const std::shared_ptr<const Gf>& field() const { return g_.field; }
    std::size_t length() const { return g_.cols; }
    std::size_t dim() const { return g_.rows; }
    const Mat& gen() const { return g_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    bool contains(std::vector<GfElt> v) const {
        if (v.size() != g_.cols) throw std::invalid_argument("LinearCode: length mismatch");
        const Gf& K = *g_.field;
        for (std::size_t i = 0; i < g_.rows; ++i) {
            GfElt c = v[pivots_[i]];
            if (c == 0) continue;
            for (std::size_t j = pivots_[i]; j < g_.cols; ++j)
                v[j] = K.sub(v[j], K.mul(c, g_(i, j)));
        }
        for (GfElt x : v)
            if (x != 0) return false;
        return true;
    }

    bool subcode_of(const LinearCode& other) const {
        if (length() != other.length()) return false;
        for (std::size_t i = 0; i < g_.rows; ++i)
            if (!other.contains(g_.row(i))) return false;
        return true;
    }

    friend bool operator==(const LinearCode& a, const LinearCode& b) {
        return a.g_ == b.g_;
    }

    LinearCode dual() const { return LinearCode(right_kernel(g_)); }

    // Visits every codeword once (the zero word included). Cost q^dim, for
    // small-code oracles only.
    template <class Fn>
    void enumerate_words(Fn&& fn) const {
        const Gf& K = *g_.field;
        std::uint32_t q = K.order();
        std::vector<GfElt> msg(g_.rows, 0);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == g_.rows) {
                std::vector<GfElt> w(g_.cols, 0);
                for (std::size_t r = 0; r < g_.rows; ++r) {
                    if (msg[r] == 0) continue;
                    for (std::size_t j = 0; j < g_.cols; ++j)
                        w[j] = K.add(w[j], K.mul(msg[r], g_(r, j)));
                }
                fn(const_cast<const std::vector<GfElt>&>(w));
                return;
            }
            for (GfElt c = 0; c < q; ++c) {
                msg[i] = c;
                self(self, i + 1);
            }
            msg[i] = 0;
        };
        rec(rec, 0);
    }

private:
    Mat g_;
    std::vector<std::size_t> pivots_;
};

enum class MinDistStrategy { kAuto, kEnumerate, kSupportRank };

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t(1) << 24;

namespace detail {

// Minimum weight by walking all nonzero messages. Binary codes up to 64
// columns ride a packed Gray-code loop; otherwise a depth-first scan applies
// and retracts scaled generator rows, keeping the weight incrementally.
inline std::uint64_t enumerate_min_weight(const Mat& g) {
    const Gf& K = *g.field;
    std::size_t k = g.rows, n = g.cols;
    if (K.order() == 2 && n <= 64 && k < 64) {
        std::vector<std::uint64_t> rows(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g(i, j)) rows[i] |= std::uint64_t(1) << j;
        std::uint64_t acc = 0, best = UINT64_MAX;
        std::uint64_t total = std::uint64_t(1) << k;
        for (std::uint64_t t = 1; t < total; ++t) {
            acc ^= rows[std::countr_zero(t)];
            std::uint64_t w = std::uint64_t(std::popcount(acc));
            if (w < best) best = w;
        }
        return best;
    }

    std::uint32_t q = K.order();
    // scaled[i][c-1] lists (col, c*g_i[col]) for the nonzero entries; negs
    // holds the retraction deltas.
    std::vector<std::vector<std::vector<std::pair<std::size_t, GfElt>>>> scaled(k), negs(k);
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i].resize(q - 1);
        negs[i].resize(q - 1);
        for (GfElt c = 1; c < q; ++c) {
            for (std::size_t j = 0; j < n; ++j) {
                GfElt v = K.mul(c, g(i, j));
                if (v == 0) continue;
                scaled[i][c - 1].push_back({j, v});
                negs[i][c - 1].push_back({j, K.neg(v)});
            }
        }
    }
    std::vector<GfElt> acc(n, 0);
    std::size_t wt = 0;
    std::uint64_t best = UINT64_MAX;
    auto apply = [&](const std::vector<std::pair<std::size_t, GfElt>>& d) {
        for (auto [j, v] : d) {
            GfElt old = acc[j];
            GfElt nw = K.add(old, v);
            acc[j] = nw;
            wt += std::size_t(nw != 0) - std::size_t(old != 0);
        }
    };
    auto rec = [&](auto&& self, std::size_t i, bool nonzero) -> void {
        if (i == k) {
            if (nonzero && wt < best) best = wt;
            return;
        }
        self(self, i + 1, nonzero);
        for (GfElt c = 1; c < q; ++c) {
            apply(scaled[i][c - 1]);
            self(self, i + 1, true);
            apply(negs[i][c - 1]);
        }
    };
    rec(rec, 0, false);
    return best;
}

// Minimum number of linearly dependent columns of a full-row-rank parity
// check matrix, by iterative deepening over the dependency size. During the
// search at target size w every proper prefix is independent, because
// smaller targets were already exhausted.
inline std::uint64_t support_rank_distance(const Mat& h) {
    std::size_t n = h.cols, rows = h.rows;
    if (rows == 0) return 1;  // no checks: single columns are already dependent
    const Gf& K = *h.field;
    std::vector<std::vector<GfElt>> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = h.col(j);

    std::vector<std::vector<GfElt>> ech;       // unit-pivot reduced columns
    std::vector<std::size_t> ech_pivot;
    auto reduce = [&](std::vector<GfElt> v) {
        for (std::size_t t = 0; t < ech.size(); ++t) {
            GfElt c = v[ech_pivot[t]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < rows; ++i)
                v[i] = K.sub(v[i], K.mul(c, ech[t][i]));
        }
        return v;
    };

    for (std::size_t w = 1; w <= n; ++w) {
        auto dfs = [&](auto&& self, std::size_t start, std::size_t depth) -> bool {
            for (std::size_t j = start; j + (w - depth) < n; ++j) {
                auto v = reduce(cols[j]);
                std::size_t p = 0;
                while (p < rows && v[p] == 0) ++p;
                if (depth == w) {
                    if (p == rows) return true;
                    continue;
                }
                if (p == rows)
                    throw std::logic_error("dependency below the current target size");
                GfElt inv = K.inv(v[p]);
                for (std::size_t i = p; i < rows; ++i) v[i] = K.mul(v[i], inv);
                ech.push_back(std::move(v));
                ech_pivot.push_back(p);
                bool hit = self(self, j + 1, depth + 1);
                ech.pop_back();
                ech_pivot.pop_back();
                if (hit) return true;
            }
            return false;
        };
        if (dfs(dfs, 0, 1)) return w;
    }
    throw std::logic_error("no dependent column set in a code of positive dimension");
}

}  // namespace detail

// Exact minimum distance. The zero code reports inf. kAuto enumerates when
// q^dim fits the budget and otherwise falls back to support rank, which is
// cheap exactly when enumeration is not (high rate, short parity check).
inline ExtNat min_distance(const LinearCode& c,
                           MinDistStrategy strategy = MinDistStrategy::kAuto,
                           std::uint64_t enum_budget = kDefaultEnumBudget) {
    if (c.dim() == 0) return ExtNat::inf();
    if (strategy == MinDistStrategy::kAuto) {
        std::uint64_t words = 1;
        bool fits = true;
        for (std::size_t i = 0; i < c.dim(); ++i) {
            words *= c.field()->order();
            if (words > enum_budget) { fits = false; break; }
        }
        strategy = fits ? MinDistStrategy::kEnumerate : MinDistStrategy::kSupportRank;
    }
    if (strategy == MinDistStrategy::kEnumerate)
        return ExtNat(detail::enumerate_min_weight(c.gen()));
    return ExtNat(detail::support_rank_distance(c.dual().gen()));
}

} // namespace qtb
