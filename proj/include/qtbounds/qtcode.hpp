#pragma once

// Quasi-twisted codes of index ell over F_q, viewed as F_q[x]-submodules of
// F_q[x]^ell containing K = (x^m - lambda) F_q[x]^ell. A code is presented by
// generator rows of polynomials and normalized to its reduced generating
// matrix: an ell x ell upper triangular basis whose diagonal entries are
// monic divisors of x^m - lambda and whose off-diagonal entries satisfy
// deg g_jt < deg g_tt. Codewords are read as m x ell arrays, flattened
// row-major (array entry (k, t) at position k*ell + t).

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

class QtCode {
public:
    QtCode(std::shared_ptr<const FieldTower> tower, std::size_t ell,
           const std::vector<std::vector<Poly>>& generators)
        : t_(std::move(tower)), ell_(ell) {
        if (ell_ == 0) throw std::invalid_argument("QtCode: index must be positive");
        const auto& fq = t_->base_field();
        Poly xm = Poly::xm_minus_lambda(fq, t_->m(), t_->lambda());

        std::vector<std::vector<Poly>> work;
        for (const auto& row : generators) {
            if (row.size() != ell_) throw std::invalid_argument("QtCode: generator row width");
            std::vector<Poly> red(ell_);
            bool nonzero = false;
            for (std::size_t t = 0; t < ell_; ++t) {
                if (!row[t].field()->is(*fq))
                    throw std::invalid_argument("QtCode: generator over the wrong field");
                red[t] = row[t] % xm;
                nonzero = nonzero || !red[t].is_zero();
            }
            if (nonzero) work.push_back(std::move(red));
        }
        for (std::size_t j = 0; j < ell_; ++j) {
            std::vector<Poly> row(ell_, Poly::zero(fq));
            row[j] = xm;
            work.push_back(std::move(row));
        }
        triangularize(std::move(work), xm);

        dim_ = 0;
        for (std::size_t j = 0; j < ell_; ++j)
            dim_ += t_->m() - std::size_t(g_[j][j].degree());
        build_scalar_code(xm);
    }

    const std::shared_ptr<const FieldTower>& tower() const { return t_; }
    const std::shared_ptr<const Gf>& field() const { return t_->base_field(); }
    std::size_t ell() const { return ell_; }
    std::size_t m() const { return t_->m(); }
    std::size_t length() const { return std::size_t(t_->m()) * ell_; }
    std::size_t dimension() const { return dim_; }

    // Reduced generating matrix; entry (j, t) is zero for j > t.
    const Poly& reduced(std::size_t j, std::size_t t) const { return g_[j][t]; }
    const Poly& diag(std::size_t j) const { return g_[j][j]; }

    // The reduced matrix evaluated at a point of the splitting field.
    Mat reduced_at(GfElt beta) const {
        const auto& f = t_->splitting_field();
        Mat m(f, ell_, ell_);
        for (std::size_t j = 0; j < ell_; ++j)
            for (std::size_t t = j; t < ell_; ++t)
                m(j, t) = eval_embedded(g_[j][t], *f, beta);
        return m;
    }

    // Basis of the code as a plain F_q-linear code of length m*ell: the rows
    // x^s * g_j for 0 <= s < m - deg g_jj, in flat layout.
    const LinearCode& scalar_code() const { return *code_; }

    ExtNat exact_min_distance(MinDistStrategy strategy = MinDistStrategy::kAuto,
                              std::uint64_t enum_budget = kDefaultEnumBudget) const {
        return min_distance(*code_, strategy, enum_budget);
    }

    // One quasi-twisted shift: rows of the m x ell array move down one step
    // and the wrapped row picks up the factor lambda.
    std::vector<GfElt> shifted(const std::vector<GfElt>& w) const {
        if (w.size() != length()) throw std::invalid_argument("QtCode: word length");
        const Gf& K = *field();
        std::vector<GfElt> out(w.size());
        std::size_t mm = m();
        for (std::size_t k = 0; k < mm; ++k)
            for (std::size_t t = 0; t < ell_; ++t) {
                GfElt v = w[k * ell_ + t];
                out[((k + 1) % mm) * ell_ + t] = k + 1 == mm ? K.mul(t_->lambda(), v) : v;
            }
        return out;
    }

    bool is_shift_invariant() const {
        const Mat& g = code_->gen();
        for (std::size_t i = 0; i < g.rows; ++i)
            if (!code_->contains(shifted(g.row(i)))) return false;
        return true;
    }

private:
    void triangularize(std::vector<std::vector<Poly>> work, const Poly& xm) {
        auto first_nz = [&](const std::vector<Poly>& row) {
            std::size_t t = 0;
            while (t < ell_ && row[t].is_zero()) ++t;
            return t;
        };
        g_.assign(ell_, {});
        for (std::size_t c = 0; c < ell_; ++c) {
            while (true) {
                std::size_t ia = work.size(), ib = work.size();
                for (std::size_t i = 0; i < work.size(); ++i) {
                    if (first_nz(work[i]) != c) continue;
                    if (ia == work.size()) ia = i;
                    else { ib = i; break; }
                }
                if (ia == work.size())
                    throw std::logic_error("pivot column lost during triangularization");
                if (ib == work.size()) {
                    g_[c] = std::move(work[ia]);
                    work.erase(work.begin() + std::ptrdiff_t(ia));
                    break;
                }
                if (work[ia][c].degree() < work[ib][c].degree()) std::swap(ia, ib);
                Poly quot = work[ia][c] / work[ib][c];
                for (std::size_t t = c; t < ell_; ++t)
                    work[ia][t] = work[ia][t] - quot * work[ib][t];
                if (first_nz(work[ia]) == ell_)
                    work.erase(work.begin() + std::ptrdiff_t(ia));
            }
        }
        if (!work.empty())
            throw std::logic_error("leftover rows after triangularization");

        for (std::size_t j = 0; j < ell_; ++j) {
            GfElt lead = g_[j][j].lead();
            if (lead != 1)
                for (std::size_t t = j; t < ell_; ++t)
                    g_[j][t] = g_[j][t].scaled(t_->base_field()->inv(lead));
            if (!(xm % g_[j][j]).is_zero())
                throw std::logic_error("diagonal entry does not divide x^m - lambda");
        }
        // Back-reduce off-diagonal entries below the degree of their column's
        // diagonal; columns are finalized left to right.
        for (std::size_t j = 0; j < ell_; ++j)
            for (std::size_t t = j + 1; t < ell_; ++t) {
                Poly quot = g_[j][t] / g_[t][t];
                if (quot.is_zero()) continue;
                for (std::size_t s = t; s < ell_; ++s)
                    g_[j][s] = g_[j][s] - quot * g_[t][s];
            }
        // A full diagonal entry forces its whole row into K, so the row must
        // be exactly (x^m - lambda) e_j.
        for (std::size_t j = 0; j < ell_; ++j) {
            if (g_[j][j].degree() != int(t_->m())) continue;
            for (std::size_t t = j + 1; t < ell_; ++t)
                if (!g_[j][t].is_zero())
                    throw std::logic_error("full diagonal row is not a pure relation row");
        }
    }

    void build_scalar_code(const Poly& xm) {
        const auto& fq = t_->base_field();
        std::size_t mm = t_->m();
        Mat gen(fq, dim_, mm * ell_);
        std::size_t r = 0;
        for (std::size_t j = 0; j < ell_; ++j) {
            for (std::size_t s = 0; s + std::size_t(g_[j][j].degree()) < mm; ++s, ++r) {
                for (std::size_t t = j; t < ell_; ++t) {
                    Poly p = (Poly::monomial(fq, 1, s) * g_[j][t]) % xm;
                    for (int k = 0; k <= p.degree(); ++k)
                        gen(r, std::size_t(k) * ell_ + t) = p.coeff(std::size_t(k));
                }
            }
        }
        if (r != dim_) throw std::logic_error("scalar basis row count mismatch");
        code_ = std::make_shared<const LinearCode>(std::move(gen));
        if (code_->dim() != dim_)
            throw std::logic_error("scalar basis rows are linearly dependent");
    }

    std::shared_ptr<const FieldTower> t_;
    std::size_t ell_;
    std::size_t dim_ = 0;
    std::vector<std::vector<Poly>> g_;
    std::shared_ptr<const LinearCode> code_;
};

} // namespace qtb
