#pragma once

// Splitting structure of x^m - lambda over F_q.
//
// With r the multiplicative order of lambda, the roots are
// omega_k = alpha * xi^k where alpha is a primitive rm-th root of unity
// satisfying alpha^m = lambda and xi = alpha^r is a primitive m-th root of
// unity. They live in F = F_{q^e}, the smallest extension with rm | q^e - 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qtbounds/gf.hpp"

namespace qtb {

class FieldTower {
public:
    FieldTower(std::uint32_t q, std::uint32_t m, GfElt lambda)
        : m_(m), lambda_(lambda) {
        if (m == 0) throw std::invalid_argument("co-index must be positive");
        auto [p, a] = factor_prime_power(q);
        if (m % p == 0)
            throw std::invalid_argument("co-index must be coprime to the characteristic");
        base_ = a == 1 ? Gf::prime(p) : Gf::extension_of_degree(Gf::prime(p), int(a));
        if (lambda == 0 || lambda >= q)
            throw std::invalid_argument("shift constant must be a nonzero field element");
        r_ = base_->elt_order(lambda);
        std::uint64_t rm = std::uint64_t(r_) * m;
        e_ = 1;
        for (std::uint64_t qe = q; (qe - 1) % rm != 0; qe *= q) {
            ++e_;
            if (qe > Gf::kMaxOrder / q)
                throw std::invalid_argument("splitting field above supported size");
        }
        ext_ = Gf::extension_of_degree(base_, int(e_));
        std::uint64_t step = (ext_->order() - 1) / rm;
        // alpha = g^(step*j) for the first j coprime to rm with alpha^m =
        // lambda. Coprimality makes alpha a primitive rm-th root; the m-th
        // power condition picks the coset that actually splits x^m - lambda.
        for (std::uint64_t j = 1;; ++j) {
            if (j > rm) throw std::logic_error("no admissible root of x^m - lambda");
            if (std::gcd(j, rm) != 1) continue;
            GfElt cand = ext_->exp(step * j);
            if (ext_->pow(cand, std::int64_t(m)) == lambda) {
                alpha_ = cand;
                break;
            }
        }
        xi_ = ext_->pow(alpha_, std::int64_t(r_));
        omega_.resize(m);
        for (std::uint32_t k = 0; k < m; ++k)
            omega_[k] = ext_->mul(alpha_, ext_->pow(xi_, std::int64_t(k)));
        build_classes(q);
    }

    const std::shared_ptr<const Gf>& base_field() const { return base_; }
    const std::shared_ptr<const Gf>& splitting_field() const { return ext_; }
    std::uint32_t q() const { return base_->order(); }
    std::uint32_t m() const { return m_; }
    GfElt lambda() const { return lambda_; }
    std::uint32_t shift_order() const { return r_; }
    std::uint32_t splitting_degree() const { return e_; }
    GfElt alpha() const { return alpha_; }
    GfElt xi() const { return xi_; }

    GfElt omega(std::uint32_t k) const { return omega_[k % m_]; }
    const std::vector<GfElt>& roots() const { return omega_; }

    // q-conjugacy classes of root indices, ordered by smallest member, each
    // class listed with its smallest member (the representative u_i) first.
    std::size_t class_count() const { return classes_.size(); }
    const std::vector<std::uint32_t>& conjugacy_class(std::size_t i) const { return classes_[i]; }
    std::size_t class_of(std::uint32_t k) const { return class_index_[k % m_]; }
    std::uint32_t class_rep(std::size_t i) const { return classes_[i][0]; }
    // [E_i : F_q] where E_i = F_q(omega_{u_i}).
    std::uint32_t subfield_degree(std::size_t i) const { return std::uint32_t(classes_[i].size()); }

    // Frobenius x -> x^q of the splitting field over F_q, iterated j times.
    GfElt frobenius(GfElt x, int j = 1) const { return ext_->frobenius(x, j); }
    bool in_subfield(std::uint32_t deg_over_q, GfElt x) const {
        return ext_->in_subfield(int(deg_over_q), x);
    }
    GfElt trace_to_subfield(std::uint32_t deg_over_q, GfElt x) const {
        return ext_->trace_to_subfield(int(deg_over_q), x);
    }
    std::vector<GfElt> subfield_elements(std::uint32_t deg_over_q) const {
        return ext_->subfield_elements(int(deg_over_q));
    }

private:
    static std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
        if (q < 2) throw std::invalid_argument("field order must be a prime power");
        std::uint32_t p = 2;
        while (std::uint64_t(p) * p <= q && q % p != 0) ++p;
        if (q % p != 0) p = q;
        std::uint32_t a = 0, rest = q;
        while (rest % p == 0) rest /= p, ++a;
        if (rest != 1) throw std::invalid_argument("field order must be a prime power");
        return {p, a};
    }

    void build_classes(std::uint32_t q) {
        // omega_k^q = omega_{k'} with k' = (q-1)/r + q*k mod m; the classes
        // are the orbits of this map. Scanning k upward discovers classes in
        // order of smallest member, with that member first in its class.
        std::uint32_t shift = ((q - 1) / r_) % m_;
        class_index_.assign(m_, SIZE_MAX);
        for (std::uint32_t k = 0; k < m_; ++k) {
            if (class_index_[k] != SIZE_MAX) continue;
            std::vector<std::uint32_t> orbit;
            std::uint64_t t = k;
            while (class_index_[t] == SIZE_MAX) {
                class_index_[t] = classes_.size();
                orbit.push_back(std::uint32_t(t));
                t = (shift + std::uint64_t(q) * t) % m_;
            }
            if (t != k) throw std::logic_error("conjugation orbit left its start");
            classes_.push_back(std::move(orbit));
        }
    }

    std::uint32_t m_;
    GfElt lambda_;
    std::uint32_t r_ = 0, e_ = 0;
    std::shared_ptr<const Gf> base_, ext_;
    GfElt alpha_ = 0, xi_ = 0;
    std::vector<GfElt> omega_;
    std::vector<std::vector<std::uint32_t>> classes_;
    std::vector<std::size_t> class_index_;
};

// Tower construction fills log tables, so sweeps over many random codes with
// the same (q, m, lambda) share one instance through this cache.
class TowerCache {
public:
    static std::shared_ptr<const FieldTower> get(std::uint32_t q, std::uint32_t m, GfElt lambda) {
        static TowerCache inst;
        std::lock_guard<std::mutex> lock(inst.mu_);
        auto key = std::make_tuple(q, m, lambda);
        auto it = inst.map_.find(key);
        if (it != inst.map_.end()) return it->second;
        auto tower = std::make_shared<const FieldTower>(q, m, lambda);
        inst.map_.emplace(key, tower);
        return tower;
    }

private:
    TowerCache() = default;
    std::mutex mu_;
    std::map<std::tuple<std::uint32_t, std::uint32_t, GfElt>,
             std::shared_ptr<const FieldTower>> map_;
};

} // namespace qtb
