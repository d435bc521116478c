#pragma once

// Plain-data description of a quasi-twisted code: the field and shift
// parameters plus r*ell generator polynomials given as coefficient vectors
// (ascending powers). Generator row i owns entries i*ell .. i*ell + ell - 1,
// matching the flat argument order of the usual computer algebra builders.
// Also houses the seeded random construction used by comparison sweeps.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtbounds/gf.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

struct CodeSpec {
    std::uint32_t q = 2;
    std::uint32_t m = 1;
    std::uint32_t ell = 1;
    GfElt lambda = 1;
    // r * ell coefficient vectors; r is implied by the list length.
    std::vector<std::vector<GfElt>> generators;

    std::size_t r() const { return ell == 0 ? 0 : generators.size() / ell; }
};

inline void validate(const CodeSpec& s) {
    if (s.ell == 0) throw std::invalid_argument("CodeSpec: index must be positive");
    if (s.m == 0) throw std::invalid_argument("CodeSpec: co-index must be positive");
    if (s.generators.size() % s.ell != 0)
        throw std::invalid_argument("CodeSpec: generator count is not a multiple of the index");
    for (const auto& g : s.generators) {
        if (g.size() > s.m)
            throw std::invalid_argument("CodeSpec: generator longer than the co-index");
        for (GfElt c : g)
            if (c >= s.q)
                throw std::invalid_argument("CodeSpec: coefficient outside the field");
    }
    if (s.lambda == 0 || s.lambda >= s.q)
        throw std::invalid_argument("CodeSpec: shift constant outside the field");
}

// Tower construction rejects q that is not a prime power and m sharing a
// factor with the characteristic, so build_code carries those checks too.
inline QtCode build_code(const CodeSpec& s) {
    validate(s);
    auto tower = TowerCache::get(s.q, s.m, s.lambda);
    const auto& fq = tower->base_field();
    std::vector<std::vector<Poly>> rows;
    rows.reserve(s.r());
    for (std::size_t i = 0; i < s.r(); ++i) {
        std::vector<Poly> row;
        row.reserve(s.ell);
        for (std::size_t t = 0; t < s.ell; ++t)
            row.emplace_back(fq, s.generators[i * s.ell + t]);
        rows.push_back(std::move(row));
    }
    return QtCode(tower, s.ell, rows);
}

namespace detail {

// splitmix64; mixes the sweep parameters into independent-looking streams so
// per-code draws do not collide across (q, m, ell, r, lambda, seed) tuples.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SpecStream {
    std::uint64_t state;
    std::uint64_t next() { return mix64(state += 0x9e3779b97f4a7c15ULL); }
    // Uniform draw by rejection; q is tiny, so spins are negligible.
    std::uint32_t below(std::uint32_t q) {
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % q;
        std::uint64_t v;
        do v = next(); while (v >= limit);
        return std::uint32_t(v % q);
    }
};

} // namespace detail

// Deterministic in all six arguments; the same tuple always yields the same
// polynomials, independent of platform and of any other draws.
inline CodeSpec random_spec(std::uint32_t q, std::uint32_t m, std::uint32_t ell,
                            std::uint32_t r, GfElt lambda, std::uint64_t seed) {
    detail::SpecStream rng{seed};
    for (std::uint64_t v : {std::uint64_t(q), std::uint64_t(m), std::uint64_t(ell),
                            std::uint64_t(r), std::uint64_t(lambda)})
        rng.state = detail::mix64(rng.state ^ v);
    CodeSpec s;
    s.q = q;
    s.m = m;
    s.ell = ell;
    s.lambda = lambda;
    s.generators.assign(std::size_t(r) * ell, {});
    for (auto& g : s.generators) {
        g.resize(m);
        for (auto& c : g) c = rng.below(q);
    }
    return s;
}

inline QtCode random_qt(std::uint32_t q, std::uint32_t m, std::uint32_t ell,
                        std::uint32_t r, GfElt lambda, std::uint64_t seed) {
    return build_code(random_spec(q, m, ell, r, lambda, seed));
}

} // namespace qtb
