#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/spectral.hpp"
#include "qtbounds/tower.hpp"

namespace qtb {

// Column-wise packing of a quasi-twisted code: each generator row becomes one
// polynomial over F_{q^ell} via the basis {1, gamma, ..., gamma^(ell-1)}, and
// hat_gen generates the smallest constacyclic code containing every packed
// codeword. row_code is the q-ary span of the array rows of all codewords; it
// does not depend on the basis. hat_gen does, so the default gamma below is
// pinned.
struct LallyDecomposition {
    std::shared_ptr<const Gf> ext;
    GfElt gamma;
    Poly hat_gen;
    LinearCode row_code;
};

namespace detail {

// Default packing element: the generator of ext* whose minimal polynomial
// over the subfield is smallest when the coefficient of w^i is weighted by
// (-1)^(deg-i) and the words are compared from the top coefficient down.
// Restricted to group generators this is the classical modulus convention of
// the computer algebra systems that published distance tables for the small
// fields, so pinned reference values stay reproducible.
inline GfElt packing_gamma(const std::shared_ptr<const Gf>& ext,
                           const std::shared_ptr<const Gf>& base) {
    static std::mutex mu;
    static std::map<std::pair<const Gf*, const Gf*>, GfElt> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({ext.get(), base.get()});
        if (it != cache.end()) return it->second;
    }
    const std::uint32_t n = ext->order() - 1;
    std::vector<std::uint32_t> primes;
    for (std::uint32_t v = n, d = 2; v > 1; ++d) {
        if (std::uint64_t(d) * d > v) { primes.push_back(v); break; }
        if (v % d) continue;
        primes.push_back(d);
        while (v % d == 0) v /= d;
    }
    std::size_t deg = 0;
    for (std::uint64_t o = 1; o < ext->order(); o *= base->order()) ++deg;

    GfElt best = 0;
    std::vector<GfElt> best_word;
    for (GfElt g = 2; g < ext->order(); ++g) {
        bool primitive = true;
        for (std::uint32_t p : primes)
            if (ext->pow(g, n / p) == 1) { primitive = false; break; }
        if (!primitive) continue;
        Poly mp = Poly::one(ext);
        GfElt conj = g;
        for (std::size_t i = 0; i < deg; ++i) {
            mp = mp * Poly(ext, {ext->neg(conj), 1});
            conj = ext->pow(conj, base->order());
        }
        std::vector<GfElt> word(deg);
        for (std::size_t i = 0; i < deg; ++i) {
            GfElt a = mp.coeff(deg - 1 - i);
            word[i] = (i % 2 == 0) ? ext->neg(a) : a;
        }
        if (best == 0 || word < best_word) {
            best = g;
            best_word = std::move(word);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::pair<const Gf*, const Gf*>{ext.get(), base.get()}, best)
        .first->second;
}

} // namespace detail

// gamma = 0 picks the canonical basis described at packing_gamma. Any other
// gamma must generate a basis, which is checked.
inline LallyDecomposition lally_decompose(const QtCode& c, GfElt gamma = 0) {
    const FieldTower& t = *c.tower();
    auto base = t.base_field();
    auto ext = Gf::extension_of_degree(base, int(c.ell()));
    if (gamma == 0)
        gamma = c.ell() > 1 ? detail::packing_gamma(ext, base) : 1;
    std::vector<GfElt> pw(c.ell());
    pw[0] = 1;
    for (std::size_t j = 1; j < c.ell(); ++j) pw[j] = ext->mul(pw[j - 1], gamma);
    {
        Mat basis(base, c.ell(), c.ell());
        for (std::size_t j = 0; j < c.ell(); ++j)
            for (std::size_t i = 0; i < c.ell(); ++i) basis(j, i) = ext->digit(pw[j], int(i));
        if (rank(basis) != c.ell())
            throw std::invalid_argument("lally_decompose: powers of gamma do not form a basis");
    }

    Poly hat = Poly::xm_minus_lambda(ext, t.m(), t.lambda());
    std::vector<std::vector<GfElt>> coeff_rows;
    for (std::size_t j = 0; j < c.ell(); ++j) {
        if (std::size_t(c.diag(j).degree()) == t.m()) continue; // pure relation row, zero in R^ell
        std::vector<GfElt> packed(t.m(), 0);
        for (std::uint32_t i = 0; i < t.m(); ++i) {
            std::vector<GfElt> row(c.ell(), 0);
            for (std::size_t tt = 0; tt < c.ell(); ++tt) row[tt] = c.reduced(j, tt).coeff(i);
            coeff_rows.push_back(row);
            GfElt acc = 0;
            for (std::size_t tt = 0; tt < c.ell(); ++tt)
                acc = ext->add(acc, ext->mul(row[tt], pw[tt]));
            packed[i] = acc;
        }
        hat = poly_gcd(hat, Poly(ext, packed));
    }
    LinearCode rows(Mat::from_rows(base, coeff_rows, c.ell()));
    return {std::move(ext), gamma, std::move(hat), std::move(rows)};
}

struct LallyReport {
    ExtNat value{0};
    ExtNat hat{0};
    ExtNat row{0};
};

// d(C) >= d(hat C) * d(B): every nonzero codeword has at least d(hat C)
// nonzero array rows, each of weight at least d(B).
inline LallyReport lally_bound(const QtCode& c, GfElt gamma = 0) {
    const FieldTower& t = *c.tower();
    LallyDecomposition dec = lally_decompose(c, gamma);
    std::size_t dim = t.m() - std::size_t(dec.hat_gen.degree());
    Mat gen(dec.ext, dim, t.m());
    for (std::size_t k = 0; k < dim; ++k)
        for (int j = 0; j <= dec.hat_gen.degree(); ++j)
            gen(k, k + std::size_t(j)) = dec.hat_gen.coeff(std::size_t(j));
    ExtNat hat = min_distance(LinearCode(std::move(gen)), MinDistStrategy::kSupportRank);
    ExtNat row = min_distance(dec.row_code);
    return {hat * row, hat, row};
}

// Corollary check: with a full spectrum the row code sits inside the full
// eigencode, so the product bound can never undercut the eigencode distance.
inline bool lally_vs_eigencode_check(const QtCode& c) {
    const FieldTower& t = *c.tower();
    Spectrum sp = spectrum(c);
    if (sp.eigenvalues != full_mask(t.m()))
        throw std::invalid_argument("lally_vs_eigencode_check: spectrum must cover all roots");
    ExtNat eig = min_distance(eigencode(c, sp, sp.eigenvalues));
    return !(lally_bound(c).value < eig);
}

} // namespace qtb
