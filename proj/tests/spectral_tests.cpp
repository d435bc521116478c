#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "qtbounds/codespec.hpp"
#include "qtbounds/constabounds.hpp"
#include "qtbounds/extnat.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/reference_codes.hpp"
#include "qtbounds/spectral.hpp"

using namespace qtb;

namespace {

QtCode sample_code(std::size_t i) { return build_code(reference_codes()[i].spec); }

// Index permutation induced by the Frobenius x -> x^q on the roots.
std::vector<std::uint32_t> frobenius_index_map(const FieldTower& t) {
    const Gf& f = *t.splitting_field();
    std::vector<std::uint32_t> phi(t.m());
    for (std::uint32_t k = 0; k < t.m(); ++k) {
        GfElt img = f.pow(t.omega(k), t.q());
        bool found = false;
        for (std::uint32_t k2 = 0; k2 < t.m(); ++k2)
            if (t.omega(k2) == img) {
                phi[k] = k2;
                found = true;
                break;
            }
        REQUIRE(found);
    }
    return phi;
}

ZeroMask apply_map(ZeroMask p, const std::vector<std::uint32_t>& phi) {
    ZeroMask out = 0;
    for (auto k : mask_indices(p)) out |= ZeroMask(1) << phi[k];
    return out;
}

} // namespace

TEST_CASE("spectrum of the bundled sample codes") {
    {
        QtCode c = sample_code(0);
        Spectrum sp = spectrum(c);
        CHECK(sp.eigenvalues == full_mask(7));
        for (std::uint32_t k = 0; k < 7; ++k) {
            CHECK(sp.multiplicity[k] == 1);
            CHECK(sp.eigenbasis[k].rows == 1);
        }
    }
    {
        QtCode c = sample_code(1);
        Spectrum sp = spectrum(c);
        CHECK(sp.eigenvalues == full_mask(10));
        for (std::uint32_t k = 0; k < 10; ++k) CHECK(sp.multiplicity[k] == 1);
    }
    {
        // Diagonal (x+1)(x^8+2): the root -1 lies in both factors, so it is
        // the one eigenvalue of algebraic multiplicity two.
        QtCode c = sample_code(2);
        const FieldTower& t = *c.tower();
        Spectrum sp = spectrum(c);
        CHECK(sp.eigenvalues == full_mask(8));
        GfElt minus_one = t.splitting_field()->neg(1);
        for (std::uint32_t k = 0; k < 8; ++k) {
            std::uint32_t want = t.omega(k) == minus_one ? 2 : 1;
            CHECK(sp.multiplicity[k] == want);
            CHECK(sp.eigenbasis[k].rows == want);
        }
    }
}

TEST_CASE("spectrum consistency on random codes") {
    struct Tc {
        std::uint32_t q, m, ell, r;
        GfElt lambda;
    };
    for (const auto& tc : {Tc{3, 7, 2, 1, 2}, Tc{2, 7, 2, 1, 1}, Tc{3, 8, 3, 2, 1},
                           Tc{3, 4, 2, 2, 2}}) {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            QtCode c = random_qt(tc.q, tc.m, tc.ell, tc.r, tc.lambda, seed);
            Spectrum sp = spectrum(c);
            const FieldTower& t = *c.tower();
            std::uint32_t total = 0;
            for (std::uint32_t k = 0; k < t.m(); ++k) {
                total += sp.multiplicity[k];
                CHECK(sp.eigenbasis[k].rows == sp.multiplicity[k]);
                CHECK(((sp.eigenvalues >> k) & 1) == (sp.multiplicity[k] > 0 ? 1 : 0));
                // Eigenvectors really lie in the kernel at that root.
                Mat g = c.reduced_at(t.omega(k));
                for (std::size_t v = 0; v < sp.eigenbasis[k].rows; ++v)
                    CHECK(weight(mat_vec(g, sp.eigenbasis[k].row(v))) == 0);
            }
            std::uint32_t codim = 0;
            for (std::size_t j = 0; j < c.ell(); ++j)
                codim += std::uint32_t(c.diag(j).degree());
            CHECK(total == codim);
            CHECK(c.dimension() == c.length() - codim);
        }
    }
}

TEST_CASE("repeated diagonal roots double the eigenspace") {
    auto fq = Gf::prime(3);
    auto t = TowerCache::get(3, 4, 2);
    auto facs = tower_class_factors(*t);
    REQUIRE(facs.size() == 2);
    QtCode c(t, 2,
             {{facs[0], Poly::zero(fq)}, {Poly::zero(fq), facs[0] * facs[1]}});
    CHECK(c.dimension() == 2);
    Spectrum sp = spectrum(c);
    CHECK(sp.eigenvalues == full_mask(4));
    for (std::uint32_t k : t->conjugacy_class(0)) CHECK(sp.multiplicity[k] == 2);
    for (std::uint32_t k : t->conjugacy_class(1)) CHECK(sp.multiplicity[k] == 1);
}

TEST_CASE("parity rows pin down the code exactly") {
    struct Tc {
        std::uint32_t q, m, ell, r;
        GfElt lambda;
    };
    for (const auto& tc : {Tc{3, 7, 2, 1, 2}, Tc{2, 7, 3, 2, 1}, Tc{3, 4, 3, 2, 2}}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            QtCode c = random_qt(tc.q, tc.m, tc.ell, tc.r, tc.lambda, seed);
            Spectrum sp = spectrum(c);
            if (sp.eigenvalues == 0) {
                CHECK_THROWS_AS(parity_check(c, sp), std::invalid_argument);
                continue;
            }
            Mat h = parity_check(c, sp);
            CHECK(h.rows == c.length() - c.dimension());
            CHECK(rank(h) == h.rows);
            Mat prod = mat_mul(h, transpose(c.scalar_code().gen()));
            CHECK(weight(prod.a) == 0);
            // The base-field solution space of the parity system is the code.
            CHECK(LinearCode(base_solution_basis(h)) == c.scalar_code());
        }
    }
}

TEST_CASE("common eigenspaces and their base-field codes") {
    struct Tc {
        std::uint32_t q, m, ell, r;
        GfElt lambda;
    };
    for (const auto& tc : {Tc{3, 4, 3, 2, 2}, Tc{2, 7, 2, 1, 1}, Tc{3, 8, 2, 1, 1}}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            QtCode c = random_qt(tc.q, tc.m, tc.ell, tc.r, tc.lambda, seed);
            Spectrum sp = spectrum(c);
            if (sp.eigenvalues == 0) continue;
            const FieldTower& t = *c.tower();
            const Gf& F = *t.splitting_field();

            bool ex = true;
            for (ZeroMask p : detail::subsets_by_size(sp.eigenvalues, 1 << 10, ex)) {
                Mat vp = eigenspace_intersection(c, p);
                CHECK(rank(vp) == vp.rows);
                for (std::size_t i = 0; i < vp.rows; ++i)
                    for (auto k : mask_indices(p))
                        CHECK(weight(mat_vec(c.reduced_at(t.omega(k)), vp.row(i))) == 0);

                // Brute-force the base-field vectors orthogonal to the space.
                LinearCode ec = eigencode(c, sp, p);
                std::size_t hits = 0;
                std::vector<GfElt> x(c.ell(), 0);
                auto rec = [&](auto&& self, std::size_t i) -> void {
                    if (i == c.ell()) {
                        for (std::size_t v = 0; v < vp.rows; ++v) {
                            GfElt acc = 0;
                            for (std::size_t j = 0; j < c.ell(); ++j)
                                acc = F.add(acc, F.mul(vp(v, j), x[j]));
                            if (acc != 0) return;
                        }
                        ++hits;
                        CHECK(ec.contains(x));
                        return;
                    }
                    for (GfElt v = 0; v < tc.q; ++v) {
                        x[i] = v;
                        self(self, i + 1);
                    }
                };
                rec(rec, 0);
                std::size_t expect = 1;
                for (std::size_t i = 0; i < ec.dim(); ++i) expect *= tc.q;
                CHECK(hits == expect);
            }
        }
    }
}

TEST_CASE("eigencode argument validation and monotonicity") {
    QtCode c = sample_code(0);
    Spectrum sp = spectrum(c);
    CHECK_THROWS_AS(eigencode(c, sp, 0), std::invalid_argument);

    // Growing the eigenvalue set can only grow the eigencode.
    std::mt19937 rng(42);
    std::uniform_int_distribution<ZeroMask> dm(1, full_mask(7));
    SpectralContext ctx(c);
    for (int t = 0; t < 40; ++t) {
        ZeroMask p = dm(rng);
        ZeroMask bigger = p | dm(rng);
        CHECK(eigencode(c, sp, p).subcode_of(eigencode(c, sp, bigger)));
        CHECK(ctx.eigen_distance(p) >= ctx.eigen_distance(bigger));
    }
    CHECK(ctx.eigen_distance(0) == ExtNat::inf());
}

TEST_CASE("partial spectra reject out-of-spectrum eigenvalue sets") {
    bool found = false;
    // Needs r >= ell: with fewer generators than columns the relation rows
    // force det to vanish at every root and the spectrum is always full.
    for (std::uint64_t seed = 1; seed <= 40 && !found; ++seed) {
        QtCode c = random_qt(3, 7, 2, 2, 2, seed);
        Spectrum sp = spectrum(c);
        if (sp.eigenvalues == 0 || sp.eigenvalues == full_mask(7)) continue;
        found = true;
        ZeroMask outside = full_mask(7) & ~sp.eigenvalues;
        CHECK_THROWS_AS(eigencode(c, sp, outside), std::invalid_argument);

        // Pairs leaving the spectrum carry no information and are skipped.
        SpectralContext ctx(c);
        ZeroMask inside = sp.eigenvalues & (~sp.eigenvalues + 1);
        auto rep = combine_pairs(ctx, {{full_mask(7), ExtNat(5), BoundFamily::kExact, ""},
                                       {0, ExtNat(9), BoundFamily::kExact, ""},
                                       {inside, ExtNat(2), BoundFamily::kExact, ""}});
        CHECK(rep.witness == inside);
        auto none = combine_pairs(ctx, {{outside, ExtNat(3), BoundFamily::kExact, ""}});
        CHECK(none.detail == "no admissible pairs");

        bool ex = true;
        SpectralOptions opt;
        auto fam = family_pairs(ctx, BoundFamily::kConsecutive, opt, ex);
        for (const auto& b : fam) CHECK(b.subset != full_mask(7));
    }
    CHECK(found);
}

TEST_CASE("eigencodes are invariant under the Frobenius on eigenvalue sets") {
    struct Tc {
        std::uint32_t q, m, ell, r;
        GfElt lambda;
    };
    std::mt19937 rng(43);
    for (const auto& tc : {Tc{3, 8, 2, 1, 1}, Tc{2, 7, 2, 1, 1}, Tc{3, 7, 2, 1, 2}}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            QtCode c = random_qt(tc.q, tc.m, tc.ell, tc.r, tc.lambda, seed);
            Spectrum sp = spectrum(c);
            if (sp.eigenvalues == 0) continue;
            auto phi = frobenius_index_map(*c.tower());
            CHECK(apply_map(sp.eigenvalues, phi) == sp.eigenvalues);
            std::uniform_int_distribution<ZeroMask> dm(1, full_mask(tc.m));
            for (int t = 0; t < 15; ++t) {
                ZeroMask p = dm(rng) & sp.eigenvalues;
                if (p == 0) continue;
                ZeroMask pq = apply_map(p, phi);
                CHECK(eigencode(c, sp, p) == eigencode(c, sp, pq));
            }
        }
    }
}

TEST_CASE("subset enumeration order, cap and tie-break order") {
    bool ex = true;
    auto subs = detail::subsets_by_size(0b1011001, 1 << 10, ex);
    CHECK(ex);
    std::vector<ZeroMask> want{1,  8,  16, 64, 9,  17, 24, 65,
                               72, 80, 25, 73, 81, 88, 89};
    CHECK(subs == want);

    auto capped = detail::subsets_by_size(0b1011001, 7, ex);
    CHECK_FALSE(ex);
    CHECK(capped == std::vector<ZeroMask>(want.begin(), want.begin() + 7));

    CHECK(lex_mask_less(mask_from_indices({0, 4, 5}), mask_from_indices({1, 2, 6})));
    CHECK_FALSE(lex_mask_less(mask_from_indices({1, 2, 6}), mask_from_indices({0, 4, 5})));
    CHECK(lex_mask_less(mask_from_indices({0, 1}), mask_from_indices({0, 1, 2})));
    CHECK_FALSE(lex_mask_less(5, 5));
}

TEST_CASE("point queries on the first sample code") {
    QtCode c = sample_code(0);
    REQUIRE(c.tower()->omega(3) == 2);  // the lone rational root sits at index 3
    SpectralContext ctx(c);

    // A singleton from the big conjugacy class certifies distance 2 and its
    // eigencode is zero.
    auto r0 = subset_report(ctx, mask_from_indices({0}));
    CHECK(r0.pair_value == ExtNat(2));
    CHECK(r0.eigen_value == ExtNat::inf());
    CHECK(r0.bound == ExtNat(2));

    // Adjoining the rational root grows the pair value but collapses the
    // eigencode to the full space.
    auto r1 = subset_report(ctx, mask_from_indices({0, 3}));
    CHECK(r1.pair_value == ExtNat(3));
    CHECK(r1.eigen_value == ExtNat(1));
    CHECK(r1.bound == ExtNat(1));

    // The pair within the shared-eigenvector triple keeps the zero eigencode.
    auto r2 = subset_report(ctx, mask_from_indices({0, 4}));
    CHECK(r2.pair_value == ExtNat(3));
    CHECK(r2.eigen_value == ExtNat::inf());
    CHECK(r2.bound == ExtNat(3));

    auto r3 = subset_report(ctx, mask_from_indices({3}));
    CHECK(r3.pair_value == ExtNat(2));
}

TEST_CASE("per-family bounds on the first sample code") {
    QtCode c = sample_code(0);
    SpectralContext ctx(c);

    auto b1 = spectral_bound(ctx, BoundFamily::kExact);
    CHECK(b1.value == ExtNat(4));
    CHECK(b1.witness == mask_from_indices({0, 4, 5}));
    CHECK(b1.pair_value == ExtNat(4));
    CHECK(b1.eigen_value == ExtNat::inf());
    CHECK(b1.exhaustive);

    for (BoundFamily f : {BoundFamily::kConsecutive, BoundFamily::kTwoStride,
                          BoundFamily::kProduct}) {
        auto b = spectral_bound(ctx, f);
        CHECK(b.value == ExtNat(3));
        CHECK(std::popcount(b.witness) == 2);
        CHECK(b.eigen_value == ExtNat::inf());
        CHECK(b.pair_value == ExtNat(3));
    }

    auto bu = spectral_bound(ctx, {BoundFamily::kExact, BoundFamily::kConsecutive,
                                   BoundFamily::kTwoStride, BoundFamily::kProduct});
    CHECK(bu.value == ExtNat(4));
    CHECK(bu.witness == mask_from_indices({0, 4, 5}));
    CHECK(bu.family == BoundFamily::kExact);

    auto b5 = shift_spectral_bound(ctx);
    CHECK(b5.value == ExtNat(3));
    CHECK(b5.witness == mask_from_indices({0, 4, 5}));
    CHECK(b5.pair_value == ExtNat(3));
    CHECK(b5.eigen_value == ExtNat::inf());
    CHECK(b5.exhaustive);
}

TEST_CASE("subset cap degrades gracefully") {
    QtCode c = sample_code(0);
    SpectralContext ctx(c);
    SpectralOptions tight;
    tight.subset_cap = 3;
    auto b = spectral_bound(ctx, BoundFamily::kExact, tight);
    CHECK_FALSE(b.exhaustive);
    CHECK(b.value <= ExtNat(4));
    CHECK(b.value >= ExtNat(1));
}

TEST_CASE("every bound stays below the exact distance on random codes") {
    struct Tc {
        std::uint32_t q, m, ell, r;
        GfElt lambda;
        std::uint64_t seeds;
    };
    std::vector<Tc> tcs = {{3, 7, 2, 1, 2, 4}, {2, 7, 3, 2, 1, 4},
                           {3, 4, 3, 2, 2, 6}, {2, 5, 2, 1, 1, 6}};
    for (const auto& tc : tcs) {
        auto tower = TowerCache::get(tc.q, tc.m, tc.lambda);
        auto dists = std::make_shared<DistTrueCache>(tower);
        for (std::uint64_t seed = 1; seed <= tc.seeds; ++seed) {
            QtCode c = random_qt(tc.q, tc.m, tc.ell, tc.r, tc.lambda, seed);
            if (spectrum(c).eigenvalues == 0) continue;
            ExtNat d = c.exact_min_distance();
            SpectralContext ctx(c, dists);
            for (BoundFamily f : {BoundFamily::kExact, BoundFamily::kConsecutive,
                                  BoundFamily::kTwoStride, BoundFamily::kProduct}) {
                auto b = spectral_bound(ctx, f);
                CHECK(b.value <= d);
                if (b.value > ExtNat(0)) {
                    CHECK(b.value == std::min(b.pair_value, b.eigen_value));
                    CHECK((b.witness & ~spectrum(c).eigenvalues) == 0);
                }
            }
            CHECK(shift_spectral_bound(ctx).value <= d);
        }
    }
}
