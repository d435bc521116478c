#pragma once

// Randomized comparison harness. For every nontrivial code it records the
// true distance next to the three bound values, tags which bounds are sharp
// (equal to the distance), which are best-performing (no other bound larger,
// ties count for all), and the strict ranking pattern. Sweeps are
// deterministic in the base seed: rows are emitted by (tuple, seed index)
// regardless of worker scheduling.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qtbounds/codespec.hpp"
#include "qtbounds/concat.hpp"
#include "qtbounds/lally.hpp"
#include "qtbounds/reference_codes.hpp"
#include "qtbounds/spectral.hpp"

namespace qtb {

struct ComparisonRow {
    std::uint64_t seed = 0;
    std::uint32_t q = 0, m = 0, ell = 0, r = 0;
    GfElt lambda = 1;
    std::size_t dim = 0;
    ExtNat d{0}, d_l{0}, d_spec{0}, d_j{0};
    bool sharp_l = false, sharp_s = false, sharp_j = false;
    bool best_l = false, best_s = false, best_j = false;
    std::string pattern = "none";
    // False when a subset or state cap cut a spectral scan short.
    bool exhaustive = true;
};

// Strict ranking of the three bound values, largest first; any tie voids the
// pattern. J/S/L name the Jensen, spectral, and product-decomposition bounds.
inline std::string pattern_tag(ExtNat d_j, ExtNat d_spec, ExtNat d_l) {
    struct Entry {
        ExtNat v;
        char c;
    };
    std::array<Entry, 3> e{{{d_j, 'J'}, {d_spec, 'S'}, {d_l, 'L'}}};
    std::stable_sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return b.v < a.v; });
    if (e[0].v == e[1].v || e[1].v == e[2].v) return "none";
    return std::string{e[0].c, e[1].c, e[2].c};
}

inline const std::vector<BoundFamily>& union_families() {
    static const std::vector<BoundFamily> fams = {
        BoundFamily::kExact, BoundFamily::kConsecutive, BoundFamily::kTwoStride,
        BoundFamily::kProduct};
    return fams;
}

// Full evaluation of one code. Trivial codes (zero or the whole space) carry
// no comparison information and are skipped.
inline std::optional<ComparisonRow> evaluate(const CodeSpec& spec, std::uint64_t seed,
                                             std::shared_ptr<DistTrueCache> dists = nullptr,
                                             const SpectralOptions& opt = {}) {
    QtCode code = build_code(spec);
    if (code.dimension() == 0 || code.dimension() == code.length()) return std::nullopt;

    ComparisonRow row;
    row.seed = seed;
    row.q = spec.q;
    row.m = spec.m;
    row.ell = spec.ell;
    row.r = std::uint32_t(spec.r());
    row.lambda = spec.lambda;
    row.dim = code.dimension();

    row.d = code.exact_min_distance(MinDistStrategy::kAuto, opt.enum_budget);
    SpectralContext ctx(code, std::move(dists));
    BoundReport sb = spectral_bound(ctx, union_families(), opt);
    row.d_spec = sb.value;
    row.exhaustive = sb.exhaustive;
    row.d_j = jensen_bound(code).value;
    row.d_l = lally_bound(code).value;

    row.sharp_l = row.d_l == row.d;
    row.sharp_s = row.d_spec == row.d;
    row.sharp_j = row.d_j == row.d;
    row.best_l = row.d_l >= row.d_spec && row.d_l >= row.d_j;
    row.best_s = row.d_spec >= row.d_l && row.d_spec >= row.d_j;
    row.best_j = row.d_j >= row.d_l && row.d_j >= row.d_spec;
    row.pattern = pattern_tag(row.d_j, row.d_spec, row.d_l);
    return row;
}

inline const char* csv_header() {
    return "seed,q,m,ell,r,lambda,dim,d,d_L,d_Spec,d_J,"
           "sharp_L,sharp_S,sharp_J,best_L,best_S,best_J,pattern";
}

inline std::string csv_line(const ComparisonRow& r) {
    std::string s;
    s += std::to_string(r.seed);
    s += ',' + std::to_string(r.q);
    s += ',' + std::to_string(r.m);
    s += ',' + std::to_string(r.ell);
    s += ',' + std::to_string(r.r);
    s += ',' + std::to_string(r.lambda);
    s += ',' + std::to_string(r.dim);
    s += ',' + r.d.str();
    s += ',' + r.d_l.str();
    s += ',' + r.d_spec.str();
    s += ',' + r.d_j.str();
    for (bool b : {r.sharp_l, r.sharp_s, r.sharp_j, r.best_l, r.best_s, r.best_j})
        s += b ? ",1" : ",0";
    s += ',' + r.pattern;
    return s;
}

struct SweepTuple {
    std::uint32_t q = 2, m = 3, ell = 2, r = 1;
    GfElt lambda = 1;
};

struct SweepConfig {
    std::vector<SweepTuple> tuples;
    std::uint32_t count = 50;  // codes drawn per tuple
    std::uint64_t seed = 1;    // code i of a tuple uses seed + i
    unsigned jobs = 1;
    SpectralOptions options;
};

// The canonical grid: for each m, every index in [2, max_ell] and every
// generator count r in [1, ell].
inline std::vector<SweepTuple> grid_tuples(std::uint32_t q, GfElt lambda,
                                           const std::vector<std::uint32_t>& ms,
                                           std::uint32_t max_ell = 6) {
    std::vector<SweepTuple> out;
    for (std::uint32_t m : ms)
        for (std::uint32_t ell = 2; ell <= max_ell; ++ell)
            for (std::uint32_t r = 1; r <= ell; ++r)
                out.push_back({q, m, ell, r, lambda});
    return out;
}

struct SweepSummary {
    std::uint64_t generated = 0, trivial_skipped = 0, evaluated = 0, non_exhaustive = 0;
    std::uint64_t sharp_l = 0, sharp_s = 0, sharp_j = 0;
    std::uint64_t best_l = 0, best_s = 0, best_j = 0;
    std::map<std::string, std::uint64_t> patterns;
};

struct SweepResult {
    std::vector<ComparisonRow> rows;
    SweepSummary summary;
};

inline SweepResult run_sweep(const SweepConfig& cfg) {
    // One defining-set distance cache per tower, shared across workers; the
    // cache itself is synchronized and every cached value is deterministic.
    std::map<std::tuple<std::uint32_t, std::uint32_t, GfElt>,
             std::shared_ptr<DistTrueCache>> caches;
    for (const auto& t : cfg.tuples) {
        auto key = std::make_tuple(t.q, t.m, t.lambda);
        if (!caches.count(key))
            caches[key] = std::make_shared<DistTrueCache>(TowerCache::get(t.q, t.m, t.lambda));
    }

    std::size_t total = cfg.tuples.size() * cfg.count;
    std::vector<std::optional<ComparisonRow>> slots(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const SweepTuple& t = cfg.tuples[i / cfg.count];
            std::uint64_t seed = cfg.seed + i % cfg.count;
            try {
                CodeSpec spec = random_spec(t.q, t.m, t.ell, t.r, t.lambda, seed);
                slots[i] = evaluate(spec, seed,
                                    caches.at(std::make_tuple(t.q, t.m, t.lambda)),
                                    cfg.options);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned jobs = std::max(1u, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    SweepResult res;
    for (const char* p : {"JSL", "JLS", "SJL", "SLJ", "LJS", "LSJ", "none"})
        res.summary.patterns[p] = 0;
    res.summary.generated = total;
    for (auto& slot : slots) {
        if (!slot) {
            ++res.summary.trivial_skipped;
            continue;
        }
        ComparisonRow& r = *slot;
        ++res.summary.evaluated;
        if (!r.exhaustive) ++res.summary.non_exhaustive;
        res.summary.sharp_l += r.sharp_l;
        res.summary.sharp_s += r.sharp_s;
        res.summary.sharp_j += r.sharp_j;
        res.summary.best_l += r.best_l;
        res.summary.best_s += r.best_s;
        res.summary.best_j += r.best_j;
        ++res.summary.patterns[r.pattern];
        res.rows.push_back(std::move(r));
    }
    return res;
}

inline std::string summary_text(const SweepSummary& s) {
    std::string out;
    out += "generated " + std::to_string(s.generated) +
           ", trivial skipped " + std::to_string(s.trivial_skipped) +
           ", evaluated " + std::to_string(s.evaluated) +
           ", capped scans " + std::to_string(s.non_exhaustive) + "\n";
    out += "sharp:  L " + std::to_string(s.sharp_l) + "  S " + std::to_string(s.sharp_s) +
           "  J " + std::to_string(s.sharp_j) + "\n";
    out += "best:   L " + std::to_string(s.best_l) + "  S " + std::to_string(s.best_s) +
           "  J " + std::to_string(s.best_j) + "\n";
    out += "patterns:";
    for (const auto& [tag, n] : s.patterns) out += " " + tag + "=" + std::to_string(n);
    out += "\n";
    return out;
}

// Mean bound-to-distance ratios per code rate, the data behind rate plots.
// Rates are kept as reduced fractions so equal rates from different lengths
// land in one bucket.
struct RatioBucket {
    std::uint32_t num = 0, den = 1;
    std::uint64_t count = 0;
    double mean_j = 0, mean_s = 0, mean_l = 0;
};

inline std::vector<RatioBucket> ratio_table(const std::vector<ComparisonRow>& rows) {
    struct Acc {
        std::uint64_t n = 0;
        double j = 0, s = 0, l = 0;
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, Acc> acc;
    for (const auto& r : rows) {
        if (r.d.is_inf() || r.d_j.is_inf() || r.d_spec.is_inf() || r.d_l.is_inf())
            throw std::logic_error("ratio_table: infinite value on a nontrivial code");
        std::uint32_t n = r.m * r.ell;
        std::uint32_t g = std::gcd(std::uint32_t(r.dim), n);
        Acc& a = acc[{std::uint32_t(r.dim) / g, n / g}];
        ++a.n;
        double d = double(r.d.value());
        a.j += double(r.d_j.value()) / d;
        a.s += double(r.d_spec.value()) / d;
        a.l += double(r.d_l.value()) / d;
    }
    std::vector<RatioBucket> out;
    for (const auto& [key, a] : acc)
        out.push_back({key.first, key.second, a.n, a.j / double(a.n), a.s / double(a.n),
                       a.l / double(a.n)});
    std::sort(out.begin(), out.end(), [](const RatioBucket& a, const RatioBucket& b) {
        std::uint64_t lhs = std::uint64_t(a.num) * b.den, rhs = std::uint64_t(b.num) * a.den;
        if (lhs != rhs) return lhs < rhs;
        return a.den < b.den;
    });
    return out;
}

inline const char* ratio_csv_header() {
    return "rate_num,rate_den,rate,count,mean_dJ_over_d,mean_dSpec_over_d,mean_dL_over_d";
}

inline std::string ratio_csv_line(const RatioBucket& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%u,%u,%.6f,%llu,%.6f,%.6f,%.6f", b.num, b.den,
                  double(b.num) / double(b.den), static_cast<unsigned long long>(b.count),
                  b.mean_j, b.mean_s, b.mean_l);
    return buf;
}

// All subsets attaining the exact-family spectral value; used to audit
// records that pin how many maximizers exist.
inline std::vector<ZeroMask> exact_family_maximizers(SpectralContext& ctx,
                                                     const SpectralOptions& opt = {}) {
    ctx.set_enum_budget(opt.enum_budget);
    bool ex = true;
    ExtNat best{0};
    std::vector<ZeroMask> arg;
    for (ZeroMask p : detail::subsets_by_size(ctx.spec().eigenvalues, opt.subset_cap, ex)) {
        ExtNat v = std::min(ctx.pair_distance(p), ctx.eigen_distance(p));
        if (v > best) {
            best = v;
            arg.clear();
        }
        if (v == best) arg.push_back(p);
    }
    return arg;
}

struct GoldenCheck {
    std::string name;
    std::vector<std::string> failures;
};

struct GoldenReport {
    std::vector<GoldenCheck> checks;
    bool ok = true;
};

// Recompute every reference code and diff against its record.
inline GoldenReport run_reference_checks(const SpectralOptions& opt = {}) {
    GoldenReport report;
    for (const ReferenceCode& rc : reference_codes()) {
        GoldenCheck check;
        check.name = rc.name;
        auto expect = [&check](const std::string& what, const std::string& got,
                               const std::string& want) {
            if (got != want) check.failures.push_back(what + ": got " + got + ", want " + want);
        };

        QtCode code = build_code(rc.spec);
        expect("dim", std::to_string(code.dimension()), std::to_string(rc.dim));
        expect("d", code.exact_min_distance().str(), std::to_string(rc.d));

        JensenReport jr = jensen_bound(code);
        expect("d_J", jr.value.str(), std::to_string(rc.d_j));
        LallyReport lr = lally_bound(code);
        if (rc.d_l) expect("d_L", lr.value.str(), std::to_string(*rc.d_l));

        SpectralContext ctx(code);
        BoundReport bu = spectral_bound(ctx, union_families(), opt);
        expect("d_Spec(union)", bu.value.str(), std::to_string(rc.d_spec_u));

        BoundReport b1 = spectral_bound(ctx, BoundFamily::kExact, opt);
        if (rc.b1) expect("d_Spec(exact)", b1.value.str(), std::to_string(*rc.b1));
        if (rc.b2)
            expect("d_Spec(consecutive)",
                   spectral_bound(ctx, BoundFamily::kConsecutive, opt).value.str(),
                   std::to_string(*rc.b2));
        if (rc.b3)
            expect("d_Spec(two-stride)",
                   spectral_bound(ctx, BoundFamily::kTwoStride, opt).value.str(),
                   std::to_string(*rc.b3));
        if (rc.b4)
            expect("d_Spec(product)",
                   spectral_bound(ctx, BoundFamily::kProduct, opt).value.str(),
                   std::to_string(*rc.b4));

        if (rc.b1_witness_size)
            expect("exact-family witness size",
                   std::to_string(std::popcount(b1.witness)),
                   std::to_string(*rc.b1_witness_size));
        if (rc.b1_witness_eigen_inf)
            expect("exact-family witness eigencode distance", b1.eigen_value.str(), "inf");
        if (rc.b1_witness)
            expect("exact-family witness", mask_str(b1.witness), mask_str(*rc.b1_witness));
        if (rc.b1_maximizer_count)
            expect("exact-family maximizer count",
                   std::to_string(exact_family_maximizers(ctx, opt).size()),
                   std::to_string(*rc.b1_maximizer_count));

        auto row = evaluate(rc.spec, 0, nullptr, opt);
        if (!row) {
            check.failures.push_back("evaluate: reference code reported trivial");
        } else {
            expect("row d", row->d.str(), std::to_string(rc.d));
            expect("row d_Spec", row->d_spec.str(), std::to_string(rc.d_spec_u));
            expect("row d_J", row->d_j.str(), std::to_string(rc.d_j));
            if (rc.d_l) expect("row d_L", row->d_l.str(), std::to_string(*rc.d_l));
            if (!rc.pattern.empty()) expect("pattern", row->pattern, rc.pattern);
        }

        report.ok = report.ok && check.failures.empty();
        report.checks.push_back(std::move(check));
    }
    return report;
}

} // namespace qtb
