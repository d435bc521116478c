// qtb: minimum-distance bounds for quasi-twisted codes.
//
// bounds <spec>   exact distance and the three bounds for one code
// sweep           seeded randomized comparison, CSV rows plus a summary
// examples        recompute the bundled sample codes against their records
// ratios          per-rate mean bound/distance ratios of a sweep
//
// Exit codes: 0 success, 1 sample-code regression failure, 2 input error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtbounds/qtbounds.hpp"
#include "qtbounds/spec_file.hpp"

using namespace qtb;

namespace {

struct FamilyChoice {
    std::vector<BoundFamily> plain;  // evaluated through the subset machinery
    bool shift = false;              // the chain-rule variant has its own scan
    bool as_union = false;
};

FamilyChoice parse_families(const std::string& arg) {
    FamilyChoice out;
    std::string token;
    std::istringstream in(arg);
    while (std::getline(in, token, ',')) {
        if (token == "b1") out.plain.push_back(BoundFamily::kExact);
        else if (token == "b2") out.plain.push_back(BoundFamily::kConsecutive);
        else if (token == "b3") out.plain.push_back(BoundFamily::kTwoStride);
        else if (token == "b4") out.plain.push_back(BoundFamily::kProduct);
        else if (token == "b5") out.shift = true;
        else if (token == "bu") out.as_union = true;
        else throw std::invalid_argument("unknown family '" + token +
                                         "' (choose from b1,b2,b3,b4,b5,bu)");
    }
    if (out.as_union) out.plain = union_families();
    return out;
}

std::string describe_report(const BoundReport& r) {
    std::string s = r.value.str();
    s += "  (witness " + mask_str(r.witness) + ", subset value " + r.pair_value.str() +
         ", eigencode " + r.eigen_value.str();
    if (!r.detail.empty()) s += ", " + r.detail;
    if (!r.exhaustive) s += ", scan capped";
    s += ")";
    return s;
}

int run_bounds(const std::string& path, const std::string& families,
               const SpectralOptions& opt) {
    FamilyChoice choice = parse_families(families);
    CodeSpec spec = load_spec(path);
    QtCode code = build_code(spec);

    std::printf("[%zu,%zu]_%u quasi-twisted: m=%u ell=%u lambda=%u r=%zu\n", code.length(),
                code.dimension(), spec.q, spec.m, spec.ell, unsigned(spec.lambda), spec.r());
    if (code.dimension() == 0 || code.dimension() == code.length())
        std::printf("note: trivial code\n");

    ExtNat d = code.exact_min_distance(MinDistStrategy::kAuto, opt.enum_budget);
    std::printf("d       %s\n", d.str().c_str());

    JensenReport jr = jensen_bound(code);
    std::printf("d_J     %s  (prefix %zu, outer %s, inner %s)\n", jr.value.str().c_str(),
                jr.prefix, jr.outer.str().c_str(), jr.inner.str().c_str());
    LallyReport lr = lally_bound(code);
    std::printf("d_L     %s  (component %s, row %s)\n", lr.value.str().c_str(),
                lr.hat.str().c_str(), lr.row.str().c_str());

    SpectralContext ctx(code);
    if (choice.as_union) {
        BoundReport r = spectral_bound(ctx, choice.plain, opt);
        std::printf("d_Spec  %s\n", describe_report(r).c_str());
    } else {
        for (BoundFamily f : choice.plain) {
            BoundReport r = spectral_bound(ctx, f, opt);
            std::printf("d_Spec[%s] %s\n", family_tag(f), describe_report(r).c_str());
        }
    }
    if (choice.shift) {
        BoundReport r = shift_spectral_bound(ctx, opt);
        std::printf("d_Spec[%s] %s\n", family_tag(BoundFamily::kChain),
                    describe_report(r).c_str());
    }
    return 0;
}

SweepConfig make_sweep_config(std::uint32_t q, GfElt lambda, std::vector<std::uint32_t> ms,
                              std::uint32_t max_ell, std::uint32_t count, std::uint64_t seed,
                              unsigned jobs, const SpectralOptions& opt) {
    SweepConfig cfg;
    cfg.tuples = grid_tuples(q, lambda, ms, max_ell);
    cfg.count = count;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.options = opt;
    return cfg;
}

// CSV goes to --out or stdout; the summary goes to stderr so piped CSV stays
// clean.
std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    return f;
}

int run_sweep_cmd(const SweepConfig& cfg, const std::string& out_path) {
    SweepResult res = run_sweep(cfg);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << csv_header() << "\n";
    for (const auto& row : res.rows) *out << csv_line(row) << "\n";
    std::cerr << summary_text(res.summary);
    return 0;
}

int run_ratios(const SweepConfig& cfg, const std::string& out_path) {
    SweepResult res = run_sweep(cfg);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << ratio_csv_header() << "\n";
    for (const auto& bucket : ratio_table(res.rows)) *out << ratio_csv_line(bucket) << "\n";
    std::cerr << summary_text(res.summary);
    return 0;
}

int run_examples(const SpectralOptions& opt) {
    GoldenReport rep = run_reference_checks(opt);
    for (const auto& check : rep.checks) {
        std::printf("%s %s\n", check.failures.empty() ? "pass" : "FAIL", check.name.c_str());
        for (const auto& f : check.failures) std::printf("    %s\n", f.c_str());
    }
    std::printf("%s\n", rep.ok ? "all examples reproduced" : "example regression failed");
    return rep.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-distance bounds for quasi-twisted codes"};
    app.require_subcommand(1);

    SpectralOptions opt;
    std::uint64_t seed = 1;
    std::uint32_t count = 50;
    unsigned jobs = 1;
    std::uint32_t q = 2;
    std::uint32_t lambda = 1;
    std::vector<std::uint32_t> ms = {3, 5, 7};
    std::uint32_t max_ell = 6;
    std::string out_path;
    std::string spec_path;
    std::string families = "bu";

    auto add_scan_flags = [&](CLI::App* cmd) {
        cmd->add_option("--subset-cap", opt.subset_cap,
                        "largest number of eigenvalue subsets scanned per family");
        cmd->add_option("--enum-budget", opt.enum_budget,
                        "codeword-enumeration budget for exact distances");
    };
    auto add_sweep_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "base seed; code i of a tuple uses seed+i");
        cmd->add_option("--count", count, "codes drawn per (m, ell, r) tuple");
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
        cmd->add_option("--q", q, "field size");
        cmd->add_option("--lambda", lambda, "shift constant");
        cmd->add_option("--m", ms, "co-index values (repeatable)");
        cmd->add_option("--max-ell", max_ell, "largest index in the grid");
        cmd->add_option("--out", out_path, "CSV destination (default stdout)");
        add_scan_flags(cmd);
    };

    CLI::App* bounds = app.add_subcommand("bounds", "report one code from a spec file");
    bounds->add_option("spec", spec_path, "JSON code description")->required();
    bounds->add_option("--families", families,
                       "comma-separated: b1,b2,b3,b4,b5,bu (default bu)");
    add_scan_flags(bounds);

    CLI::App* sweep = app.add_subcommand("sweep", "randomized bound comparison, CSV output");
    add_sweep_flags(sweep);

    CLI::App* ratios = app.add_subcommand("ratios", "per-rate mean bound/distance ratios");
    add_sweep_flags(ratios);

    CLI::App* examples = app.add_subcommand("examples", "recompute the bundled sample codes");
    add_scan_flags(examples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(spec_path, families, opt);
        if (sweep->parsed())
            return run_sweep_cmd(
                make_sweep_config(q, lambda, ms, max_ell, count, seed, jobs, opt), out_path);
        if (ratios->parsed())
            return run_ratios(make_sweep_config(q, lambda, ms, max_ell, count, seed, jobs, opt),
                              out_path);
        if (examples->parsed()) return run_examples(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
