#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtbounds/compare.hpp"
#include "qtbounds/extnat.hpp"
#include "qtbounds/reference_codes.hpp"
#include "qtbounds/spec_file.hpp"

using namespace qtb;

TEST_CASE("code descriptions are validated") {
    CodeSpec s;
    s.q = 3;
    s.m = 7;
    s.ell = 2;
    s.lambda = 2;
    s.generators = {{1, 0, 2}, {0, 1}};
    CHECK_NOTHROW(validate(s));

    CodeSpec bad = s;
    bad.ell = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.m = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.generators.pop_back();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.generators[0].resize(8, 0);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.generators[1] = {0, 3};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.lambda = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.lambda = 3;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    // Field and co-index constraints surface when the tower is built.
    bad = s;
    bad.m = 6;
    CHECK_THROWS_AS(build_code(bad), std::invalid_argument);
    bad = s;
    bad.q = 6;
    bad.lambda = 1;
    CHECK_THROWS_AS(build_code(bad), std::invalid_argument);
}

TEST_CASE("seeded code drawing is deterministic and uniform") {
    CodeSpec a = random_spec(3, 11, 2, 2, 2, 42);
    CodeSpec b = random_spec(3, 11, 2, 2, 2, 42);
    CHECK(a.generators == b.generators);
    CHECK(a.r() == 2);
    for (const auto& g : a.generators) CHECK(g.size() == 11);

    CodeSpec c = random_spec(3, 11, 2, 2, 2, 43);
    CHECK(a.generators != c.generators);
    // The tuple is mixed into the stream, so sibling tuples draw differently.
    CodeSpec d = random_spec(3, 11, 2, 1, 2, 42);
    CHECK(a.generators[0] != d.generators[0]);

    std::array<std::uint64_t, 3> freq{};
    std::uint64_t total = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed)
        for (const auto& g : random_spec(3, 50, 2, 2, 1, seed).generators)
            for (GfElt x : g) {
                REQUIRE(x < 3);
                ++freq[x];
                ++total;
            }
    CHECK(total == 30 * 4 * 50);
    for (std::uint64_t f : freq) {
        CHECK(f > total / 3 - 200);
        CHECK(f < total / 3 + 200);
    }
}

TEST_CASE("json code descriptions") {
    auto parse = [](const char* text) { return spec_from_json(nlohmann::json::parse(text)); };

    CodeSpec s = parse(R"({"q":3,"m":7,"ell":2,"lambda":2,
                           "generators":[[2,0,1,1,0,2],[0,0,1,1,0,1]]})");
    CHECK(s.q == 3);
    CHECK(s.lambda == 2);
    CHECK(build_code(s).dimension() == 7);

    // Prime-power fields take elements as base-p digit vectors.
    CodeSpec s4 = parse(R"({"q":4,"m":5,"ell":1,"lambda":[0,1],
                            "generators":[[[1,1],1]]})");
    auto f4 = Gf::extension_of_degree(Gf::prime(2), 2);
    CHECK(s4.lambda == f4->from_digits({0, 1}));
    CHECK(s4.generators[0][0] == f4->from_digits({1, 1}));
    CHECK(s4.generators[0][1] == 1);
    // 1+w is the unique fifth root of w here, so a mis-decoded digit vector
    // would make the generator a unit and flip the dimension to 5.
    CHECK(build_code(s4).dimension() == 4);

    CHECK_THROWS_AS(parse(R"([1,2,3])"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"m":7,"ell":2,"lambda":2,"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"generators":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":2})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":6,"m":7,"ell":2,"lambda":1,"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":0,"ell":2,"lambda":2,"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":2,"generators":[[3]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":2,"generators":[["x"]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":-1,"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":4,"m":3,"ell":1,"lambda":[0,2],"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":4,"m":3,"ell":1,"lambda":[1,0,0],"generators":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":2,"generators":[7]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"q":3,"m":7,"ell":2,"lambda":2,
                              "generators":[[1,0,0,0,0,0,0,1]]})"),
                    std::invalid_argument);
}

TEST_CASE("spec files round trip through disk") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qtb_spec_test";
    fs::create_directories(dir);

    fs::path good = dir / "good.json";
    std::ofstream(good) << R"({"q":3,"m":7,"ell":2,"lambda":2,
                               "generators":[[2,0,1,1,0,2],[0,0,1,1,0,1]]})";
    QtCode c = load_code(good.string());
    CHECK(c.dimension() == 7);
    CHECK(c.exact_min_distance() == ExtNat(4));

    fs::path broken = dir / "broken.json";
    std::ofstream(broken) << R"({"q":3,)";
    CHECK_THROWS_AS(load_spec(broken.string()), std::invalid_argument);
    CHECK_THROWS_AS(load_spec((dir / "missing.json").string()), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("strict ranking tags") {
    auto n = [](std::uint64_t v) { return ExtNat(v); };
    CHECK(pattern_tag(n(6), n(4), n(3)) == "JSL");
    CHECK(pattern_tag(n(2), n(5), n(1)) == "SJL");
    CHECK(pattern_tag(n(3), n(5), n(4)) == "SLJ");
    CHECK(pattern_tag(n(5), n(3), n(4)) == "JLS");
    CHECK(pattern_tag(n(2), n(3), n(8)) == "LSJ");
    CHECK(pattern_tag(n(3), n(2), n(8)) == "LJS");
    CHECK(pattern_tag(n(4), n(4), n(3)) == "none");
    CHECK(pattern_tag(n(5), n(4), n(4)) == "none");
    CHECK(pattern_tag(n(4), n(4), n(4)) == "none");
    CHECK(pattern_tag(ExtNat::inf(), n(3), n(2)) == "JSL");
    CHECK(pattern_tag(ExtNat::inf(), ExtNat::inf(), n(1)) == "none");
}

TEST_CASE("csv serialization") {
    CHECK(std::string(csv_header()) ==
          "seed,q,m,ell,r,lambda,dim,d,d_L,d_Spec,d_J,"
          "sharp_L,sharp_S,sharp_J,best_L,best_S,best_J,pattern");
    ComparisonRow r;
    r.seed = 7;
    r.q = 3;
    r.m = 7;
    r.ell = 2;
    r.r = 1;
    r.lambda = 2;
    r.dim = 7;
    r.d = ExtNat(4);
    r.d_l = ExtNat(1);
    r.d_spec = ExtNat(4);
    r.d_j = ExtNat(2);
    r.sharp_s = true;
    r.best_s = true;
    r.pattern = "SJL";
    CHECK(csv_line(r) == "7,3,7,2,1,2,7,4,1,4,2,0,1,0,0,1,0,SJL");

    CHECK(std::string(ratio_csv_header()) ==
          "rate_num,rate_den,rate,count,mean_dJ_over_d,mean_dSpec_over_d,mean_dL_over_d");
    CHECK(ratio_csv_line({1, 2, 3, 0.5, 0.25, 0.125}) ==
          "1,2,0.500000,3,0.500000,0.250000,0.125000");
}

TEST_CASE("single code evaluation") {
    // Trivial codes yield no row.
    CodeSpec zero;
    zero.q = 3;
    zero.m = 7;
    zero.ell = 2;
    zero.lambda = 2;
    CHECK(!evaluate(zero, 0));
    CodeSpec full = zero;
    full.ell = 1;
    full.generators = {{1}};
    CHECK(!evaluate(full, 0));

    const auto& rc = reference_codes()[0];
    auto row = evaluate(rc.spec, 11);
    REQUIRE(row.has_value());
    CHECK(row->seed == 11);
    CHECK(row->r == 1);
    CHECK(row->dim == rc.dim);
    CHECK(row->d == ExtNat(rc.d));
    CHECK(row->d_j == ExtNat(rc.d_j));
    CHECK(row->d_spec == ExtNat(rc.d_spec_u));
    CHECK(row->exhaustive);
    CHECK(row->sharp_s);
    CHECK(!row->sharp_j);
    CHECK(row->best_s);
    CHECK(!row->best_j);

    // Bound values never exceed the recomputed distance.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto rr = evaluate(random_spec(2, 7, 2, 1, 1, seed), seed);
        if (!rr) continue;
        CHECK(rr->d_j <= rr->d);
        CHECK(rr->d_spec <= rr->d);
        CHECK(rr->d_l <= rr->d);
        bool some_best = rr->best_j || rr->best_s || rr->best_l;
        CHECK(some_best);
    }
}

TEST_CASE("golden regression against the bundled records") {
    GoldenReport report = run_reference_checks();
    for (const auto& check : report.checks)
        for (const auto& f : check.failures) FAIL_CHECK(check.name << ": " << f);
    CHECK(report.ok);
}

TEST_CASE("exact-family maximizer audit") {
    QtCode c = build_code(reference_codes()[0].spec);
    SpectralContext ctx(c);
    auto arg = exact_family_maximizers(ctx);
    REQUIRE(arg.size() == 2);
    CHECK(arg[0] == mask_from_indices({0, 4, 5}));
    CHECK(arg[1] == mask_from_indices({1, 2, 6}));
}

TEST_CASE("grid expansion") {
    auto tuples = grid_tuples(2, 1, {3, 5}, 3);
    REQUIRE(tuples.size() == 10);
    CHECK(tuples[0].m == 3);
    CHECK(tuples[0].ell == 2);
    CHECK(tuples[0].r == 1);
    CHECK(tuples[1].ell == 2);
    CHECK(tuples[1].r == 2);
    CHECK(tuples[4].ell == 3);
    CHECK(tuples[4].r == 3);
    CHECK(tuples[5].m == 5);
    for (const auto& t : tuples) {
        CHECK(t.q == 2);
        CHECK(t.lambda == 1);
        CHECK(t.r <= t.ell);
    }
}

TEST_CASE("sweeps are deterministic across worker counts") {
    SweepConfig cfg;
    cfg.tuples = grid_tuples(2, 1, {3, 5}, 3);
    cfg.count = 6;
    cfg.seed = 9;
    cfg.jobs = 1;
    SweepResult one = run_sweep(cfg);
    cfg.jobs = 4;
    SweepResult four = run_sweep(cfg);

    REQUIRE(one.rows.size() == four.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i)
        CHECK(csv_line(one.rows[i]) == csv_line(four.rows[i]));

    const SweepSummary& s = one.summary;
    CHECK(s.generated == cfg.tuples.size() * cfg.count);
    CHECK(s.generated == s.trivial_skipped + s.evaluated);
    CHECK(s.evaluated == one.rows.size());
    std::uint64_t pattern_total = 0;
    for (const auto& [tag, n] : s.patterns) pattern_total += n;
    CHECK(pattern_total == s.evaluated);
    CHECK(s.best_j + s.best_s + s.best_l >= s.evaluated);  // ties count for all
    CHECK(s.sharp_j <= s.evaluated);
    CHECK(summary_text(s).find("evaluated " + std::to_string(s.evaluated)) !=
          std::string::npos);

    // Same config, different base seed: the drawn codes differ.
    cfg.jobs = 1;
    cfg.seed = 10;
    SweepResult other = run_sweep(cfg);
    bool any_diff = other.rows.size() != one.rows.size();
    for (std::size_t i = 0; !any_diff && i < one.rows.size(); ++i)
        any_diff = csv_line(one.rows[i]) != csv_line(other.rows[i]);
    CHECK(any_diff);
}

TEST_CASE("rate bucket aggregation") {
    ComparisonRow a;
    a.q = 3;
    a.m = 7;
    a.ell = 2;
    a.dim = 7;
    a.d = ExtNat(4);
    a.d_j = ExtNat(2);
    a.d_spec = ExtNat(4);
    a.d_l = ExtNat(1);
    ComparisonRow b = a;  // same reduced rate through different length
    b.m = 5;
    b.dim = 5;
    b.d = ExtNat(2);
    b.d_j = ExtNat(1);
    b.d_spec = ExtNat(2);
    b.d_l = ExtNat(2);
    ComparisonRow c = a;
    c.dim = 3;  // rate 3/14
    c.d = ExtNat(8);
    c.d_j = ExtNat(4);
    c.d_spec = ExtNat(6);
    c.d_l = ExtNat(2);

    auto table = ratio_table({a, b, c});
    REQUIRE(table.size() == 2);
    CHECK(table[0].num == 3);
    CHECK(table[0].den == 14);
    CHECK(table[0].count == 1);
    CHECK(table[1].num == 1);
    CHECK(table[1].den == 2);
    CHECK(table[1].count == 2);
    CHECK(table[1].mean_j == doctest::Approx(0.5));
    CHECK(table[1].mean_s == doctest::Approx(1.0));
    CHECK(table[1].mean_l == doctest::Approx((0.25 + 1.0) / 2));

    ComparisonRow inf_row = a;
    inf_row.d_l = ExtNat::inf();
    CHECK_THROWS_AS(ratio_table({inf_row}), std::logic_error);

    // Ratios from real sweeps stay within (0, 1].
    SweepConfig cfg;
    cfg.tuples = grid_tuples(3, 2, {4, 7}, 2);
    cfg.count = 8;
    cfg.seed = 3;
    auto res = run_sweep(cfg);
    REQUIRE(!res.rows.empty());
    for (const auto& bucket : ratio_table(res.rows)) {
        CHECK(bucket.count >= 1);
        for (double v : {bucket.mean_j, bucket.mean_s, bucket.mean_l}) {
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
        }
    }
}
