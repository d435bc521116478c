#pragma once

// On-disk code description: a JSON object with integer fields q, m, ell,
// lambda and a "generators" array of coefficient vectors (constant term
// first). Field elements are least nonnegative residues for prime q; for
// prime-power q an element may instead be written as an array of base-p
// digits, least significant first.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qtbounds/codespec.hpp"

namespace qtb {

namespace detail {

inline GfElt element_from_json(const nlohmann::json& j, const Gf& f, const char* where) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0 || std::uint64_t(v) >= f.order())
            throw std::invalid_argument(std::string(where) + ": element out of range");
        return GfElt(v);
    }
    if (j.is_array()) {
        std::vector<GfElt> digits;
        for (const auto& d : j) {
            if (!d.is_number_integer() && !d.is_number_unsigned())
                throw std::invalid_argument(std::string(where) + ": digit is not an integer");
            auto v = d.get<std::int64_t>();
            if (v < 0 || std::uint64_t(v) >= f.characteristic())
                throw std::invalid_argument(std::string(where) + ": digit out of range");
            digits.push_back(GfElt(v));
        }
        if (digits.size() > std::size_t(f.deg_over_prime()))
            throw std::invalid_argument(std::string(where) + ": too many digits");
        digits.resize(std::size_t(f.deg_over_prime()), 0);
        return f.from_digits(digits);
    }
    throw std::invalid_argument(std::string(where) + ": element must be an integer or digit array");
}

inline std::uint32_t uint_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !v.is_number_integer())
        throw std::invalid_argument(std::string(key) + " must be an integer");
    auto n = v.get<std::int64_t>();
    if (n < 0 || n > std::int64_t(UINT32_MAX))
        throw std::invalid_argument(std::string(key) + " out of range");
    return std::uint32_t(n);
}

} // namespace detail

inline CodeSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("code description must be a JSON object");
    CodeSpec s;
    s.q = detail::uint_field(j, "q");
    s.m = detail::uint_field(j, "m");
    s.ell = detail::uint_field(j, "ell");
    if (s.ell == 0) throw std::invalid_argument("ell must be positive");
    if (s.m == 0) throw std::invalid_argument("m must be positive");

    // Build the base field first so prime-power elements can be decoded.
    auto [p, a] = [&] {
        std::uint32_t pp = 2;
        while (std::uint64_t(pp) * pp <= s.q && s.q % pp != 0) ++pp;
        if (s.q % pp != 0) pp = s.q;
        std::uint32_t e = 0, rest = s.q;
        while (rest > 1 && rest % pp == 0) rest /= pp, ++e;
        if (rest != 1 || e == 0)
            throw std::invalid_argument("q must be a prime power");
        return std::pair<std::uint32_t, std::uint32_t>{pp, e};
    }();
    auto fq = a == 1 ? Gf::prime(p) : Gf::extension_of_degree(Gf::prime(p), int(a));

    if (!j.contains("lambda")) throw std::invalid_argument("missing field: lambda");
    s.lambda = detail::element_from_json(j.at("lambda"), *fq, "lambda");

    if (!j.contains("generators") || !j.at("generators").is_array())
        throw std::invalid_argument("generators must be an array of coefficient vectors");
    for (const auto& gen : j.at("generators")) {
        if (!gen.is_array())
            throw std::invalid_argument("each generator must be a coefficient vector");
        std::vector<GfElt> coeffs;
        for (const auto& c : gen)
            coeffs.push_back(detail::element_from_json(c, *fq, "generator coefficient"));
        s.generators.push_back(std::move(coeffs));
    }
    validate(s);
    return s;
}

inline CodeSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return spec_from_json(j);
}

inline QtCode load_code(const std::string& path) { return build_code(load_spec(path)); }

} // namespace qtb
