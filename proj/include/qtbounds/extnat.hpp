#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qtb {

// Natural numbers with a point at infinity. Minimum distances live here:
// the zero code has distance inf, and inf is absorbing under products
// (Lally-style bound composition) and neutral under min.
class ExtNat {
public:
    constexpr ExtNat() : v_(0) {}
    constexpr ExtNat(std::uint64_t v) : v_(v) {}

    static constexpr ExtNat inf() { return ExtNat(kInf, Tag{}); }

    constexpr bool is_inf() const { return v_ == kInf; }

    // Finite value accessor; misuse on inf is a programming error.
    std::uint64_t value() const {
        if (is_inf()) throw std::logic_error("ExtNat: value() on inf");
        return v_;
    }

    friend constexpr bool operator==(ExtNat a, ExtNat b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(ExtNat a, ExtNat b) { return a.v_ != b.v_; }
    // inf is the maximum; the sentinel already sorts last.
    friend constexpr bool operator<(ExtNat a, ExtNat b) { return a.v_ < b.v_; }
    friend constexpr bool operator<=(ExtNat a, ExtNat b) { return a.v_ <= b.v_; }
    friend constexpr bool operator>(ExtNat a, ExtNat b) { return a.v_ > b.v_; }
    friend constexpr bool operator>=(ExtNat a, ExtNat b) { return a.v_ >= b.v_; }

    friend constexpr ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }
    friend constexpr ExtNat max(ExtNat a, ExtNat b) { return a < b ? b : a; }

    // Saturating product: inf * x = inf (bound values never overflow u64
    // otherwise; operands here are small code distances).
    friend constexpr ExtNat operator*(ExtNat a, ExtNat b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return ExtNat(a.v_ * b.v_);
    }

    std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

private:
    struct Tag {};
    constexpr ExtNat(std::uint64_t v, Tag) : v_(v) {}
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t v_;
};

} // namespace qtb
