#pragma once

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t live inline; every operation checks for
// overflow and promotes to a heap-allocated boost cpp_int when needed.
// Results that fit back into int64_t are demoted again, so equality and
// hashing never depend on the representation.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace tatecup {

using BigInt = boost::multiprecision::cpp_int;

class Int {
public:
    Int() noexcept = default;
    Int(int v) noexcept : small_(v) {}
    Int(long v) noexcept : small_(v) {}
    Int(long long v) noexcept : small_(v) {}
    Int(unsigned v) noexcept : small_(v) {}
    Int(unsigned long v);
    Int(unsigned long long v);
    explicit Int(const BigInt& v);

    Int(const Int& other);
    Int(Int&& other) noexcept = default;
    Int& operator=(const Int& other);
    Int& operator=(Int&& other) noexcept = default;
    ~Int() = default;

    static Int from_string(std::string_view text);

    bool is_small() const noexcept { return !big_; }
    int64_t small_value() const noexcept { return small_; }
    BigInt to_big() const;
    // Throws std::overflow_error when the value does not fit.
    int64_t to_int64() const;
    std::string to_string() const;

    int sign() const noexcept;
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }

    Int& operator+=(const Int& rhs);
    Int& operator-=(const Int& rhs);
    Int& operator*=(const Int& rhs);
    Int operator-() const;

    friend Int operator+(Int lhs, const Int& rhs) { return lhs += rhs; }
    friend Int operator-(Int lhs, const Int& rhs) { return lhs -= rhs; }
    friend Int operator*(Int lhs, const Int& rhs) { return lhs *= rhs; }

    friend bool operator==(const Int& a, const Int& b) noexcept;
    friend bool operator!=(const Int& a, const Int& b) noexcept { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) noexcept { return compare(a, b) < 0; }
    friend bool operator>(const Int& a, const Int& b) noexcept { return compare(a, b) > 0; }
    friend bool operator<=(const Int& a, const Int& b) noexcept { return compare(a, b) <= 0; }
    friend bool operator>=(const Int& a, const Int& b) noexcept { return compare(a, b) >= 0; }
    static int compare(const Int& a, const Int& b) noexcept;

    friend std::ostream& operator<<(std::ostream& os, const Int& v);

private:
    void normalize();

    int64_t small_ = 0;
    std::unique_ptr<BigInt> big_;
};

Int abs(const Int& v);
// Floor division and the matching nonnegative-for-positive-divisor remainder.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);
// Truncating quotient; exact when b divides a.
Int exact_div(const Int& a, const Int& b);
bool divides(const Int& d, const Int& a);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Bezout coefficients: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
struct Bezout {
    Int g, s, t;
};
Bezout extended_gcd(const Int& a, const Int& b);

// Reduces v into [0, m) when m > 0; leaves v unchanged when m == 0.
inline void reduce_mod(Int& v, const Int& m) {
    if (m.is_zero()) return;
    if (v.is_small() && m.is_small()) {
        int64_t r = v.small_value() % m.small_value();
        if (r < 0) r += m.small_value();
        v = Int(static_cast<long long>(r));
        return;
    }
    v = mod_floor(v, m);
}

}  // namespace tatecup
