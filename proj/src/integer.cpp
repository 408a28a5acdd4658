#include "tatecup/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace tatecup {

namespace {

const BigInt kMin64 = BigInt(std::numeric_limits<int64_t>::min());
const BigInt kMax64 = BigInt(std::numeric_limits<int64_t>::max());

}  // namespace

Int::Int(unsigned long v) : Int(static_cast<unsigned long long>(v)) {}

Int::Int(unsigned long long v) {
    if (v <= static_cast<unsigned long long>(std::numeric_limits<int64_t>::max())) {
        small_ = static_cast<int64_t>(v);
    } else {
        big_ = std::make_unique<BigInt>(v);
    }
}

Int::Int(const BigInt& v) {
    if (v >= kMin64 && v <= kMax64) {
        small_ = static_cast<int64_t>(v);
    } else {
        big_ = std::make_unique<BigInt>(v);
    }
}

Int::Int(const Int& other) : small_(other.small_) {
    if (other.big_) big_ = std::make_unique<BigInt>(*other.big_);
}

Int& Int::operator=(const Int& other) {
    if (this == &other) return *this;
    small_ = other.small_;
    if (other.big_) {
        big_ = std::make_unique<BigInt>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

Int Int::from_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') pos = 1;
    if (pos == text.size()) throw std::invalid_argument("bad integer literal");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("bad integer literal '" + std::string(text) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Int(BigInt(digits));
}

BigInt Int::to_big() const { return big_ ? *big_ : BigInt(small_); }

int64_t Int::to_int64() const {
    if (big_) throw std::overflow_error("integer does not fit in 64 bits");
    return small_;
}

std::string Int::to_string() const {
    if (big_) return big_->str();
    return std::to_string(small_);
}

int Int::sign() const noexcept {
    if (big_) return big_->sign();
    return (small_ > 0) - (small_ < 0);
}

void Int::normalize() {
    if (big_ && *big_ >= kMin64 && *big_ <= kMax64) {
        small_ = static_cast<int64_t>(*big_);
        big_.reset();
    }
}

Int& Int::operator+=(const Int& rhs) {
    if (!big_ && !rhs.big_) {
        int64_t r;
        if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    BigInt value = to_big() + rhs.to_big();
    big_ = std::make_unique<BigInt>(std::move(value));
    normalize();
    return *this;
}

Int& Int::operator-=(const Int& rhs) {
    if (!big_ && !rhs.big_) {
        int64_t r;
        if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    BigInt value = to_big() - rhs.to_big();
    big_ = std::make_unique<BigInt>(std::move(value));
    normalize();
    return *this;
}

Int& Int::operator*=(const Int& rhs) {
    if (!big_ && !rhs.big_) {
        int64_t r;
        if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    BigInt value = to_big() * rhs.to_big();
    big_ = std::make_unique<BigInt>(std::move(value));
    normalize();
    return *this;
}

Int Int::operator-() const {
    Int zero;
    zero -= *this;
    return zero;
}

bool operator==(const Int& a, const Int& b) noexcept {
    // Both sides are normalized, so a big value never equals a small one.
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

int Int::compare(const Int& a, const Int& b) noexcept {
    if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
    BigInt x = a.to_big();
    BigInt y = b.to_big();
    return x.compare(y) < 0 ? -1 : (x.compare(y) > 0 ? 1 : 0);
}

std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.to_string(); }

Int abs(const Int& v) { return v.sign() < 0 ? -v : v; }

Int floor_div(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        int64_t x = a.small_value();
        int64_t y = b.small_value();
        if (!(x == std::numeric_limits<int64_t>::min() && y == -1)) {
            int64_t q = x / y;
            if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
            return Int(static_cast<long long>(q));
        }
    }
    BigInt x = a.to_big();
    BigInt y = b.to_big();
    BigInt q = x / y;
    BigInt r = x - q * y;
    if (r != 0 && ((r < 0) != (y < 0))) q -= 1;
    return Int(q);
}

Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int exact_div(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        int64_t x = a.small_value();
        int64_t y = b.small_value();
        if (!(x == std::numeric_limits<int64_t>::min() && y == -1)) {
            return Int(static_cast<long long>(x / y));
        }
    }
    return Int(BigInt(a.to_big() / b.to_big()));
}

bool divides(const Int& d, const Int& a) {
    if (d.is_zero()) return a.is_zero();
    return mod_floor(a, d).is_zero();
}

Int gcd(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) {
        // Work in unsigned to absorb INT64_MIN.
        auto ux = static_cast<uint64_t>(a.small_value() < 0 ? -(a.small_value() + 1) : a.small_value());
        auto uy = static_cast<uint64_t>(b.small_value() < 0 ? -(b.small_value() + 1) : b.small_value());
        if (a.small_value() < 0) ux += 1;
        if (b.small_value() < 0) uy += 1;
        while (uy != 0) {
            uint64_t t = ux % uy;
            ux = uy;
            uy = t;
        }
        return Int(static_cast<unsigned long long>(ux));
    }
    return Int(BigInt(boost::multiprecision::gcd(a.to_big(), b.to_big())));
}

Int lcm(const Int& a, const Int& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    return abs(exact_div(a, gcd(a, b)) * b);
}

Bezout extended_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (!r.is_zero()) {
        Int q = floor_div(old_r, r);
        Int tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s;
        old_s = std::move(s);
        s = std::move(tmp);
        tmp = old_t - q * t;
        old_t = std::move(t);
        t = std::move(tmp);
    }
    if (old_r.sign() < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

}  // namespace tatecup
