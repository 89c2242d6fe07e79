#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace bratteli {

using Int = mpz_class;
using Rat = mpq_class;

/// A natural number extended with infinity. Addition absorbs into
/// infinity; multiplication follows the convention inf * 0 = 0.
class ExtNat {
public:
    ExtNat() = default;

    ExtNat(Int v) : value_(std::move(v)) {
        if (value_ < 0) throw std::invalid_argument("ExtNat: negative value");
    }
    ExtNat(long v) : ExtNat(Int(v)) {}

    static ExtNat infinity() {
        ExtNat x;
        x.infinite_ = true;
        return x;
    }

    bool is_infinite() const { return infinite_; }

    const Int& value() const {
        if (infinite_) throw std::logic_error("ExtNat: value() of infinity");
        return value_;
    }

    bool is_zero() const { return !infinite_ && value_ == 0; }

    friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtNat(a.value_ + b.value_);
    }

    friend ExtNat operator*(const ExtNat& a, const ExtNat& b) {
        if (a.is_zero() || b.is_zero()) return ExtNat(0);
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtNat(a.value_ * b.value_);
    }

    ExtNat& operator+=(const ExtNat& o) { return *this = *this + o; }
    ExtNat& operator*=(const ExtNat& o) { return *this = *this * o; }

    friend bool operator==(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }

    // finite < infinity; finite values compare numerically
    friend bool operator<(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtNat& a, const ExtNat& b) { return a == b || a < b; }

    std::string str() const { return infinite_ ? "inf" : value_.get_str(); }

private:
    bool infinite_ = false;
    Int value_ = 0;
};

}  // namespace bratteli
