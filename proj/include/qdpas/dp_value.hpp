#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdpas {

// Thrown when a cost computation would leave the representable range.
// Every arithmetic path below checks; a wrapped cost must never masquerade
// as a finite optimum.
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Nonnegative cost with a dedicated +infinity. Infinity absorbs addition and
// compares greater than every finite value. Finite arithmetic is overflow
// checked rather than saturating so corrupted instances fail loudly.
class dp_value {
  public:
    constexpr dp_value() : v_(0) {}

    // implicit on purpose: adapters return plain integer costs all over
    dp_value(std::int64_t v) : v_(v) {
        if (v < 0) throw overflow_error("negative cost " + std::to_string(v));
        if (v == k_inf_) throw overflow_error("finite cost collides with infinity sentinel");
    }

    static constexpr dp_value inf() {
        dp_value x;
        x.v_ = k_inf_;
        return x;
    }

    constexpr bool is_inf() const { return v_ == k_inf_; }
    constexpr bool finite() const { return v_ != k_inf_; }

    std::int64_t value() const {
        if (is_inf()) throw overflow_error("value() on infinity");
        return v_;
    }

    // raw view, infinity included; used only by dense table storage
    constexpr std::int64_t raw() const { return v_; }
    static constexpr dp_value from_raw(std::int64_t r) {
        dp_value x;
        x.v_ = r;
        return x;
    }

    friend dp_value operator+(dp_value a, dp_value b) {
        if (a.is_inf() || b.is_inf()) return inf();
        std::int64_t out = 0;
        if (__builtin_add_overflow(a.v_, b.v_, &out) || out >= k_inf_)
            throw overflow_error("cost addition overflow");
        dp_value x;
        x.v_ = out;
        return x;
    }

    dp_value& operator+=(dp_value b) { return *this = *this + b; }

    friend constexpr bool operator==(dp_value a, dp_value b) { return a.v_ == b.v_; }
    friend constexpr std::strong_ordering operator<=>(dp_value a, dp_value b) {
        // the sentinel is int64 max, so raw ordering is already correct
        return a.v_ <=> b.v_;
    }

    static constexpr dp_value min(dp_value a, dp_value b) { return a.v_ <= b.v_ ? a : b; }

    std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

  private:
    static constexpr std::int64_t k_inf_ = std::numeric_limits<std::int64_t>::max();
    std::int64_t v_;
};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw overflow_error("cost multiplication overflow");
    return out;
}

}  // namespace qdpas
