#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace altsigma {

using i128 = __int128;
using u128 = unsigned __int128;

// Raised when exact arithmetic would leave the 128-bit signed range.
// Values must never wrap silently.
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a request exceeds a configured memory or work budget.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("128-bit add overflow");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("128-bit sub overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("128-bit mul overflow");
    return r;
}

// base^exp by binary powering, overflow-checked.
inline i128 checked_pow(i128 base, unsigned exp) {
    i128 r = 1;
    while (exp != 0) {
        if (exp & 1u) r = checked_mul(r, base);
        exp >>= 1u;
        if (exp != 0) base = checked_mul(base, base);
    }
    return r;
}

std::string to_string(i128 v);

// Parses an optionally signed decimal string; throws std::invalid_argument on
// malformed input and overflow_error past the 128-bit range.
i128 parse_i128(std::string_view s);

uint64_t isqrt_u64(uint64_t n);
u128 isqrt_u128(u128 n);

inline i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace altsigma
