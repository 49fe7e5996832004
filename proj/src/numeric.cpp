#include "altsigma/numeric.hpp"

#include <cmath>

namespace altsigma {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Negate through the unsigned type so i128 min survives.
    u128 u = neg ? u128(0) - u128(v) : u128(v);
    char buf[48];
    int pos = sizeof(buf);
    while (u != 0) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    if (neg) buf[--pos] = '-';
    return std::string(buf + pos, sizeof(buf) - pos);
}

i128 parse_i128(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
        if (s.size() == 1) throw std::invalid_argument("sign with no digits");
    }
    u128 acc = 0;
    const u128 limit = neg ? (u128(1) << 127) : (u128(1) << 127) - 1;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer literal");
        u128 next = acc * 10 + u128(c - '0');
        if (next < acc || next > limit) throw overflow_error("integer literal exceeds 128-bit range");
        acc = next;
    }
    return neg ? i128(u128(0) - acc) : i128(acc);
}

uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = uint64_t(std::sqrt(double(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

u128 isqrt_u128(u128 n) {
    if (n <= UINT64_MAX) return isqrt_u64(uint64_t(n));
    if (n >= u128(UINT64_MAX) * UINT64_MAX) return UINT64_MAX;
    auto r = u128(std::sqrt(std::ldexp(double(uint64_t(n >> 64)), 64)));
    // One Newton step then local fixup handles the seed error.
    r = (r + n / r) >> 1;
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace altsigma
