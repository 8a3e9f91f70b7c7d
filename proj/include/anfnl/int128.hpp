#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace anfnl {

// Combined coefficients and the sums built from them can exceed 64 bits long
// before the instance sizes become unreasonable, so all coefficient and
// distance arithmetic runs through these checked 128-bit helpers. Overflow
// raises std::overflow_error instead of wrapping.
using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit addition overflow");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("128-bit subtraction overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiplication overflow");
    return r;
}

inline i128 checked_neg(i128 a) { return checked_sub(0, a); }

inline i128 abs128(i128 a) { return a < 0 ? checked_neg(a) : a; }

/// 2^e as a signed 128-bit value, 0 <= e <= 126.
inline i128 pow2_i128(int e) {
    if (e < 0 || e > 126) throw std::overflow_error("2^e out of 128-bit range");
    return i128{1} << e;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    char* p = buf + sizeof buf;
    while (v != 0) {
        *--p = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(p, buf + sizeof buf);
}

inline std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
    return to_string(static_cast<u128>(v));
}

inline i128 i128_from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty 128-bit literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("sign-only 128-bit literal");
    u128 acc = 0;
    constexpr u128 limit = ~u128{0};
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in 128-bit literal");
        unsigned d = static_cast<unsigned>(c - '0');
        if (acc > (limit - d) / 10) throw std::overflow_error("128-bit literal out of range");
        acc = acc * 10 + d;
    }
    constexpr u128 max_pos = static_cast<u128>(~u128{0} >> 1);
    if (!neg && acc > max_pos) throw std::overflow_error("128-bit literal out of range");
    if (neg && acc > max_pos + 1) throw std::overflow_error("128-bit literal out of range");
    if (neg && acc == max_pos + 1) return static_cast<i128>(acc);  // exactly INT128_MIN
    return neg ? -static_cast<i128>(acc) : static_cast<i128>(acc);
}

}  // namespace anfnl
