#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <string>

namespace anfnl {

/// An n-bit vector identified with an unsigned integer. Variable x1 sits at
/// the most significant of the n bits, xn at bit 0, so the monomial x4x5
/// with n=5 is mask 0b00011 = 3.
using Mask = std::uint64_t;

inline constexpr int kMaxVars = 64;

constexpr Mask full_mask(int n) {
    return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr int mask_weight(Mask x) { return std::popcount(x); }

constexpr bool mask_parity(Mask x) { return (std::popcount(x) & 1) != 0; }

/// supp(a) ⊆ supp(b), computed as (a AND b) = a.
constexpr bool is_subvector(Mask a, Mask b) { return (a & b) == a; }

/// Single-variable mask for 1-based index i, 1 <= i <= n.
constexpr Mask variable_mask(int index, int n) {
    return Mask{1} << (n - index);
}

/// Visits every y with y ⪯ m, descending from m down to 0.
template <typename Fn>
void for_each_subvector(Mask m, Fn&& fn) {
    Mask s = m;
    for (;;) {
        fn(s);
        if (s == 0) break;
        s = (s - 1) & m;
    }
}

/// Visits every y with y ⪰ m inside an n-variable space.
template <typename Fn>
void for_each_supervector(Mask m, int n, Fn&& fn) {
    const Mask free = full_mask(n) & ~m;
    for_each_subvector(free, [&](Mask s) { fn(m | s); });
}

inline std::string mask_to_hex(Mask m) {
    char buf[19];
    int len = std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(m));
    return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace anfnl
