#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "anfnl/anf.hpp"
#include "anfnl/bits.hpp"

namespace anfnl {

// Materialized 2^n tables are the small-n oracle path only; anything bigger
// must go through the sparse pipeline.
inline constexpr int kMaxTableVars = 24;

struct TruthTable {
    int n = 0;
    std::vector<std::uint8_t> bits;  // indexed by point mask
};

/// Fast Möbius butterfly over F2. Maps an ANF coefficient vector to the
/// truth table and back; the transform is its own inverse.
inline std::vector<std::uint8_t> mobius_transform(std::vector<std::uint8_t> v) {
    if (v.empty() || !std::has_single_bit(v.size()))
        throw std::invalid_argument("mobius_transform needs a power-of-two length");
    for (auto& b : v) b &= 1;
    for (std::size_t step = 1; step < v.size(); step <<= 1)
        for (std::size_t block = 0; block < v.size(); block += step << 1)
            for (std::size_t i = block; i < block + step; ++i)
                v[i + step] = (v[i + step] ^ v[i]) & 1;
    return v;
}

/// Materializes f's truth table via the Möbius butterfly, O(n 2^n).
inline TruthTable truth_table(const AnfFunction& f) {
    if (f.n < 1 || f.n > kMaxTableVars)
        throw std::invalid_argument("truth table materialization supports 1 <= n <= 24");
    TruthTable tt;
    tt.n = f.n;
    tt.bits.assign(std::size_t{1} << f.n, 0);
    tt.bits[0] = f.complemented ? 1 : 0;
    for (Mask m : f.monomials) tt.bits[m] ^= 1;
    tt.bits = mobius_transform(std::move(tt.bits));
    return tt;
}

inline std::uint64_t table_weight(const TruthTable& tt) {
    std::uint64_t w = 0;
    for (std::uint8_t b : tt.bits) w += b;
    return w;
}

}  // namespace anfnl
