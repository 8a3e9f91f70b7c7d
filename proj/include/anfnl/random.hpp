#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "anfnl/anf.hpp"
#include "anfnl/bits.hpp"

namespace anfnl {

// Generator stream v1, frozen so a (seed, n, p, q) tuple names the same
// function everywhere: a std::mt19937_64 seeded with `seed`; for each
// monomial attempt, variables x1..xn in order each take one 64-bit draw and
// join the monomial when draw >> 11 < q * 2^53; all-zero or already-seen
// monomials are discarded and redrawn.
inline constexpr int kGenStreamVersion = 1;

/// Draws p distinct nonzero monomials, each variable present independently
/// with probability q.
inline AnfFunction gen_random_anf(int n, int p, double q, std::uint64_t seed) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("gen needs 1 <= n <= 64");
    if (p < 1) throw std::invalid_argument("gen needs p >= 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("gen needs 0 < q < 1");
    if (n < 63 && static_cast<std::uint64_t>(p) > full_mask(n))
        throw std::invalid_argument("p exceeds the number of distinct nonzero monomials");

    const std::uint64_t threshold = static_cast<std::uint64_t>(q * 9007199254740992.0);  // q * 2^53
    std::mt19937_64 rng(seed);
    AnfFunction f;
    f.n = n;
    std::unordered_set<Mask> seen;
    while (f.monomials.size() < static_cast<std::size_t>(p)) {
        Mask m = 0;
        for (int index = 1; index <= n; ++index)
            if ((rng() >> 11) < threshold) m |= variable_mask(index, n);
        if (m == 0 || !seen.insert(m).second) continue;
        f.monomials.push_back(m);
    }
    return f;
}

}  // namespace anfnl
