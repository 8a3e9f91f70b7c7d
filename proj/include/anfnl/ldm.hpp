#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "anfnl/bits.hpp"
#include "anfnl/int128.hpp"

namespace anfnl {

// The materialized matrix exists for tests, the `ldm` dump command and
// eyeball checks; the solver only ever uses the closed form analytically.
inline constexpr int kMaxLdmVars = 12;

struct LinearDistanceMatrix {
    int n = 0;
    std::size_t size = 0;  // 2^n
    std::vector<std::int32_t> entries;  // row-major

    std::int32_t at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
    std::int32_t& at(std::size_t i, std::size_t j) { return entries[i * size + j]; }
};

/// Closed form: (-1)^wt(i) * 2^(n-wt(j)) when i ⪯ j, else 0.
inline i128 ldm_entry(int n, Mask i, Mask j) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("ldm_entry needs 1 <= n <= 64");
    if (!is_subvector(i, full_mask(n)) || !is_subvector(j, full_mask(n)))
        throw std::invalid_argument("ldm_entry indices must fit in n bits");
    if (!is_subvector(i, j)) return 0;
    i128 v = pow2_i128(n - mask_weight(j));
    return mask_parity(i) ? -v : v;
}

namespace detail {

inline void check_ldm_order(int n) {
    if (n < 1 || n > kMaxLdmVars)
        throw std::invalid_argument("LDM materialization supports 1 <= n <= 12");
}

}  // namespace detail

/// Kronecker construction: start from [1] and fold [[2,1],[0,-1]] n times.
inline LinearDistanceMatrix ldm_build_recursive(int n) {
    detail::check_ldm_order(n);
    LinearDistanceMatrix m;
    m.n = n;
    m.size = std::size_t{1} << n;
    m.entries.assign(m.size * m.size, 0);
    m.entries[0] = 1;
    for (int step = 0; step < n; ++step) {
        const std::size_t half = std::size_t{1} << step;
        // grow the live half x half block to 2half x 2half, in place
        for (std::size_t i = half; i-- > 0;) {
            for (std::size_t j = half; j-- > 0;) {
                std::int32_t v = m.entries[i * m.size + j];
                m.at(i, j) = 2 * v;
                m.at(i, j + half) = v;
                m.at(i + half, j) = 0;
                m.at(i + half, j + half) = -v;
            }
        }
    }
    return m;
}

/// Row sums of the Sylvester-Hadamard matrix: M[i][j] adds the ±1 entries of
/// H_n's row i over the columns that are super-vectors of j.
inline LinearDistanceMatrix ldm_from_hadamard(int n) {
    detail::check_ldm_order(n);
    LinearDistanceMatrix m;
    m.n = n;
    m.size = std::size_t{1} << n;
    m.entries.assign(m.size * m.size, 0);
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j) {
            std::int32_t sum = 0;
            for_each_supervector(static_cast<Mask>(j), n, [&](Mask c) {
                sum += mask_parity(static_cast<Mask>(i) & c) ? -1 : 1;
            });
            m.at(i, j) = sum;
        }
    return m;
}

/// Entrywise fill from the closed form; the cheap construction for dumps.
inline LinearDistanceMatrix ldm_from_entries(int n) {
    detail::check_ldm_order(n);
    LinearDistanceMatrix m;
    m.n = n;
    m.size = std::size_t{1} << n;
    m.entries.assign(m.size * m.size, 0);
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j)
            m.at(i, j) = static_cast<std::int32_t>(ldm_entry(n, static_cast<Mask>(i), static_cast<Mask>(j)));
    return m;
}

/// Row-major CSV with a header row of column indices.
inline void ldm_write_csv(const LinearDistanceMatrix& m, std::ostream& os) {
    for (std::size_t j = 0; j < m.size; ++j) {
        if (j != 0) os << ',';
        os << j;
    }
    os << '\n';
    for (std::size_t i = 0; i < m.size; ++i) {
        for (std::size_t j = 0; j < m.size; ++j) {
            if (j != 0) os << ',';
            os << m.at(i, j);
        }
        os << '\n';
    }
}

}  // namespace anfnl
