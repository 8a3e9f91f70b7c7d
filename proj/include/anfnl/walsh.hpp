#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "anfnl/report.hpp"
#include "anfnl/truth_table.hpp"

namespace anfnl {

struct WalshSpectrum {
    int n = 0;
    std::vector<std::int64_t> values;  // entry w is W_f(w)
};

/// In-place Walsh-Hadamard butterfly on the ±1 sequence of f, O(n 2^n).
/// W_f(w) = sum over x of (-1)^(f(x) ⊕ <w,x>).
inline WalshSpectrum fast_walsh(const TruthTable& tt) {
    if (tt.n < 1 || tt.n > kMaxTableVars || tt.bits.size() != (std::size_t{1} << tt.n))
        throw std::invalid_argument("fast_walsh supports materialized tables with 1 <= n <= 24");
    WalshSpectrum sp;
    sp.n = tt.n;
    sp.values.resize(tt.bits.size());
    for (std::size_t x = 0; x < tt.bits.size(); ++x) sp.values[x] = tt.bits[x] ? -1 : 1;
    for (std::size_t step = 1; step < sp.values.size(); step <<= 1)
        for (std::size_t block = 0; block < sp.values.size(); block += step << 1)
            for (std::size_t i = block; i < block + step; ++i) {
                std::int64_t a = sp.values[i];
                std::int64_t b = sp.values[i + step];
                sp.values[i] = a + b;
                sp.values[i + step] = a - b;
            }
    return sp;
}

namespace oracle {

/// Exhaustive reference: truth table, full spectrum scan, nearest affine
/// functions for every w attaining the spectrum maximum. Ground truth for
/// the sparse pipeline on small n.
inline AnalysisReport nonlinearity_oracle(const AnfFunction& f) {
    AnalysisReport r;
    r.n = f.n;
    r.monomial_count = f.monomials.size();
    TruthTable tt = truth_table(f);
    WalshSpectrum sp = fast_walsh(tt);

    std::int64_t max_abs = 0;
    for (std::int64_t v : sp.values)
        if (std::abs(v) > max_abs) max_abs = std::abs(v);

    const i128 half = pow2_i128(f.n - 1);
    r.weight = static_cast<i128>(table_weight(tt));
    r.max_abs_half_walsh = max_abs / 2;
    r.nonlinearity = half - r.max_abs_half_walsh;
    for (std::size_t w = 0; w < sp.values.size(); ++w) {
        if (std::abs(sp.values[w]) != max_abs) continue;
        NearestAffine na;
        na.w = static_cast<Mask>(w);
        na.walsh = sp.values[w];
        na.complement = sp.values[w] < 0;
        na.distance = half - abs128(na.walsh) / 2;
        r.nearest.push_back(na);
    }
    return r;
}

}  // namespace oracle
}  // namespace anfnl
