#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anfnl/coefficients.hpp"
#include "anfnl/report.hpp"
#include "anfnl/walsh.hpp"

namespace anfnl {

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 32;

class BudgetError : public std::runtime_error {
public:
    BudgetError(i128 best_so_far, std::uint64_t nodes)
        : std::runtime_error("node budget exceeded after " + std::to_string(nodes) +
                             " nodes; best |F| found so far is " + to_string(best_so_far)),
          best_(best_so_far),
          nodes_(nodes) {}
    i128 best_so_far() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    i128 best_;
    std::uint64_t nodes_;
};

class VerificationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Mask and_all(std::span<const Mask> masks, int n) {
    Mask a = full_mask(n);
    for (Mask m : masks) a &= m;
    return a;
}

// The feasibility checks ask for a nonzero row w of the LDM with prescribed
// zero columns (C0) and nonzero columns (C1 and u). Since w = AND(C1) ∧ u is
// the maximal candidate and every condition is monotone in w, testing that
// single mask is exact.
inline bool branch1_masked(std::span<const Mask> zero_cols, Mask include_mask, Mask u, int n) {
    const Mask a = u & include_mask;
    if (a == 0) return false;
    const Mask full = full_mask(n);
    for (Mask c : zero_cols)
        if ((~c & full & a) == 0) return false;
    return true;
}

inline bool branch0_masked(std::span<const Mask> zero_cols, Mask include_mask, Mask u, int n) {
    const Mask full = full_mask(n);
    if ((~u & full & include_mask) == 0) return false;
    for (Mask c : zero_cols)
        if ((~c & full & include_mask) == 0) return false;
    return true;
}

}  // namespace detail

/// Can the tree node for column u take the value 1, given the columns chosen
/// zero (c0) and nonzero (c1) so far.
inline bool branch1(std::span<const Mask> c0, std::span<const Mask> c1, Mask u, int n) {
    return detail::branch1_masked(c0, detail::and_all(c1, n), u, n);
}

/// Can the tree node for column u take the value 0.
inline bool branch0(std::span<const Mask> c0, std::span<const Mask> c1, Mask u, int n) {
    return detail::branch0_masked(c0, detail::and_all(c1, n), u, n);
}

namespace detail {

// Depth-first walk of the distance tree, 1-branch before 0-branch. `bound`
// points at the incumbent |F| when pruning is active; the leaf callback may
// raise the pointee as better leaves appear. A subtree is skipped only when
// it cannot even tie ±bound, so every leaf attaining the final bound is
// still visited.
template <typename LeafFn>
EnumStats enumerate_impl(const DistanceProblem& pb, const i128* bound, std::uint64_t node_budget,
                         LeafFn&& on_leaf) {
    const std::size_t k = pb.terms.size();
    const Mask full = full_mask(pb.n);
    EnumStats stats;
    i128 max_abs_seen = 0;

    struct Frame {
        Mask include_mask;
        i128 partial;
        std::uint8_t stage;  // 0: enter + try 1-branch, 1: try 0-branch, 2: pop zero col, 3: pop
    };
    std::vector<Frame> stack;
    stack.reserve(k + 1);
    std::vector<std::uint8_t> path(k, 0);
    std::vector<Mask> zero_cols;
    zero_cols.reserve(k);

    stack.push_back({full, 0, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const std::size_t depth = stack.size() - 1;
        switch (f.stage) {
            case 0: {
                ++stats.nodes;
                if (stats.nodes > node_budget) throw BudgetError(max_abs_seen, stats.nodes);
                if (depth == k) {
                    ++stats.leaves;
                    if (abs128(f.partial) > max_abs_seen) max_abs_seen = abs128(f.partial);
                    on_leaf(path, f.partial);
                    f.stage = 3;
                    break;
                }
                if (bound != nullptr && checked_add(f.partial, pb.suffix_max[depth]) < *bound &&
                    checked_add(f.partial, pb.suffix_min[depth]) > -*bound) {
                    ++stats.pruned;
                    f.stage = 3;
                    break;
                }
                f.stage = 1;
                const Mask m = pb.terms[depth].mask;
                const Mask narrowed = f.include_mask & m;
                // when the include mask does not shrink, the C0 conditions
                // still hold from this node's own feasibility
                const bool ok = narrowed == f.include_mask
                                    ? true
                                    : branch1_masked(zero_cols, f.include_mask, m, pb.n);
                if (ok) {
                    path[depth] = 1;
                    const i128 next = checked_add(f.partial, pb.terms[depth].beta);
                    stack.push_back({narrowed, next, 0});
                }
                break;
            }
            case 1: {
                const Mask m = pb.terms[depth].mask;
                if ((~m & full & f.include_mask) != 0) {
                    f.stage = 2;
                    path[depth] = 0;
                    zero_cols.push_back(m);
                    stack.push_back({f.include_mask, f.partial, 0});
                } else {
                    f.stage = 3;
                }
                break;
            }
            case 2:
                zero_cols.pop_back();
                stack.pop_back();
                break;
            default:
                stack.pop_back();
                break;
        }
    }
    return stats;
}

}  // namespace detail

/// Walks the distance tree and reports every reached leaf as
/// on_leaf(path_bits, value). With a bound B, subtrees that cannot reach
/// |value| >= B are skipped.
template <typename LeafFn>
EnumStats enumerate_tree(const DistanceProblem& pb, std::optional<i128> bound, LeafFn&& on_leaf,
                         std::uint64_t node_budget = kDefaultNodeBudget) {
    if (pb.terms.empty()) throw std::invalid_argument("enumerate_tree needs a nonempty problem");
    if (bound) {
        i128 fixed = *bound;
        return detail::enumerate_impl(pb, &fixed, node_budget, std::forward<LeafFn>(on_leaf));
    }
    return detail::enumerate_impl(pb, nullptr, node_budget, std::forward<LeafFn>(on_leaf));
}

/// W_f(w) for nonzero w straight from the problem: F = sum of betas over
/// terms whose mask is a super-vector of w, then 2F or -2F by the parity of
/// wt(w) (all rows carry positive representative values, so odd-weight rows
/// compute the complement side).
inline i128 walsh_of_row(const DistanceProblem& pb, Mask w) {
    if (w == 0)
        throw std::invalid_argument("w = 0 is the weight row; W(0) = 2^n - 2 wt(f)");
    if (!is_subvector(w, full_mask(pb.n)))
        throw std::invalid_argument("w must fit in n bits");
    i128 f = 0;
    for (const auto& t : pb.terms)
        if (is_subvector(w, t.mask)) f = checked_add(f, t.beta);
    i128 walsh = checked_mul(2, f);
    if (!mask_parity(w)) walsh = checked_neg(walsh);
    if (pb.complemented) walsh = checked_neg(walsh);
    return walsh;
}

struct LinearFunctionSet {
    std::vector<Mask> functions;
    bool truncated = false;
    u128 count = 0;
};

/// The rows shared by one path: all nonzero x ⪯ AND(included) that keep a
/// bit outside every excluded column. Row 0 never appears; the weight row is
/// handled separately. Beyond the enumeration cap only the count is
/// reported: exact via inclusion-exclusion when the excluded list is short,
/// otherwise the sub-vector bound 2^wt(AND(included)) - 1.
inline LinearFunctionSet path_to_linear_functions(int n, std::span<const Mask> included,
                                                  std::span<const Mask> excluded,
                                                  int enumeration_cap = 24) {
    const Mask a = detail::and_all(included, n);
    const Mask full = full_mask(n);
    LinearFunctionSet out;
    if (mask_weight(a) <= enumeration_cap) {
        for_each_subvector(a, [&](Mask x) {
            if (x == 0) return;
            for (Mask y : excluded)
                if ((~y & full & x) == 0) return;
            out.functions.push_back(x);
        });
        std::sort(out.functions.begin(), out.functions.end());
        out.count = out.functions.size();
        return out;
    }
    out.truncated = true;
    if (excluded.size() <= 20) {
        i128 total = 0;
        const std::size_t subsets = std::size_t{1} << excluded.size();
        for (std::size_t s = 0; s < subsets; ++s) {
            Mask inter = a;
            for (std::size_t b = 0; b < excluded.size(); ++b)
                if (s & (std::size_t{1} << b)) inter &= excluded[b];
            const i128 block = static_cast<i128>(u128{1} << mask_weight(inter));
            total = std::popcount(s) & 1 ? checked_sub(total, block) : checked_add(total, block);
        }
        if (excluded.empty()) total = checked_sub(total, 1);  // drop x = 0
        out.count = static_cast<u128>(total);
    } else {
        out.count = (u128{1} << mask_weight(a)) - 1;
    }
    return out;
}

struct SolveOptions {
    OrderStrategy order = OrderStrategy::AbsDesc;
    bool branch_and_bound = true;
    std::uint64_t node_budget = kDefaultNodeBudget;
    bool verify = false;
    int verify_threshold = 20;
    int witness_expand_cap = 24;
};

/// The two-phase computation: build the distance problem, seed the incumbent
/// with the weight row |2^(n-1) - wt|, enumerate the tree tracking max |F|,
/// then recover the affine functions behind every maximal leaf.
inline AnalysisReport nonlinearity(const AnfFunction& f, const SolveOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceProblem pb = build_problem(f, opts.order);

    AnalysisReport r;
    r.n = f.n;
    r.monomial_count = f.monomials.size();
    r.coefficient_count = pb.terms.size();
    r.weight = pb.weight;

    const i128 half_w0 = checked_sub(pow2_i128(f.n - 1), pb.weight);  // W_f(0)/2
    i128 best = abs128(half_w0);
    std::vector<std::pair<std::string, i128>> best_leaves;
    if (!pb.terms.empty()) {
        i128* bound = opts.branch_and_bound ? &best : nullptr;
        r.stats = detail::enumerate_impl(
            pb, bound, opts.node_budget, [&](const std::vector<std::uint8_t>& path, i128 value) {
                const i128 a = abs128(value);
                if (a < best) return;
                if (a > best) {
                    best = a;
                    best_leaves.clear();
                }
                std::string bits(path.size(), '0');
                for (std::size_t i = 0; i < path.size(); ++i) bits[i] = path[i] ? '1' : '0';
                best_leaves.emplace_back(std::move(bits), value);
            });
    }

    r.max_abs_half_walsh = best;
    r.nonlinearity = checked_sub(pow2_i128(f.n - 1), best);

    if (abs128(half_w0) == best) {
        NearestAffine na;
        na.w = 0;
        na.walsh = checked_mul(2, half_w0);
        na.complement = na.walsh < 0;
        na.distance = checked_sub(pow2_i128(f.n - 1), abs128(na.walsh) / 2);
        r.nearest.push_back(na);
    }
    for (auto& [bits, value] : best_leaves) {
        std::vector<Mask> included, excluded;
        for (std::size_t i = 0; i < bits.size(); ++i)
            (bits[i] == '1' ? included : excluded).push_back(pb.terms[i].mask);
        auto rows = path_to_linear_functions(f.n, included, excluded, opts.witness_expand_cap);
        Witness wit;
        wit.path = std::move(bits);
        wit.value = value;
        wit.truncated = rows.truncated;
        wit.count = rows.count;
        wit.linear_functions = std::move(rows.functions);
        for (Mask w : wit.linear_functions) {
            NearestAffine na;
            na.w = w;
            na.walsh = checked_mul(2, value);
            if (!mask_parity(w)) na.walsh = checked_neg(na.walsh);
            if (pb.complemented) na.walsh = checked_neg(na.walsh);
            na.complement = na.walsh < 0;
            na.distance = checked_sub(pow2_i128(f.n - 1), abs128(na.walsh) / 2);
            r.nearest.push_back(na);
        }
        r.witnesses.push_back(std::move(wit));
    }
    std::sort(r.nearest.begin(), r.nearest.end(),
              [](const NearestAffine& a, const NearestAffine& b) { return a.w < b.w; });

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (opts.verify && f.n <= opts.verify_threshold && f.n <= kMaxTableVars) {
        const AnalysisReport o = oracle::nonlinearity_oracle(f);
        if (o.weight != r.weight || o.nonlinearity != r.nonlinearity ||
            o.max_abs_half_walsh != r.max_abs_half_walsh)
            throw VerificationError("sparse solver disagrees with the exhaustive oracle on n=" +
                                    std::to_string(f.n));
    }
    return r;
}

}  // namespace anfnl
