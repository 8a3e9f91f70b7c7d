#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "anfnl/anf.hpp"
#include "anfnl/bits.hpp"
#include "anfnl/int128.hpp"

namespace anfnl {

/// Combined coefficient C_u: the signed multiplicity collected under mask u
/// by all monomial products whose variable-support union is u. C_u is odd
/// exactly when u is one of the input monomials.
struct CombinedCoefficient {
    Mask mask = 0;
    i128 c = 0;

    friend bool operator==(const CombinedCoefficient&, const CombinedCoefficient&) = default;
};

namespace detail {

// Coefficient list with mask lookup and stable insertion order.
class CoefList {
public:
    void add(Mask mask, i128 value) {
        auto [it, inserted] = index_.try_emplace(mask, value);
        if (inserted)
            order_.push_back(mask);
        else
            it->second = checked_add(it->second, value);
    }

    void prune_zeros() {
        std::erase_if(order_, [&](Mask m) {
            auto it = index_.find(m);
            if (it->second != 0) return false;
            index_.erase(it);
            return true;
        });
    }

    const std::vector<Mask>& order() const { return order_; }
    i128& value(Mask m) { return index_.at(m); }

    std::vector<CombinedCoefficient> take() const {
        std::vector<CombinedCoefficient> out;
        out.reserve(order_.size());
        for (Mask m : order_) out.push_back({m, index_.at(m)});
        return out;
    }

private:
    std::unordered_map<Mask, i128> index_;
    std::vector<Mask> order_;
};

inline void require_valid_monomials(std::span<const Mask> monomials) {
    std::unordered_set<Mask> seen;
    for (Mask m : monomials) {
        if (m == 0) throw std::invalid_argument("monomial mask 0 is not allowed; strip the constant first");
        if (!seen.insert(m).second) throw std::invalid_argument("duplicate monomial mask");
    }
}

}  // namespace detail

/// Builds the combined coefficients by folding one monomial at a time into
/// the running list. For the incoming monomial I, each existing entry (J, C)
/// contributes against a snapshot of the list as it stood before I:
///   - I ⊆ J: C is negated in place (the product lands back on J),
///   - J ⊂ I: the product lands on I itself, accumulated as S <- S - 2C,
///   - otherwise: -2C is staged under I ∪ J and merged after the sweep.
/// S starts at 1 (the monomial's own contribution) and is added under I
/// last. Entries that cancel to zero are pruned after every monomial.
inline std::vector<CombinedCoefficient> calc_coef(std::span<const Mask> monomials) {
    detail::require_valid_monomials(monomials);
    detail::CoefList coef;
    std::vector<std::pair<Mask, i128>> staged_order;
    std::unordered_map<Mask, std::size_t> staged_index;
    for (Mask incoming : monomials) {
        staged_order.clear();
        staged_index.clear();
        i128 standalone = 1;  // S
        for (Mask existing : coef.order()) {
            i128& c = coef.value(existing);
            if (is_subvector(incoming, existing)) {
                c = checked_neg(c);
            } else if (is_subvector(existing, incoming)) {
                standalone = checked_sub(standalone, checked_mul(2, c));
            } else {
                Mask u = incoming | existing;
                i128 add = checked_mul(-2, c);
                auto [it, inserted] = staged_index.try_emplace(u, staged_order.size());
                if (inserted)
                    staged_order.emplace_back(u, add);
                else
                    staged_order[it->second].second = checked_add(staged_order[it->second].second, add);
            }
        }
        for (const auto& [mask, value] : staged_order) coef.add(mask, value);
        coef.add(incoming, standalone);
        coef.prune_zeros();
    }
    return coef.take();
}

/// Independent oracle: evaluates the subset-sum definition directly, adding
/// (-2)^(|S|-1) under OR(S) for every nonempty monomial subset S.
inline std::vector<CombinedCoefficient> brute_force_coef(std::span<const Mask> monomials) {
    detail::require_valid_monomials(monomials);
    const std::size_t p = monomials.size();
    if (p > 20) throw std::invalid_argument("brute_force_coef enumerates 2^p subsets; p <= 20 required");
    std::unordered_map<Mask, i128> acc;
    std::vector<Mask> union_of(std::size_t{1} << p, 0);
    for (std::size_t s = 1; s < union_of.size(); ++s) {
        std::size_t low = s & (s - 1);
        int bit = std::countr_zero(s);
        union_of[s] = union_of[low] | monomials[static_cast<std::size_t>(bit)];
        int k = std::popcount(s);
        i128 term = pow2_i128(k - 1);
        if ((k - 1) & 1) term = -term;
        auto [it, inserted] = acc.try_emplace(union_of[s], term);
        if (!inserted) it->second = checked_add(it->second, term);
    }
    std::vector<CombinedCoefficient> out;
    for (const auto& [mask, c] : acc)
        if (c != 0) out.push_back({mask, c});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mask < b.mask; });
    return out;
}

enum class OrderStrategy { AbsDesc, Input };

inline const char* order_strategy_name(OrderStrategy s) {
    return s == OrderStrategy::AbsDesc ? "abs-desc" : "input";
}

/// One variable of the distance function: beta = C_u * 2^(n - wt(u)), the
/// combined coefficient times the positive representative column value.
struct DistanceTerm {
    Mask mask = 0;
    i128 beta = 0;

    friend bool operator==(const DistanceTerm&, const DistanceTerm&) = default;
};

/// The binary optimization problem F(b_1..b_k) = sum of beta_i b_i, plus the
/// suffix bound tables used for pruning. `weight` is the weight of the input
/// function, already complement-adjusted.
struct DistanceProblem {
    int n = 0;
    bool complemented = false;
    std::vector<DistanceTerm> terms;
    i128 weight = 0;
    OrderStrategy order_tag = OrderStrategy::AbsDesc;
    std::vector<i128> suffix_max;  // size k+1: max positive gain from term i on
    std::vector<i128> suffix_min;  // size k+1: max negative swing from term i on
};

/// Runs phase 1 and assembles the distance problem. Ordering `input` lists
/// the original monomials first (in input order) and then the derived union
/// masks in creation order; `abs-desc` sorts by descending |beta| to tighten
/// branch-and-bound, ties by ascending mask.
inline DistanceProblem build_problem(const AnfFunction& f, OrderStrategy order = OrderStrategy::AbsDesc) {
    DistanceProblem pb;
    pb.n = f.n;
    pb.complemented = f.complemented;
    pb.order_tag = order;

    auto coeffs = calc_coef(f.monomials);
    pb.terms.reserve(coeffs.size());
    for (const auto& cc : coeffs)
        pb.terms.push_back({cc.mask, checked_mul(cc.c, pow2_i128(f.n - mask_weight(cc.mask)))});

    if (order == OrderStrategy::Input) {
        std::unordered_map<Mask, std::size_t> position;
        for (std::size_t i = 0; i < pb.terms.size(); ++i) position.emplace(pb.terms[i].mask, i);
        std::vector<DistanceTerm> arranged;
        arranged.reserve(pb.terms.size());
        std::unordered_set<Mask> taken;
        for (Mask m : f.monomials) {
            arranged.push_back(pb.terms[position.at(m)]);
            taken.insert(m);
        }
        for (const auto& t : pb.terms)
            if (!taken.contains(t.mask)) arranged.push_back(t);
        pb.terms = std::move(arranged);
    } else {
        std::stable_sort(pb.terms.begin(), pb.terms.end(), [](const DistanceTerm& a, const DistanceTerm& b) {
            i128 aa = abs128(a.beta), bb = abs128(b.beta);
            if (aa != bb) return aa > bb;
            return a.mask < b.mask;
        });
    }

    i128 sum = 0;
    for (const auto& t : pb.terms) sum = checked_add(sum, t.beta);
    pb.weight = f.complemented ? checked_sub(pow2_i128(f.n), sum) : sum;

    const std::size_t k = pb.terms.size();
    pb.suffix_max.assign(k + 1, 0);
    pb.suffix_min.assign(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
        pb.suffix_max[i] = pb.terms[i].beta > 0 ? checked_add(pb.suffix_max[i + 1], pb.terms[i].beta)
                                                : pb.suffix_max[i + 1];
        pb.suffix_min[i] = pb.terms[i].beta < 0 ? checked_add(pb.suffix_min[i + 1], pb.terms[i].beta)
                                                : pb.suffix_min[i + 1];
    }
    return pb;
}

/// Diagnostic estimate of the combined-coefficient count for random
/// functions: sum over k of (1 - (1 - (1-q)^k)^n) * binom(n, k). Known to
/// sit far above observed counts for the usual parameters; reported next to
/// the measured k, never used as a bound.
inline double expected_coefficient_count(int n, int p, double q) {
    if (n < 1 || p < 1) throw std::invalid_argument("expected_coefficient_count needs n >= 1, p >= 1");
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("expected_coefficient_count needs 0 < q <= 1");
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 1; k <= p; ++k) {
        binom = binom * (n - k + 1) / k;
        if (binom <= 0.0) break;  // k exceeded n
        double miss = std::pow(1.0 - q, k);
        sum += (1.0 - std::pow(1.0 - miss, n)) * binom;
    }
    return sum;
}

}  // namespace anfnl
