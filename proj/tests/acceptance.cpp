// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line each. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "anfnl/anfnl.hpp"

using namespace anfnl;

namespace {

struct Criterion {
    int number;
    std::string name;
    bool passed = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            notes.push_back(what);
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

AnfFunction example_function() {
    return parse_anf("x1x5 + x4x5 + x1x2x3 + x1x2x4 + x1x2x3x4x5");
}

std::multiset<long long> leaf_values(const DistanceProblem& pb) {
    std::multiset<long long> vals;
    enumerate_tree(pb, std::nullopt, [&](const auto&, i128 v) {
        vals.insert(static_cast<long long>(v));
    });
    return vals;
}

// Walsh coefficients W_f(w) of the worked example for every nonzero w.
const std::map<Mask, long long> kExampleWalsh{
    {1, 14},  {2, 6},    {3, -6},  {4, -2},  {5, 2},   {6, 2},   {7, 6},   {8, 6},
    {9, 2},   {10, -6},  {11, 6},  {12, 2},  {13, -2}, {14, -2}, {15, -6}, {16, 6},
    {17, 2},  {18, 10},  {19, -10}, {20, 2}, {21, -2}, {22, -2}, {23, -6}, {24, -6},
    {25, -2}, {26, 6},   {27, -6}, {28, -2}, {29, 2},  {30, 2},  {31, 6}};

const std::int32_t kLdm3[8][8] = {
    {8, 4, 4, 2, 4, 2, 2, 1},  {0, -4, 0, -2, 0, -2, 0, -1}, {0, 0, -4, -2, 0, 0, -2, -1},
    {0, 0, 0, 2, 0, 0, 0, 1},  {0, 0, 0, 0, -4, -2, -2, -1}, {0, 0, 0, 0, 0, 2, 0, 1},
    {0, 0, 0, 0, 0, 0, 2, 1},  {0, 0, 0, 0, 0, 0, 0, -1}};

AnfFunction random_instance(std::mt19937_64& rng, int n_lo, int n_hi, int p_hi) {
    int n = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    int max_p = std::min<int>(p_hi, static_cast<int>(full_mask(n)));
    int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_p));
    return gen_random_anf(n, p, 0.5, rng());
}

void criterion_worked_example(Criterion& c) {
    const auto t0 = Clock::now();
    AnfFunction f = example_function();

    auto coeffs = calc_coef(f.monomials);
    std::map<Mask, i128> got;
    for (const auto& cc : coeffs) got.emplace(cc.mask, cc.c);
    const std::map<Mask, i128> want{{3, 1},   {17, 1},  {26, 1},  {28, 1},
                                    {19, -2}, {29, -2}, {30, -2}, {31, 3}};
    c.require(got == want, "combined coefficient set");

    DistanceProblem pb = build_problem(f, OrderStrategy::Input);
    std::map<Mask, i128> betas;
    for (const auto& t : pb.terms) betas.emplace(t.mask, t.beta);
    const std::map<Mask, i128> want_betas{{3, 8},   {17, 8},  {26, 4},  {28, 4},
                                          {19, -8}, {29, -4}, {30, -4}, {31, 3}};
    c.require(betas == want_betas, "combined distance coefficients");
    c.require(pb.weight == 11, "weight 11");

    const std::multiset<long long> want_vals{7, 3, 3, 3, 3, 3, 3, -1, -1, -1, -1, -5, -5};
    c.require(leaf_values(pb) == want_vals, "13 feasible leaves with the expected value multiset");

    AnalysisReport r = nonlinearity(f, {.order = OrderStrategy::Input});
    c.require(r.max_abs_half_walsh == 7, "max |F| = 7");
    c.require(r.nonlinearity == 9, "nonlinearity 9");
    bool witness_ok = r.witnesses.size() == 1 && r.witnesses[0].value == 7 &&
                      r.witnesses[0].linear_functions == std::vector<Mask>{1};
    c.require(witness_ok, "max path maps to the single linear function x5");
    bool nearest_ok = r.nearest.size() == 1 && r.nearest[0].w == 1 && r.nearest[0].walsh == 14 &&
                      r.nearest[0].distance == 9 && !r.nearest[0].complement;
    c.require(nearest_ok, "nearest is x5 with Walsh +14 at distance 9");

    const double elapsed = seconds_since(t0);
    c.require(elapsed < 1.0, "runtime under 1 s");
    c.notes.push_back("elapsed " + std::to_string(elapsed) + " s");
}

void criterion_walsh_column(Criterion& c) {
    AnfFunction f = example_function();
    DistanceProblem pb = build_problem(f);
    WalshSpectrum sp = fast_walsh(truth_table(f));
    for (const auto& [w, value] : kExampleWalsh) {
        i128 from_rows = walsh_of_row(pb, w);
        c.require(from_rows == static_cast<i128>(value),
                  "walsh_of_row(" + std::to_string(w) + ")");
        c.require(static_cast<i128>(sp.values[w]) == from_rows,
                  "fast_walsh agreement at w=" + std::to_string(w));
    }
}

void criterion_ldm(Criterion& c) {
    const auto t0 = Clock::now();
    LinearDistanceMatrix rec3 = ldm_build_recursive(3);
    LinearDistanceMatrix had3 = ldm_from_hadamard(3);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            c.require(rec3.at(i, j) == kLdm3[i][j], "recursive order-3 entry");
            c.require(had3.at(i, j) == kLdm3[i][j], "hadamard order-3 entry");
            c.require(ldm_entry(3, i, j) == static_cast<i128>(kLdm3[i][j]),
                      "closed-form order-3 entry");
        }
    for (int n = 1; n <= 8; ++n) {
        LinearDistanceMatrix rec = ldm_build_recursive(n);
        LinearDistanceMatrix had = ldm_from_hadamard(n);
        const std::size_t size = std::size_t{1} << n;
        bool all = true;
        for (std::size_t i = 0; i < size && all; ++i)
            for (std::size_t j = 0; j < size; ++j) {
                i128 closed = ldm_entry(n, static_cast<Mask>(i), static_cast<Mask>(j));
                if (static_cast<i128>(rec.at(i, j)) != closed ||
                    static_cast<i128>(had.at(i, j)) != closed) {
                    all = false;
                    break;
                }
            }
        c.require(all, "triple agreement at n=" + std::to_string(n));
    }
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 10.0, "runtime under 10 s");
    c.notes.push_back("elapsed " + std::to_string(elapsed) + " s");
}

void criterion_oracle_equivalence(Criterion& c) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(0x5EC4);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        AnfFunction f = random_instance(rng, 4, 14, 20);
        AnalysisReport got = nonlinearity(f);
        AnalysisReport want = oracle::nonlinearity_oracle(f);
        if (got.nonlinearity != want.nonlinearity || got.weight != want.weight ||
            got.max_abs_half_walsh != want.max_abs_half_walsh)
            ++failures;
    }
    c.require(failures == 0, std::to_string(failures) + " of 1000 instances disagreed");
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 300.0, "runtime under 5 min");
    c.notes.push_back("1000 instances in " + std::to_string(elapsed) + " s");
}

void criterion_coefficient_oracle(Criterion& c) {
    std::mt19937_64 rng(0xC0EF);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng() % 15);
        int max_p = std::min<int>(15, static_cast<int>(full_mask(n)));
        int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_p));
        AnfFunction f = gen_random_anf(n, p, 0.5, rng());
        auto fast = calc_coef(f.monomials);
        auto slow = brute_force_coef(f.monomials);
        std::map<Mask, i128> a, b;
        for (const auto& cc : fast) a.emplace(cc.mask, cc.c);
        for (const auto& cc : slow) b.emplace(cc.mask, cc.c);
        if (a != b) {
            c.require(false, "instance " + std::to_string(t) + ": calc_coef != brute_force_coef");
            return;
        }
        std::set<Mask> inputs(f.monomials.begin(), f.monomials.end());
        for (const auto& [mask, value] : a)
            if (((value % 2) != 0) != inputs.contains(mask)) {
                c.require(false, "instance " + std::to_string(t) + ": parity invariant");
                return;
            }
    }
}

void criterion_bound_soundness(Criterion& c) {
    std::mt19937_64 rng(0xB0B5);
    for (int t = 0; t < 200; ++t) {
        AnfFunction f = random_instance(rng, 2, 14, 20);
        AnalysisReport with = nonlinearity(f, {.branch_and_bound = true});
        AnalysisReport without = nonlinearity(f, {.branch_and_bound = false});
        std::set<std::string> pa, pb;
        for (const auto& w : with.witnesses) pa.insert(w.path);
        for (const auto& w : without.witnesses) pb.insert(w.path);
        if (with.nonlinearity != without.nonlinearity || pa != pb ||
            with.stats.nodes > without.stats.nodes) {
            c.require(false, "instance " + std::to_string(t));
            return;
        }
    }
}

void criterion_bench_desk_scale(Criterion& c) {
    std::string ks = "k:";
    for (int t = 0; t < 10; ++t) {
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(t);
        AnfFunction f = gen_random_anf(60, 30, 0.5, seed);
        AnalysisReport r = nonlinearity(f);
        c.require(r.seconds <= 60.0,
                  "seed " + std::to_string(seed) + " took " + std::to_string(r.seconds) + " s");
        ks += " " + std::to_string(r.coefficient_count);
    }
    char diag[64];
    std::snprintf(diag, sizeof diag, "%.4g", expected_coefficient_count(60, 30, 0.5));
    c.notes.push_back(ks + " (formula diagnostic " + diag + ")");
}

void criterion_partition(Criterion& c) {
    std::mt19937_64 rng(0x9A77);
    for (int t = 0; t < 100; ++t) {
        AnfFunction f = random_instance(rng, 2, 10, 12);
        DistanceProblem pb = build_problem(f);
        std::vector<bool> seen(std::size_t{1} << f.n, false);
        std::uint64_t covered = 0;
        bool disjoint = true;
        enumerate_tree(pb, std::nullopt, [&](const std::vector<std::uint8_t>& path, i128) {
            std::vector<Mask> inc, exc;
            for (std::size_t i = 0; i < path.size(); ++i)
                (path[i] ? inc : exc).push_back(pb.terms[i].mask);
            for (Mask w : path_to_linear_functions(f.n, inc, exc).functions) {
                if (seen[w]) disjoint = false;
                seen[w] = true;
                ++covered;
            }
        });
        if (!disjoint || covered != full_mask(f.n)) {
            c.require(false, "instance " + std::to_string(t));
            return;
        }
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "worked-example golden test", true, {}},
        {2, "Walsh column reproduction", true, {}},
        {3, "LDM golden test and triple equivalence", true, {}},
        {4, "oracle equivalence over 1000 random instances", true, {}},
        {5, "coefficient oracle and parity invariant", true, {}},
        {6, "bound soundness", true, {}},
        {7, "desk-scale timing at n=60, p=30", true, {}},
        {8, "partition of the nonzero masks", true, {}},
    };
    criterion_worked_example(criteria[0]);
    criterion_walsh_column(criteria[1]);
    criterion_ldm(criteria[2]);
    criterion_oracle_equivalence(criteria[3]);
    criterion_coefficient_oracle(criteria[4]);
    criterion_bound_soundness(criteria[5]);
    criterion_bench_desk_scale(criteria[6]);
    criterion_partition(criteria[7]);

    int failed = 0;
    for (const auto& c : criteria) {
        std::printf("[%s] criterion %d: %s", c.passed ? "PASS" : "FAIL", c.number, c.name.c_str());
        for (const auto& note : c.notes) std::printf(" | %s", note.c_str());
        std::printf("\n");
        if (!c.passed) ++failed;
    }
    if (failed != 0) std::printf("%d criterion(s) failed\n", failed);
    return failed;
}
