#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "anfnl/coefficients.hpp"
#include "anfnl/random.hpp"
#include "anfnl/truth_table.hpp"

using namespace anfnl;

namespace {

std::map<Mask, i128> as_map(const std::vector<CombinedCoefficient>& v) {
    std::map<Mask, i128> m;
    for (const auto& cc : v) m.emplace(cc.mask, cc.c);
    return m;
}

std::map<Mask, i128> beta_map(const DistanceProblem& pb) {
    std::map<Mask, i128> m;
    for (const auto& t : pb.terms) m.emplace(t.mask, t.beta);
    return m;
}

const std::vector<Mask> kExampleMasks{17, 3, 28, 26, 31};

}  // namespace

TEST_CASE("calc_coef reproduces the worked-example coefficient set") {
    auto got = as_map(calc_coef(kExampleMasks));
    std::map<Mask, i128> want{{3, 1}, {17, 1}, {26, 1}, {28, 1}, {19, -2}, {29, -2}, {30, -2}, {31, 3}};
    CHECK(got == want);
    // the three products meeting at mask 27 cancel (-2, -2, +4): no entry survives
    CHECK_FALSE(got.contains(27));
}

TEST_CASE("calc_coef small cases") {
    auto single = as_map(calc_coef(std::vector<Mask>{16}));
    CHECK(single == std::map<Mask, i128>{{16, 1}});

    auto pair = as_map(calc_coef(std::vector<Mask>{16, 8}));
    CHECK(pair == std::map<Mask, i128>{{16, 1}, {8, 1}, {24, -2}});
}

TEST_CASE("calc_coef rejects bad monomial lists") {
    CHECK_THROWS_AS(calc_coef(std::vector<Mask>{0}), std::invalid_argument);
    CHECK_THROWS_AS(calc_coef(std::vector<Mask>{5, 5}), std::invalid_argument);
}

TEST_CASE("brute_force_coef golden values") {
    CHECK(as_map(brute_force_coef(kExampleMasks)) == as_map(calc_coef(kExampleMasks)));
    CHECK(as_map(brute_force_coef(std::vector<Mask>{3, 5})) ==
          std::map<Mask, i128>{{3, 1}, {5, 1}, {7, -2}});
    // a ⪯ b folds the pair term into b: C_b = 1 - 2 = -1
    CHECK(as_map(brute_force_coef(std::vector<Mask>{4, 6})) == std::map<Mask, i128>{{4, 1}, {6, -1}});
    std::vector<Mask> too_many(21, 0);
    CHECK_THROWS_AS(brute_force_coef(too_many), std::invalid_argument);
}

TEST_CASE("calc_coef equals the subset-sum oracle on random instances") {
    std::mt19937_64 rng(0xACE5);
    for (int round = 0; round < 200; ++round) {
        int n = 2 + static_cast<int>(rng() % 15);
        int max_p = std::min<int>(15, static_cast<int>(full_mask(n)));
        int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_p));
        AnfFunction f = gen_random_anf(n, p, 0.5, rng());
        auto fast = calc_coef(f.monomials);
        CHECK(as_map(fast) == as_map(brute_force_coef(f.monomials)));

        std::set<Mask> inputs(f.monomials.begin(), f.monomials.end());
        CHECK(fast.size() >= f.monomials.size());
        for (const auto& cc : fast) {
            CHECK(cc.c != 0);
            // parity: odd exactly on input monomials
            CHECK(((cc.c % 2) != 0) == inputs.contains(cc.mask));
            // closure: every mask is the union of the inputs below it
            Mask reachable = 0;
            for (Mask m : f.monomials)
                if (is_subvector(m, cc.mask)) reachable |= m;
            CHECK(reachable == cc.mask);
        }
    }
}

TEST_CASE("coefficient map is independent of monomial input order") {
    std::mt19937_64 rng(0x0DDE);
    for (int round = 0; round < 50; ++round) {
        int n = 3 + static_cast<int>(rng() % 10);
        int max_p = std::min<int>(10, static_cast<int>(full_mask(n)));
        AnfFunction f = gen_random_anf(n, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_p)),
                                       0.5, rng());
        auto base = as_map(calc_coef(f.monomials));
        std::vector<Mask> shuffled = f.monomials;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(as_map(calc_coef(shuffled)) == base);
    }
}

TEST_CASE("build_problem reproduces the worked-example betas and weight") {
    AnfFunction f;
    f.n = 5;
    f.monomials = kExampleMasks;

    DistanceProblem pb = build_problem(f, OrderStrategy::Input);
    std::map<Mask, i128> want{{3, 8}, {17, 8}, {26, 4}, {28, 4}, {19, -8}, {29, -4}, {30, -4}, {31, 3}};
    CHECK(beta_map(pb) == want);
    CHECK(pb.weight == 11);
    // input order: the monomials as given, then derived unions as created
    std::vector<Mask> order;
    for (const auto& t : pb.terms) order.push_back(t.mask);
    CHECK(order == std::vector<Mask>{17, 3, 28, 26, 31, 19, 29, 30});

    DistanceProblem sorted = build_problem(f, OrderStrategy::AbsDesc);
    CHECK(beta_map(sorted) == want);
    CHECK(sorted.weight == 11);
    order.clear();
    for (const auto& t : sorted.terms) order.push_back(t.mask);
    CHECK(order == std::vector<Mask>{3, 17, 19, 26, 28, 29, 30, 31});
}

TEST_CASE("build_problem on linear and two-term functions") {
    DistanceProblem single = build_problem(parse_anf("x1", 5));
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].mask == 16);
    CHECK(single.terms[0].beta == 16);
    CHECK(single.weight == 16);

    AnfFunction f;
    f.n = 5;
    f.monomials = {16, 8};
    DistanceProblem pb = build_problem(f);
    CHECK(beta_map(pb) == std::map<Mask, i128>{{16, 16}, {8, 16}, {24, -16}});
    CHECK(pb.weight == 16);
    CHECK(pb.weight == static_cast<i128>(table_weight(truth_table(parse_anf("x1 + x2", 5)))));
}

TEST_CASE("build_problem adjusts the weight of complemented functions") {
    AnfFunction f = parse_anf("x1x2 + 1", 4);
    DistanceProblem pb = build_problem(f);
    CHECK(pb.complemented);
    CHECK(pb.weight == 16 - 4);
    CHECK(pb.weight == static_cast<i128>(table_weight(truth_table(f))));
}

TEST_CASE("suffix bound tables sum the positive and negative betas") {
    AnfFunction f;
    f.n = 5;
    f.monomials = kExampleMasks;
    DistanceProblem pb = build_problem(f, OrderStrategy::Input);
    const std::size_t k = pb.terms.size();
    CHECK(pb.suffix_max.size() == k + 1);
    CHECK(pb.suffix_max[k] == 0);
    CHECK(pb.suffix_min[k] == 0);
    for (std::size_t i = 0; i < k; ++i) {
        i128 mx = 0, mn = 0;
        for (std::size_t j = i; j < k; ++j) {
            if (pb.terms[j].beta > 0) mx += pb.terms[j].beta;
            if (pb.terms[j].beta < 0) mn += pb.terms[j].beta;
        }
        CHECK(pb.suffix_max[i] == mx);
        CHECK(pb.suffix_min[i] == mn);
    }
}

TEST_CASE("weight identity against the truth-table oracle") {
    std::mt19937_64 rng(0x77E1);
    for (int round = 0; round < 120; ++round) {
        int n = 2 + static_cast<int>(rng() % 13);
        int max_p = std::min<int>(12, static_cast<int>(full_mask(n)));
        AnfFunction f = gen_random_anf(n, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_p)),
                                       0.5, rng());
        f.complemented = (rng() & 1) != 0;
        DistanceProblem pb = build_problem(f);
        CHECK(pb.weight == static_cast<i128>(table_weight(truth_table(f))));
    }
}

TEST_CASE("expected_coefficient_count matches hand evaluations") {
    CHECK(expected_coefficient_count(5, 10, 1.0) == doctest::Approx(0.0));
    CHECK(expected_coefficient_count(2, 1, 0.5) == doctest::Approx(1.5));
    // p beyond n contributes nothing once binom(n,k) runs out
    CHECK(expected_coefficient_count(3, 10, 0.5) ==
          doctest::Approx(expected_coefficient_count(3, 3, 0.5)));
    CHECK_THROWS_AS(expected_coefficient_count(3, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(expected_coefficient_count(3, 3, 1.5), std::invalid_argument);
}

TEST_CASE("checked 128-bit arithmetic reports overflow instead of wrapping") {
    CHECK_THROWS_AS(checked_mul(pow2_i128(100), pow2_i128(100)), std::overflow_error);
    CHECK_THROWS_AS(checked_add(pow2_i128(126), pow2_i128(126)), std::overflow_error);
    CHECK(to_string(i128_from_string("-170141183460469231731687303715884105728")) ==
          "-170141183460469231731687303715884105728");
    CHECK_THROWS_AS(i128_from_string("170141183460469231731687303715884105728"), std::overflow_error);
}
