#include "oracles.hpp"

#include "opnlab/eulerian.hpp"

#include <doctest.h>

#include <random>
#include <tuple>

using namespace opnlab;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

EulerianCandidate cand(long qv, long k, long n) { return validate(Natural(qv), Integer(k), Natural(n)); }

CandidateError error_of(long qv, long k, long n) {
    try {
        cand(qv, k, n);
    } catch (const InvalidCandidate& e) {
        return e.code();
    }
    FAIL("candidate accepted");
    return CandidateError::NotCoprime;
}

bool exact(const BoundExpr& e, const Rational& value) { return e.as_rational() == value; }

}  // namespace

TEST_SUITE("eulerian") {

TEST_CASE("validate examples") {
    auto c = cand(5, 1, 9);
    CHECK(c.euler_factor() == 5);
    CHECK(c.value() == 405);
    CHECK(c.sigma_euler() == 6);
    CHECK(c.sigma_n() == 13);
    CHECK(c.sorli());
    CHECK(c.size_order() == SizeOrder::EulerFactorBelowN);
    CHECK(c.has_flag(kFlagNAtMost1e375));
    CHECK(c.has_flag(kFlagNAtMost1e1500));
    CHECK(c.has_flag(kFlagNAtMost1e500));
    CHECK_FALSE(c.has_flag(kFlagNIsOne));

    CHECK(error_of(13, 2, 9) == CandidateError::ExponentNotOneModFour);
    CHECK(error_of(5, 1, 15) == CandidateError::NotCoprime);
    CHECK(error_of(7, 1, 9) == CandidateError::EulerPrimeNotOneModFour);
    CHECK(error_of(25, 1, 9) == CandidateError::EulerPrimeNotPrime);
    CHECK(error_of(5, 0, 9) == CandidateError::ExponentNotPositive);
    CHECK(error_of(5, 1, 0) == CandidateError::NonEulerPartZero);
    CHECK(error_of(5, 1, 6) == CandidateError::NonEulerPartEven);
    CHECK_THROWS_AS(validate(5, Integer(1), 9, ValidateOptions{true, {}}), InvalidCandidate);
}

TEST_CASE("n = 1 is flagged and rejected by the predicates") {
    auto c = cand(5, 1, 1);
    CHECK(c.has_flag(kFlagNIsOne));
    CHECK_THROWS_AS(theorem1_vector(c), std::invalid_argument);
    CHECK_THROWS_AS(audit(c), std::invalid_argument);
}

TEST_CASE("magnitude flags clear for large candidates") {
    Natural n;
    mpz_ui_pow_ui(n.get_mpz_t(), 3, 1600);
    auto c = validate(5, Integer(1), n);
    CHECK_FALSE(c.has_flag(kFlagNAtMost1e375));
    CHECK_FALSE(c.has_flag(kFlagNAtMost1e1500));
    CHECK_FALSE(c.has_flag(kFlagNAtMost1e500));
    CHECK(c.n_factorization().factors().size() == 1);
}

TEST_CASE("theorem1_vector examples") {
    auto a = theorem1_vector(cand(5, 1, 9));
    CHECK(a.conditions == std::array<bool, 4>{true, true, true, true});
    CHECK(a.hypothesis);
    CHECK(a.consistent);
    CHECK(exact(a.checks.at("cross_ratio").lhs, q(6, 9)));
    CHECK(exact(a.checks.at("cross_ratio").rhs, q(13, 5)));
    CHECK(exact(a.checks.at("size_sum_vs_sigma_ratio_sum").lhs, q(106, 45)));
    CHECK(exact(a.checks.at("size_sum_vs_sigma_ratio_sum").rhs, q(205, 78)));
    CHECK(a.checks.invariants_hold());

    auto b = theorem1_vector(cand(13, 1, 9));
    CHECK(b.conditions == std::array<bool, 4>{false, false, false, false});
    CHECK(b.hypothesis);
    CHECK(b.consistent);
    CHECK(exact(b.checks.at("size_sum_vs_sigma_ratio_sum").lhs, q(250, 117)));
    CHECK(exact(b.checks.at("size_sum_vs_sigma_ratio_sum").rhs, q(365, 182)));
    CHECK_FALSE(b.checks.at("forced_sigma_qk_lt_sigma_n").applicable);

    auto c = theorem1_vector(cand(5, 1, 3));
    CHECK(c.conditions == std::array<bool, 4>{false, false, false, false});
    CHECK(c.hypothesis);
    CHECK(c.consistent);
}

TEST_CASE("remark_chains examples") {
    auto a = remark_chains(cand(5, 1, 9));
    CHECK(a.at("size_sum_lt_sigma_ratio_sum").holds());
    CHECK(a.at("sigma_ratio_sum_lt_cross_sum").holds());
    // 6/9 + 13/5 is 49/15.
    CHECK(exact(a.at("sigma_ratio_sum_lt_cross_sum").rhs, q(6, 9) + q(13, 5)));
    CHECK(exact(a.at("sigma_ratio_sum_lt_cross_sum").rhs, q(49, 15)));
    CHECK(a.violations().empty());

    auto b = remark_chains(cand(13, 1, 9));
    CHECK(exact(b.at("sigma_ratio_sum_lt_size_sum").lhs, q(365, 182)));
    CHECK(exact(b.at("size_sum_lt_cross_sum").rhs, q(14, 9) + 1));
    CHECK(b.violations().empty());

    auto c = remark_chains(cand(5, 5, 6561));
    CHECK(c.find("sigma_ratio_sum_lt_abundancy_sum") != nullptr);
    CHECK(c.find("abundancy_sum_lt_cross_sum") != nullptr);
    CHECK(c.at("abundancy_sum_identity").verdict == Ordering::Equal);
    CHECK(c.at("cross_sum_identity").verdict == Ordering::Equal);
    CHECK(c.invariants_hold());
}

TEST_CASE("classify_case examples") {
    auto a = classify_case(cand(5, 1, 9));
    CHECK(a.theorem2_case == 1);
    CHECK(a.chain_checks.violations().empty());
    CHECK(exact(a.chain_checks.at("sigma_q_lt_n").lhs, 6));

    auto b = classify_case(cand(13, 1, 3));
    CHECK(b.theorem2_case == 3);
    CHECK(b.chain_checks.violations().empty());
    CHECK(exact(b.chain_checks.at("sigma_n_lt_q").lhs, 4));

    auto c = classify_case(cand(5, 5, 9));
    CHECK(c.theorem2_case == 4);
    CHECK(c.chain_checks.at("sigma_n_lt_sigma_qk").holds());
    CHECK_FALSE(c.chain_checks.at("qk_lt_sigma_n").holds());
    CHECK(exact(c.chain_checks.at("qk_lt_sigma_n").lhs, 3125));
    CHECK(exact(c.chain_checks.at("qk_lt_sigma_n").rhs, 13));
    CHECK(c.chain_checks.invariants_hold());

    auto d = classify_case(cand(5, 5, 6561));
    CHECK(d.theorem2_case == 2);
}

TEST_CASE("corollary_bounds examples") {
    auto a = corollary_bounds(cand(5, 1, 9));
    CHECK(a.bounds.at("sigma_q_over_n_gt_1_2").holds());
    CHECK(a.bounds.at("sigma_q_over_n_lt_1").holds());
    CHECK(a.bounds.at("sigma_n_over_q_gt_sqrt_5_3").holds());
    CHECK(a.bounds.at("sigma_n_over_q_lt_4").holds());
    CHECK(a.conjecture1.q_below_n_case);
    CHECK_FALSE(a.conjecture1.q_divides_sigma_n);
    CHECK(a.conjecture1.conjecture_consistent);

    auto b = corollary_bounds(cand(13, 1, 3));
    const auto& low = b.bounds.at("sigma_n_over_q_gt_sqrt_1_3");
    CHECK(exact(low.lhs, q(4, 13)));
    CHECK(low.verdict == Ordering::Less);
    CHECK_FALSE(low.holds());
    CHECK(b.conjecture1.n_below_q_case);

    for (auto [qv, k, n] : {std::tuple{5L, 1L, 9L}, {13L, 1L, 3L}, {5L, 5L, 9L}, {17L, 9L, 81L}}) {
        auto r = corollary_bounds(cand(qv, k, n));
        CHECK(r.bounds.at("abundancy_qk_vs_qk_over_n").verdict != Ordering::Equal);
        CHECK(r.bounds.at("n_sigma_qk_vs_q_2k").verdict != Ordering::Equal);
    }
}

TEST_CASE("divisibility observations are recorded") {
    // 13 | sigma(n) for n = 3^2 * 7: sigma = 13 * 8.
    auto a = corollary_bounds(cand(13, 1, 63));
    CHECK(a.conjecture1.q_below_n_case);
    CHECK(a.conjecture1.q_divides_sigma_n);
    CHECK(a.conjecture1.sigma_n_over_q == Natural(8));
    CHECK_FALSE(a.conjecture1.quotient_in_two_three);
    CHECK_FALSE(a.conjecture1.conjecture_consistent);
    // n = 7 divides sigma(13) = 14, quotient 2.
    auto b = corollary_bounds(cand(13, 1, 7));
    CHECK(b.conjecture1.n_below_q_case);
    CHECK(b.conjecture1.n_divides_sigma_q);
    CHECK(b.conjecture1.quotient_is_two);
}

TEST_CASE("lemma_sums examples") {
    auto a = lemma_sums(cand(5, 5, 6561));
    CHECK(a.s2 == q(3125, 6561) + q(6561, 3125));
    const auto& s2 = a.checks.at("s2_lt_41_20");
    CHECK(s2.applicable);
    CHECK_FALSE(s2.holds());

    auto b = lemma_sums(cand(5, 1, 9));
    CHECK(b.s1 == q(49, 15));
    const auto& upper = b.checks.at("s1_lt_3");
    CHECK_FALSE(upper.holds());
    CHECK_FALSE(upper.applicable);
    CHECK(b.checks.at("geometric_mean_vs_s1").verdict == Ordering::Less);
    CHECK(b.checks.invariants_hold());
}

TEST_CASE("audit aggregates every section") {
    auto r = audit(cand(5, 1, 9));
    REQUIRE(r.theorem1);
    REQUIRE(r.chains);
    REQUIRE(r.cases);
    REQUIRE(r.corollaries);
    REQUIRE(r.lemmas);
    CHECK(r.broken_invariant_count() == 0);
    // s2 = 106/45 exceeds 3/sqrt(2) for this non-perfect candidate.
    CHECK(r.violation_count() == 1);

    auto only = audit(cand(5, 1, 9), AuditSelection{true, false, false, false, false});
    CHECK(only.theorem1);
    CHECK_FALSE(only.chains);
    CHECK_FALSE(only.lemmas);
}

TEST_CASE("unconditional checks hold on random candidates") {
    std::mt19937_64 rng(21);
    auto primes = oracle::euler_primes(200);
    for (int i = 0; i < 300; ++i) {
        long qv = static_cast<long>(primes[rng() % primes.size()]);
        long k = 1 + 4 * static_cast<long>(rng() % 3);
        long n = 2 * static_cast<long>(rng() % 500000) + 3;
        if (n % qv == 0) n += 2;
        auto r = audit(cand(qv, k, n));
        REQUIRE_MESSAGE(r.broken_invariant_count() == 0, qv, "^", k, " n=", n);
    }
}

}

TEST_SUITE("theorems") {

TEST_CASE("lemma3_bracket examples") {
    auto a = lemma3_bracket(5);
    CHECK(a.euler_prime_lower == q(6, 5));
    CHECK(a.euler_factor_upper == q(5, 4));
    CHECK(a.n_lower == BoundExpr::sqrt(q(8, 5)));
    CHECK(a.n_upper == q(5, 3));
    CHECK(a.n_upper_infimum == q(5, 3));
    CHECK(a.anchors_ordered);
    CHECK(a.endpoints_ok);

    auto b = lemma3_bracket(13);
    CHECK(b.euler_prime_lower == q(14, 13));
    CHECK(b.n_upper == q(13, 7));
    CHECK(b.anchors_ordered);
    CHECK(b.endpoints_ok);
    CHECK_THROWS_AS(lemma3_bracket(4), std::domain_error);

    for (long Q = 5; Q < 400; ++Q) {
        auto lo = lemma3_bracket(Q);
        auto hi = lemma3_bracket(Q + 1);
        CHECK(hi.euler_prime_lower < lo.euler_prime_lower);
        CHECK(hi.n_upper > lo.n_upper);
    }
}

TEST_CASE("theorem5_analyze examples") {
    auto t = theorem5_analyze(std::nullopt);
    std::vector<long> primes;
    for (const auto& p : t.case_a_primes) primes.push_back(p.get_si());
    CHECK(primes == std::vector<long>{5, 13, 17, 29, 37, 41});
    CHECK(t.case_a_cap == q(7, 5));
    CHECK(t.case_a_euler_floor == q(50, 49));
    CHECK(t.case_a_prime_limit == 50);
    CHECK(t.case_b_upper_branch_contradictory);

    auto five = theorem5_anchors(5);
    CHECK(five.case_a == q(7, 5));
    CHECK(five.case_b == q(9, 5));
    CHECK(five.case_c == q(8, 5));
    CHECK(five.case_d == q(7, 5));

    for (const auto& row : t.rows) {
        long p = row.anchors.q.get_si();
        if (p == 5 || p == 13 || p == 17) CHECK(row.case_b_vs_upper_bracket == Ordering::Greater);
    }
    auto with_q = theorem5_analyze(Natural(13));
    REQUIRE(with_q.case_b_cap);
    CHECK(*with_q.case_b_cap == q(25, 13));
    CHECK_THROWS_AS(theorem5_analyze(Natural(3)), std::domain_error);
}

TEST_CASE("theorem6_admissible examples") {
    auto five = theorem6_admissible(5);
    CHECK(five.s_values.empty());
    CHECK(five.lower == 2);
    CHECK(five.upper == 1);
    CHECK(five.contradiction);

    auto thirteen = theorem6_admissible(13);
    CHECK(thirteen.s_values == std::vector<long>{3, 7});
    CHECK(thirteen.lower == q(4, 3));
    CHECK(thirteen.upper == q(5, 3));
    CHECK_FALSE(thirteen.contradiction);

    auto t37 = theorem6_admissible(37);
    CHECK(t37.s_values == std::vector<long>{3, 7, 11, 15, 19, 23, 27, 31});
    CHECK(t37.lower == q(10, 9));
    CHECK(t37.upper == q(17, 9));
    CHECK_THROWS_AS(theorem6_admissible(7), std::invalid_argument);
    CHECK_THROWS_AS(theorem6_admissible(9), std::invalid_argument);
}

TEST_CASE("theorem1_grid is split-independent and clean") {
    auto one = theorem1_grid(2000, 2000, 1);
    auto three = theorem1_grid(2000, 2000, 3);
    CHECK(one == three);
    CHECK(one.candidates > 0);
    CHECK(one.forced_violations == 0);
    CHECK(one.transfer_violations == 0);

    // Brute-force recount of the grid size.
    std::uint64_t count = 0;
    for (std::uint64_t p : oracle::euler_primes(2000)) {
        for (std::uint64_t pk = p, k = 1; pk <= 2000; ++k, pk *= p) {
            if (k % 4 != 1) continue;
            for (std::uint64_t n = 3; n <= 2000; n += 2) {
                if (n % p != 0) ++count;
            }
        }
    }
    CHECK(one.candidates == count);
}

}
