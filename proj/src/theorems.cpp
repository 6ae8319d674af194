// Q-dependent brackets, the anchor tables that partition hypothetical I(n)
// values, and the admissible parameters of I(n) = (q+s)/(q-1).
#include "opnlab/eulerian.hpp"

namespace opnlab {

namespace {

const Natural kSmallestEulerPrime = 5;

Rational ratio(const Integer& a, const Integer& b) { return make_rational(a, b); }

}  // namespace

Lemma3Bracket lemma3_bracket(const Natural& Q) {
    if (Q < kSmallestEulerPrime) throw std::domain_error("Q must be at least 5: no Euler prime lies below 5");
    Lemma3Bracket b;
    b.Q = Q;
    b.euler_prime_lower = ratio(Q + 1, Q);
    b.euler_factor_upper = ratio(5, 4);
    b.n_lower = BoundExpr::sqrt(ratio(8, 5));
    b.n_upper = ratio(2 * Q, Q + 1);
    b.n_upper_infimum = ratio(2 * kSmallestEulerPrime, kSmallestEulerPrime + 1);

    b.anchors_ordered = b.euler_prime_lower <= b.euler_factor_upper &&
                        compare(b.euler_factor_upper, b.n_lower) == Ordering::Less &&
                        compare(b.n_lower, b.n_upper) == Ordering::Less;
    bool at_infimum = b.n_upper == b.n_upper_infimum;
    b.endpoints_ok = b.n_upper_infimum <= b.n_upper && b.n_upper < 2 && (at_infimum == (Q == kSmallestEulerPrime));
    return b;
}

Theorem5Anchors theorem5_anchors(const Natural& q) {
    return Theorem5Anchors{q, ratio(q + 2, q), ratio(2 * q - 1, q), ratio(3 * q + 1, 2 * q),
                           ratio(3 * q - 1, 2 * q)};
}

Theorem5Table theorem5_analyze(const std::optional<Natural>& Q) {
    if (Q && *Q < kSmallestEulerPrime) throw std::domain_error("Q must be at least 5");
    Theorem5Table t;
    t.Q = Q;

    // Case A, lower branch: I(n) < (q+2)/q <= 7/5 squares to I(n^2) < 49/25,
    // and I(q^k) = 2 / I(n^2) then exceeds 50/49. q/(q-1) > a/b holds exactly
    // when q < a/(a-b).
    Theorem5Anchors smallest = theorem5_anchors(kSmallestEulerPrime);
    t.case_a_cap = smallest.case_a;
    Rational cap_squared = t.case_a_cap * t.case_a_cap;
    t.case_a_euler_floor = Rational(2) / cap_squared;
    Integer a = t.case_a_euler_floor.get_num();
    Integer b = t.case_a_euler_floor.get_den();
    Integer limit;
    mpz_cdiv_q(limit.get_mpz_t(), a.get_mpz_t(), Integer(a - b).get_mpz_t());
    t.case_a_prime_limit = limit;
    t.case_a_primes = primes_one_mod_four(t.case_a_prime_limit);

    t.case_c_cap = smallest.case_c;
    t.case_d_cap = ratio(3, 2);
    t.case_d_floor = smallest.case_d;

    if (Q) {
        t.case_a_upper_branch_floor = ratio(*Q + 2, *Q);
        t.case_b_cap = ratio(2 * *Q - 1, *Q);
        t.case_c_upper_branch_floor = ratio(3 * *Q + 1, 2 * *Q);
    }

    std::vector<Natural> primes = Q ? primes_one_mod_four(*Q + 1) : t.case_a_primes;
    bool contradictory = true;
    for (const auto& q : primes) {
        Theorem5Row row;
        row.anchors = theorem5_anchors(q);
        row.case_a_within_cap = row.anchors.case_a <= t.case_a_cap;
        row.case_b_vs_upper_bracket = compare(row.anchors.case_b, ratio(2 * q, q + 1));
        row.case_c_within_cap = row.anchors.case_c <= t.case_c_cap;
        row.case_d_within_range = t.case_d_floor <= row.anchors.case_d && row.anchors.case_d < t.case_d_cap;
        // 2q/(q+1) > (2q-1)/q would need 2q^2 > 2q^2 + q - 1.
        Natural lhs = 2 * q * q;
        Natural rhs = 2 * q * q + q - 1;
        contradictory = contradictory && !(lhs > rhs) && row.case_b_vs_upper_bracket == Ordering::Greater;
        t.rows.push_back(std::move(row));
    }
    t.case_b_upper_branch_contradictory = contradictory;
    return t;
}

Theorem6Admissible theorem6_admissible(const Natural& q) {
    if (!is_prime(q) || q % 4 != 1) throw std::invalid_argument("q must be a prime congruent to 1 (mod 4)");
    if (!q.fits_slong_p()) throw std::length_error("q too large to enumerate s");
    Theorem6Admissible out;
    out.q = q;
    long top = q.get_si() - 6;
    for (long s = 3; s <= top; s += 4) out.s_values.push_back(s);
    out.lower = ratio(q + 3, q - 1);
    out.upper = ratio(2 * q - 6, q - 1);
    out.contradiction = out.lower > out.upper || out.upper <= 1;
    return out;
}

}  // namespace opnlab
