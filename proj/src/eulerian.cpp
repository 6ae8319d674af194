#include "opnlab/eulerian.hpp"

#include <algorithm>

namespace opnlab {

std::string_view to_string(CandidateError e) noexcept {
    switch (e) {
        case CandidateError::ExponentNotPositive: return "exponent_not_positive";
        case CandidateError::ExponentTooLarge: return "exponent_too_large";
        case CandidateError::EulerPrimeNotPrime: return "q_not_prime";
        case CandidateError::EulerPrimeNotOneModFour: return "q_not_1_mod_4";
        case CandidateError::ExponentNotOneModFour: return "k_not_1_mod_4";
        case CandidateError::NonEulerPartZero: return "n_not_positive";
        case CandidateError::NonEulerPartEven: return "n_even";
        case CandidateError::NotCoprime: return "gcd_q_n_not_1";
        case CandidateError::BelowMagnitudeBound: return "below_magnitude_bound";
    }
    return "?";
}

std::string_view to_string(SizeOrder s) noexcept {
    return s == SizeOrder::EulerFactorBelowN ? "qk_less_n" : "n_less_qk";
}

std::string_view to_string(Relation r) noexcept {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Greater: return ">";
        case Relation::GreaterEqual: return ">=";
        case Relation::Equal: return "=";
        case Relation::NotEqual: return "!=";
    }
    return "?";
}

bool satisfied(Relation r, Ordering o) noexcept {
    switch (r) {
        case Relation::Less: return o == Ordering::Less;
        case Relation::LessEqual: return o != Ordering::Greater;
        case Relation::Greater: return o == Ordering::Greater;
        case Relation::GreaterEqual: return o != Ordering::Less;
        case Relation::Equal: return o == Ordering::Equal;
        case Relation::NotEqual: return o != Ordering::Equal;
    }
    return false;
}

InequalityCheck& InequalityReport::add(std::string id, BoundExpr lhs, BoundExpr rhs, Relation claimed,
                                       bool applicable, bool unconditional) {
    InequalityCheck check;
    check.id = std::move(id);
    check.verdict = compare(lhs, rhs);
    check.lhs = std::move(lhs);
    check.rhs = std::move(rhs);
    check.claimed = claimed;
    check.applicable = applicable;
    check.unconditional = unconditional;
    checks.push_back(std::move(check));
    return checks.back();
}

const InequalityCheck* InequalityReport::find(std::string_view id) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const InequalityCheck& c) { return c.id == id; });
    return it == checks.end() ? nullptr : &*it;
}

const InequalityCheck& InequalityReport::at(std::string_view id) const {
    if (const auto* c = find(id)) return *c;
    throw std::out_of_range("no check named '" + std::string(id) + "'");
}

std::vector<const InequalityCheck*> InequalityReport::violations() const {
    std::vector<const InequalityCheck*> out;
    for (const auto& c : checks) {
        if (c.applicable && !c.holds()) out.push_back(&c);
    }
    return out;
}

bool InequalityReport::invariants_hold() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const InequalityCheck& c) { return c.invariant_broken(); });
}

bool EulerianCandidate::has_flag(std::string_view flag) const {
    return std::find(flags_.begin(), flags_.end(), flag) != flags_.end();
}

void EulerianCandidate::require_nontrivial() const {
    if (n_ == 1) throw std::invalid_argument("predicate requires n > 1 (n = 1 makes N a deficient prime power)");
}

namespace {

Natural power_of_ten(unsigned long e) {
    Natural out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
    return out;
}

const Natural& ten_375() {
    static const Natural v = power_of_ten(375);
    return v;
}
const Natural& ten_500() {
    static const Natural v = power_of_ten(500);
    return v;
}
const Natural& ten_1500() {
    static const Natural v = power_of_ten(1500);
    return v;
}

Rational ratio(const Natural& a, const Natural& b) { return make_rational(a, b); }
Rational ratio(long a, long b) { return make_rational(a, b); }

}  // namespace

struct CandidateBuilder {
    static EulerianCandidate build(const Natural& q, unsigned long k, const Natural& n,
                                   const ValidateOptions& options) {
        EulerianCandidate c;
        c.q_ = q;
        c.k_ = k;
        c.n_ = n;
        mpz_pow_ui(c.euler_factor_.get_mpz_t(), q.get_mpz_t(), k);
        c.euler_factorization_ = Factorization::prime_power(q, k);
        c.n_factorization_ = factor(n, options.factoring);
        c.sigma_euler_ = sigma(c.euler_factorization_);
        c.sigma_n_ = sigma(c.n_factorization_);
        c.size_order_ = c.euler_factor_ < n ? SizeOrder::EulerFactorBelowN : SizeOrder::NBelowEulerFactor;

        if (n == 1) c.flags_.emplace_back(kFlagNIsOne);
        if (n <= ten_375()) c.flags_.emplace_back(kFlagNAtMost1e375);
        if (c.value() <= ten_1500()) c.flags_.emplace_back(kFlagNAtMost1e1500);
        if (c.size_order_ == SizeOrder::NBelowEulerFactor && c.euler_factor_ <= ten_500()) {
            c.flags_.emplace_back(kFlagEulerFactorAtMost1e500);
        }
        if (c.size_order_ == SizeOrder::EulerFactorBelowN && n <= ten_500()) {
            c.flags_.emplace_back(kFlagNAtMost1e500);
        }
        return c;
    }
};

EulerianCandidate validate(const Natural& q, const Integer& k, const Natural& n, const ValidateOptions& options) {
    auto fail = [](CandidateError code, const std::string& what) { throw InvalidCandidate(code, what); };
    if (k < 1) fail(CandidateError::ExponentNotPositive, "k must be a positive integer");
    if (k > kMaxExponent) fail(CandidateError::ExponentTooLarge, "k exceeds " + std::to_string(kMaxExponent));
    if (!is_prime(q)) fail(CandidateError::EulerPrimeNotPrime, "q = " + to_string(q) + " is not prime");
    if (q % 4 != 1) fail(CandidateError::EulerPrimeNotOneModFour, "q = " + to_string(q) + " is not 1 (mod 4)");
    if (k % 4 != 1) fail(CandidateError::ExponentNotOneModFour, "k = " + to_string(k) + " is not 1 (mod 4)");
    if (n < 1) fail(CandidateError::NonEulerPartZero, "n must be positive");
    if (n % 2 == 0) fail(CandidateError::NonEulerPartEven, "n = " + to_string(n) + " is even");
    Natural g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    if (g != 1) fail(CandidateError::NotCoprime, "gcd(q, n) = " + to_string(g) + " != 1");

    EulerianCandidate c = CandidateBuilder::build(q, k.get_ui(), n, options);
    if (options.strict_magnitude && (c.has_flag(kFlagNAtMost1e375) || c.has_flag(kFlagNAtMost1e1500))) {
        fail(CandidateError::BelowMagnitudeBound, "n <= 10^375 or N <= 10^1500");
    }
    return c;
}

Theorem1Report theorem1_vector(const EulerianCandidate& c) {
    c.require_nontrivial();
    const Natural& qk = c.euler_factor();
    const Natural& n = c.n();
    const Natural& sq = c.sigma_euler();
    const Natural& sn = c.sigma_n();

    Theorem1Report report;
    auto& checks = report.checks;
    bool below = c.size_order() == SizeOrder::EulerFactorBelowN;
    Relation direction = below ? Relation::Less : Relation::Greater;

    checks.add("qk_vs_n", Rational(qk), Rational(n), direction, true, true);
    checks.add("sigma_qk_vs_sigma_n", Rational(sq), Rational(sn), direction);
    checks.add("cross_ratio", ratio(sq, n), ratio(sn, qk), direction);
    checks.add("size_sum_vs_sigma_ratio_sum", ratio(qk, n) + ratio(n, qk), ratio(sq, sn) + ratio(sn, sq), direction);
    for (std::size_t i = 0; i < 4; ++i) report.conditions[i] = checks.checks[i].verdict == Ordering::Less;
    report.consistent = std::all_of(report.conditions.begin(), report.conditions.end(),
                                    [&](bool v) { return v == report.conditions[0]; });

    const auto& h = checks.add("abundancy_qk_lt_abundancy_n", c.abundancy_euler(), c.abundancy_n(), Relation::Less);
    report.hypothesis = h.verdict == Ordering::Less;

    // These follow from the hypothesis alone, perfect or not.
    bool premise = report.hypothesis && below;
    checks.add("forced_sigma_qk_lt_sigma_n", Rational(sq), Rational(sn), Relation::Less, premise, true);
    checks.add("forced_product", Rational(qk * sq), Rational(n * sn), Relation::Less, premise, true);
    checks.add("ratio_transfer", ratio(sq, sn), ratio(qk, n), report.hypothesis ? Relation::Less : Relation::GreaterEqual,
               true, true);
    return report;
}

InequalityReport remark_chains(const EulerianCandidate& c) {
    c.require_nontrivial();
    const Natural& qk = c.euler_factor();
    const Natural& n = c.n();
    const Natural& sq = c.sigma_euler();
    const Natural& sn = c.sigma_n();

    Rational size_sum = ratio(qk, n) + ratio(n, qk);
    Rational sigma_ratio_sum = ratio(sq, sn) + ratio(sn, sq);
    Rational cross_sum = ratio(sq, n) + ratio(sn, qk);
    Rational abundancy_sum = ratio(sq, qk) + ratio(sn, n);

    InequalityReport r;
    if (c.size_order() == SizeOrder::EulerFactorBelowN) {
        r.add("size_sum_lt_sigma_ratio_sum", size_sum, sigma_ratio_sum, Relation::Less);
        if (c.sorli()) {
            r.add("sigma_ratio_sum_lt_cross_sum", sigma_ratio_sum, cross_sum, Relation::Less);
        } else {
            r.add("sigma_ratio_sum_lt_abundancy_sum", sigma_ratio_sum, abundancy_sum, Relation::Less);
            r.add("abundancy_sum_lt_cross_sum", abundancy_sum, cross_sum, Relation::Less);
        }
    } else {
        r.add("sigma_ratio_sum_lt_size_sum", sigma_ratio_sum, size_sum, Relation::Less);
        if (c.sorli()) {
            r.add("size_sum_lt_cross_sum", size_sum, cross_sum, Relation::Less);
        } else {
            r.add("size_sum_lt_abundancy_sum", size_sum, abundancy_sum, Relation::Less);
            r.add("abundancy_sum_le_cross_sum", abundancy_sum, cross_sum, Relation::LessEqual);
        }
    }
    // Identities, each evaluated along a second route.
    Rational via_factorizations = abundancy(c.euler_factorization()) + abundancy(c.n_factorization());
    r.add("abundancy_sum_identity", abundancy_sum, via_factorizations, Relation::Equal, true, true);
    Rational weighted = ratio(qk, n) * c.abundancy_euler() + ratio(n, qk) * c.abundancy_n();
    r.add("cross_sum_identity", cross_sum, weighted, Relation::Equal, true, true);
    return r;
}

CaseReport classify_case(const EulerianCandidate& c) {
    c.require_nontrivial();
    const Natural& q = c.q();
    const Natural& qk = c.euler_factor();
    const Natural& n = c.n();
    const Natural& sq = c.sigma_euler();
    const Natural& sn = c.sigma_n();
    auto R = [](const Natural& v) { return Rational(v); };

    CaseReport report;
    report.sorli_k_equals_1 = c.sorli();
    report.size_order = c.size_order();
    bool below = c.size_order() == SizeOrder::EulerFactorBelowN;
    auto& chain = report.chain_checks;

    if (c.sorli() && below) {
        report.theorem2_case = 1;
        chain.add("sigma_q_eq_q_plus_1", R(sq), R(q + 1), Relation::Equal, true, true);
        chain.add("q_lt_sigma_q", R(q), R(sq), Relation::Less, true, true);
        chain.add("sigma_q_lt_n", R(sq), R(n), Relation::Less);
        chain.add("n_lt_sigma_n", R(n), R(sn), Relation::Less, true, true);
    } else if (!c.sorli() && below) {
        report.theorem2_case = 2;
        chain.add("q_lt_qk", R(q), R(qk), Relation::Less, true, true);
        chain.add("qk_lt_n", R(qk), R(n), Relation::Less, true, true);
        chain.add("n_lt_sigma_qk", R(n), R(sq), Relation::Less);
        chain.add("sigma_qk_lt_sigma_n", R(sq), R(sn), Relation::Less);
    } else if (c.sorli()) {
        report.theorem2_case = 3;
        chain.add("n_lt_sigma_n", R(n), R(sn), Relation::Less, true, true);
        chain.add("sigma_n_lt_q", R(sn), R(q), Relation::Less);
        chain.add("q_lt_sigma_q", R(q), R(sq), Relation::Less, true, true);
        chain.add("sigma_q_eq_q_plus_1", R(sq), R(q + 1), Relation::Equal, true, true);
    } else {
        report.theorem2_case = 4;
        chain.add("q_lt_n", R(q), R(n), Relation::Less);
        chain.add("n_lt_qk", R(n), R(qk), Relation::Less, true, true);
        chain.add("qk_lt_sigma_n", R(qk), R(sn), Relation::Less);
        chain.add("sigma_n_lt_sigma_qk", R(sn), R(sq), Relation::Less);
    }
    if (qk == n) throw std::logic_error("q^k = n is impossible for a valid candidate");

    for (const auto& f : c.flags()) {
        if (f != kFlagNIsOne) report.magnitude_flags.push_back(f);
    }
    return report;
}

CorollaryReport corollary_bounds(const EulerianCandidate& c) {
    c.require_nontrivial();
    const Natural& q = c.q();
    const Natural& qk = c.euler_factor();
    const Natural& n = c.n();
    const Natural& sq = c.sigma_euler();
    const Natural& sn = c.sigma_n();
    Rational cross_euler = ratio(sq, n);  // sigma(q^k)/n
    Rational cross_n = ratio(sn, qk);     // sigma(n)/q^k
    bool below = c.size_order() == SizeOrder::EulerFactorBelowN;

    CorollaryReport report;
    auto& b = report.bounds;
    const BoundExpr sqrt_8_5 = BoundExpr::sqrt(ratio(8, 5));
    if (!c.sorli()) {
        b.add("five_quarters_lt_sqrt_8_5", ratio(5, 4), sqrt_8_5, Relation::Less, true, true);
        const Rational& small = below ? cross_euler : cross_n;
        const Rational& large = below ? cross_n : cross_euler;
        std::string small_id = below ? "sigma_qk_over_n" : "sigma_n_over_qk";
        std::string large_id = below ? "sigma_n_over_qk" : "sigma_qk_over_n";
        b.add(small_id + "_gt_1", small, 1, Relation::Greater);
        b.add(small_id + "_lt_5_4", small, ratio(5, 4), Relation::Less);
        b.add(large_id + "_gt_sqrt_8_5", large, sqrt_8_5, Relation::Greater);
        b.add(large_id + "_lt_2", large, 2, Relation::Less);
    } else if (below) {
        b.add("sigma_q_over_n_gt_1_2", cross_euler, ratio(1, 2), Relation::Greater);
        b.add("sigma_q_over_n_lt_1", cross_euler, 1, Relation::Less);
        b.add("sigma_n_over_q_gt_sqrt_5_3", cross_n, BoundExpr::sqrt(ratio(5, 3)), Relation::Greater);
        b.add("sigma_n_over_q_lt_4", cross_n, 4, Relation::Less);
    } else {
        b.add("sigma_n_over_q_gt_sqrt_1_3", cross_n, BoundExpr::sqrt(ratio(1, 3)), Relation::Greater);
        b.add("sigma_n_over_q_lt_1", cross_n, 1, Relation::Less);
        b.add("sigma_q_over_n_gt_sqrt_5_3", cross_euler, BoundExpr::sqrt(ratio(5, 3)), Relation::Greater);
        b.add("sigma_q_over_n_lt_2_sqrt_3", cross_euler, BoundExpr::radical(2, 3, 2), Relation::Less);
    }
    if (c.sorli()) {
        b.add("q_lt_n_sqrt_3", Rational(q), BoundExpr::radical(Rational(n), 3, 2), Relation::Less);
    }

    // Equality would need n sigma(q^k) = q^(2k), even against odd.
    Rational size_ratio = ratio(qk, n);
    b.add("abundancy_qk_vs_qk_over_n", c.abundancy_euler(), size_ratio, Relation::NotEqual, true, true);
    b.add("n_sigma_qk_vs_q_2k", Rational(n * sq), Rational(qk * qk), Relation::NotEqual, true, true);
    if (!below && !c.sorli()) {
        bool premise = size_ratio < c.abundancy_euler();
        b.add("qk_over_n_lt_5_4", size_ratio, ratio(5, 4), Relation::Less, premise);
        b.add("n_over_qk_gt_4_5", ratio(n, qk), ratio(4, 5), Relation::Greater, premise);
    }

    auto& obs = report.conjecture1;
    obs.q_below_n_case = c.sorli() && below;
    obs.n_below_q_case = c.sorli() && !below;
    obs.q_divides_sigma_n = mpz_divisible_p(sn.get_mpz_t(), q.get_mpz_t()) != 0;
    if (obs.q_divides_sigma_n) {
        Natural quotient = sn / q;
        obs.quotient_in_two_three = quotient == 2 || quotient == 3;
        obs.sigma_n_over_q = std::move(quotient);
    }
    Natural sigma_q = q + 1;
    obs.n_divides_sigma_q = mpz_divisible_p(sigma_q.get_mpz_t(), n.get_mpz_t()) != 0;
    if (obs.n_divides_sigma_q) {
        Natural quotient = sigma_q / n;
        obs.quotient_is_two = quotient == 2;
        obs.sigma_q_over_n = std::move(quotient);
    }
    obs.conjecture_consistent =
        !(obs.q_below_n_case && obs.q_divides_sigma_n) && !(obs.n_below_q_case && obs.n_divides_sigma_q);
    return report;
}

LemmaSumsReport lemma_sums(const EulerianCandidate& c) {
    c.require_nontrivial();
    const Natural& qk = c.euler_factor();
    const Natural& n = c.n();
    const Natural& sq = c.sigma_euler();
    const Natural& sn = c.sigma_n();
    bool below = c.size_order() == SizeOrder::EulerFactorBelowN;
    bool higher = !c.sorli();

    LemmaSumsReport report;
    Rational cross_euler = ratio(sq, n);
    Rational cross_n = ratio(sn, qk);
    report.s1 = cross_euler + cross_n;
    report.s2 = ratio(qk, n) + ratio(n, qk);
    report.geometric_mean = BoundExpr::radical(2, c.abundancy_euler() * c.abundancy_n(), 2);

    auto& r = report.checks;
    const BoundExpr two_root4 = printed_constant("two_root4_8_5").expr;
    r.add("s1_gt_2_root4_8_5", report.s1, two_root4, Relation::Greater, higher);
    r.add("s1_gt_lemma1_lower", report.s1, printed_constant("lemma1_lower").expr, Relation::Greater, higher);
    r.add("s1_lt_3", report.s1, 3, Relation::Less, higher);
    r.add("geometric_mean_gt_2_root4_8_5", report.geometric_mean, two_root4, Relation::Greater, higher);
    r.add("geometric_mean_vs_s1", report.geometric_mean, report.s1,
          cross_euler == cross_n ? Relation::Equal : Relation::Less, true, true);

    if (below) {
        r.add("s2_gt_2", report.s2, 2, Relation::Greater, true, true);
        r.add("s2_lt_41_20", report.s2, ratio(41, 20), Relation::Less, higher);
        r.add("qk_over_n_lt_sqrt_2", ratio(qk, n), BoundExpr::sqrt(2), Relation::Less);
        r.add("s2_lt_3_over_sqrt_2", report.s2, printed_constant("three_over_sqrt_2").expr, Relation::Less);
    } else {
        r.add("s2_gt_quarter_sum_128_125", report.s2, printed_constant("quarter_sum_128_125").expr,
              Relation::Greater, higher);
        r.add("s2_lt_5_2", report.s2, ratio(5, 2), Relation::Less, higher);
        r.add("s2_gt_quarter_sum_125_108", report.s2, printed_constant("quarter_sum_125_108").expr,
              Relation::Greater, !higher);
    }
    return report;
}

}  // namespace opnlab

namespace opnlab {

namespace {

template <class Fn>
void for_each_report(const AuditReport& a, Fn&& fn) {
    if (a.theorem1) fn(a.theorem1->checks);
    if (a.chains) fn(*a.chains);
    if (a.cases) fn(a.cases->chain_checks);
    if (a.corollaries) fn(a.corollaries->bounds);
    if (a.lemmas) fn(a.lemmas->checks);
}

}  // namespace

std::size_t AuditReport::violation_count() const {
    std::size_t total = 0;
    for_each_report(*this, [&](const InequalityReport& r) { total += r.violations().size(); });
    return total;
}

std::size_t AuditReport::broken_invariant_count() const {
    std::size_t total = 0;
    for_each_report(*this, [&](const InequalityReport& r) {
        for (const auto& c : r.checks) total += c.invariant_broken();
    });
    return total;
}

AuditReport audit(const EulerianCandidate& c, const AuditSelection& selection) {
    c.require_nontrivial();
    AuditReport a{c, {}, {}, {}, {}, {}};
    if (selection.theorem1) a.theorem1 = theorem1_vector(c);
    if (selection.chains) a.chains = remark_chains(c);
    if (selection.cases) a.cases = classify_case(c);
    if (selection.corollaries) a.corollaries = corollary_bounds(c);
    if (selection.lemmas) a.lemmas = lemma_sums(c);
    return a;
}

}  // namespace opnlab
