// Candidates N = q^k n^2 in Eulerian form and the predicates evaluated on
// them. Perfection is never assumed: every relation that only follows from N
// being perfect is computed exactly and reported as holding or violated.
#pragma once

#include "opnlab/arith.hpp"
#include "opnlab/radicals.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opnlab {

enum class CandidateError {
    ExponentNotPositive,
    ExponentTooLarge,
    EulerPrimeNotPrime,
    EulerPrimeNotOneModFour,
    ExponentNotOneModFour,
    NonEulerPartZero,
    NonEulerPartEven,
    NotCoprime,
    BelowMagnitudeBound,
};

std::string_view to_string(CandidateError e) noexcept;

class InvalidCandidate : public std::invalid_argument {
public:
    InvalidCandidate(CandidateError code, const std::string& what) : std::invalid_argument(what), code_(code) {}
    CandidateError code() const noexcept { return code_; }

private:
    CandidateError code_;
};

enum class SizeOrder { EulerFactorBelowN, NBelowEulerFactor };

std::string_view to_string(SizeOrder s) noexcept;

// Flags attached by validate(). None of them is fatal unless strict mode is on.
inline constexpr std::string_view kFlagNIsOne = "n_is_one";
inline constexpr std::string_view kFlagNAtMost1e375 = "n_le_1e375";
inline constexpr std::string_view kFlagNAtMost1e1500 = "N_le_1e1500";
inline constexpr std::string_view kFlagEulerFactorAtMost1e500 = "qk_le_1e500";
inline constexpr std::string_view kFlagNAtMost1e500 = "n_le_1e500";

class EulerianCandidate {
public:
    const Natural& q() const noexcept { return q_; }
    unsigned long k() const noexcept { return k_; }
    const Natural& n() const noexcept { return n_; }

    /// q^k
    const Natural& euler_factor() const noexcept { return euler_factor_; }
    /// q^k n^2
    Natural value() const { return euler_factor_ * n_ * n_; }

    const Factorization& euler_factorization() const noexcept { return euler_factorization_; }
    const Factorization& n_factorization() const noexcept { return n_factorization_; }

    const Natural& sigma_euler() const noexcept { return sigma_euler_; }
    const Natural& sigma_n() const noexcept { return sigma_n_; }
    Rational abundancy_euler() const { return make_rational(sigma_euler_, euler_factor_); }
    Rational abundancy_n() const { return make_rational(sigma_n_, n_); }

    /// The four shapes are exclusive: q^k = n cannot happen since gcd(q, n) = 1.
    SizeOrder size_order() const noexcept { return size_order_; }
    bool sorli() const noexcept { return k_ == 1; }

    const std::vector<std::string>& flags() const noexcept { return flags_; }
    bool has_flag(std::string_view flag) const;

    /// Theorem-level predicates need n > 1; throws std::invalid_argument otherwise.
    void require_nontrivial() const;

private:
    friend struct CandidateBuilder;
    EulerianCandidate() = default;

    Natural q_;
    unsigned long k_ = 0;
    Natural n_;
    Natural euler_factor_;
    Factorization euler_factorization_;
    Factorization n_factorization_;
    Natural sigma_euler_;
    Natural sigma_n_;
    SizeOrder size_order_ = SizeOrder::EulerFactorBelowN;
    std::vector<std::string> flags_;
};

struct ValidateOptions {
    /// Reject candidates with n <= 10^375 or N <= 10^1500 instead of flagging.
    bool strict_magnitude = false;
    FactorOptions factoring{};
};

inline constexpr unsigned long kMaxExponent = 1UL << 16;

/// Checks q prime, q = k = 1 (mod 4), n odd and positive, gcd(q, n) = 1.
/// Throws InvalidCandidate naming the first failed condition.
EulerianCandidate validate(const Natural& q, const Integer& k, const Natural& n, const ValidateOptions& options = {});

enum class Relation { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };

std::string_view to_string(Relation r) noexcept;
bool satisfied(Relation r, Ordering o) noexcept;

struct InequalityCheck {
    std::string id;
    BoundExpr lhs;
    BoundExpr rhs;
    Ordering verdict = Ordering::Equal;
    /// Relation expected under the source hypotheses.
    Relation claimed = Relation::Less;
    /// The hypotheses behind `claimed` (k and size order) match the candidate.
    bool applicable = true;
    /// `claimed` holds for every valid candidate, perfect or not.
    bool unconditional = false;

    bool holds() const noexcept { return satisfied(claimed, verdict); }
    /// An unconditional check that fails is a defect, never a property of N.
    bool invariant_broken() const noexcept { return unconditional && applicable && !holds(); }
};

struct InequalityReport {
    std::vector<InequalityCheck> checks;

    /// Evaluates lhs against rhs exactly and appends the result.
    InequalityCheck& add(std::string id, BoundExpr lhs, BoundExpr rhs, Relation claimed, bool applicable = true,
                         bool unconditional = false);

    const InequalityCheck* find(std::string_view id) const;
    /// Throws std::out_of_range for unknown ids.
    const InequalityCheck& at(std::string_view id) const;

    /// Applicable checks whose claimed relation fails.
    std::vector<const InequalityCheck*> violations() const;
    bool invariants_hold() const;
};

struct Theorem1Report {
    /// q^k < n, sigma(q^k) < sigma(n), sigma(q^k)/n < sigma(n)/q^k, and
    /// q^k/n + n/q^k < sigma(q^k)/sigma(n) + sigma(n)/sigma(q^k).
    std::array<bool, 4> conditions{};
    /// I(q^k) < I(n)
    bool hypothesis = false;
    /// All four conditions agree.
    bool consistent = false;
    InequalityReport checks;
};

Theorem1Report theorem1_vector(const EulerianCandidate& c);

/// Links of the sum chains that are equivalent to the size order, plus the
/// evaluation-route identities behind the middle term.
InequalityReport remark_chains(const EulerianCandidate& c);

struct CaseReport {
    bool sorli_k_equals_1 = false;
    SizeOrder size_order = SizeOrder::EulerFactorBelowN;
    int theorem2_case = 0;
    InequalityReport chain_checks;
    std::vector<std::string> magnitude_flags;
};

CaseReport classify_case(const EulerianCandidate& c);

/// Observations for the non-divisibility conjecture. They are recorded,
/// never assumed.
struct DivisibilityObservation {
    /// k = 1 and q < n
    bool q_below_n_case = false;
    bool q_divides_sigma_n = false;
    std::optional<Natural> sigma_n_over_q;
    bool quotient_in_two_three = false;
    /// k = 1 and n < q
    bool n_below_q_case = false;
    bool n_divides_sigma_q = false;
    std::optional<Natural> sigma_q_over_n;
    bool quotient_is_two = false;
    /// No divisibility in the case that applies.
    bool conjecture_consistent = true;
};

struct CorollaryReport {
    InequalityReport bounds;
    DivisibilityObservation conjecture1;
};

CorollaryReport corollary_bounds(const EulerianCandidate& c);

struct LemmaSumsReport {
    /// sigma(q^k)/n + sigma(n)/q^k
    Rational s1;
    /// q^k/n + n/q^k
    Rational s2;
    /// 2 sqrt(I(q^k) I(n))
    BoundExpr geometric_mean;
    InequalityReport checks;
};

LemmaSumsReport lemma_sums(const EulerianCandidate& c);

/// Everything evaluated for one candidate. Sections left out of the
/// selection stay empty.
struct AuditSelection {
    bool theorem1 = true;
    bool chains = true;
    bool cases = true;
    bool corollaries = true;
    bool lemmas = true;
};

struct AuditReport {
    EulerianCandidate candidate;
    std::optional<Theorem1Report> theorem1;
    std::optional<InequalityReport> chains;
    std::optional<CaseReport> cases;
    std::optional<CorollaryReport> corollaries;
    std::optional<LemmaSumsReport> lemmas;

    /// Applicable checks that fail, across all sections.
    std::size_t violation_count() const;
    /// Unconditional checks that fail; nonzero means a defect.
    std::size_t broken_invariant_count() const;
};

/// Requires n > 1.
AuditReport audit(const EulerianCandidate& c, const AuditSelection& selection = {});

struct Lemma3Bracket {
    Natural Q;
    /// (Q+1)/Q <= I(q)
    Rational euler_prime_lower;
    /// q/(q-1) <= 5/4
    Rational euler_factor_upper;
    /// sqrt(8/5) < I(n)
    BoundExpr n_lower;
    /// I(n) < 2Q/(Q+1)
    Rational n_upper;
    /// 2Q/(Q+1) at Q = 5, the infimum over admissible Q.
    Rational n_upper_infimum;
    /// (Q+1)/Q <= 5/4 < sqrt(8/5) < 2Q/(Q+1)
    bool anchors_ordered = false;
    /// n_upper_infimum <= n_upper < 2, with equality iff Q = 5.
    bool endpoints_ok = false;
};

/// Throws std::domain_error for Q < 5.
Lemma3Bracket lemma3_bracket(const Natural& Q);

struct Theorem5Anchors {
    Natural q;
    Rational case_a;  ///< (q+2)/q
    Rational case_b;  ///< (2q-1)/q
    Rational case_c;  ///< (3q+1)/(2q)
    Rational case_d;  ///< (3q-1)/(2q)
};

Theorem5Anchors theorem5_anchors(const Natural& q);

struct Theorem5Row {
    Theorem5Anchors anchors;
    /// (q+2)/q <= 7/5
    bool case_a_within_cap = false;
    /// (2q-1)/q against 2q/(q+1); Greater confirms the upper branch of case B
    /// is empty.
    Ordering case_b_vs_upper_bracket = Ordering::Equal;
    /// (3q+1)/(2q) <= 8/5
    bool case_c_within_cap = false;
    /// 7/5 <= (3q-1)/(2q) < 3/2
    bool case_d_within_range = false;
};

struct Theorem5Table {
    std::optional<Natural> Q;
    /// I(n) below this in case A (the q = 5 value of (q+2)/q).
    Rational case_a_cap;
    /// 2 / cap^2, the resulting lower bound on I(q^k).
    Rational case_a_euler_floor;
    /// q must be below this for q/(q-1) to exceed the floor.
    Natural case_a_prime_limit;
    std::vector<Natural> case_a_primes;
    /// (Q+2)/Q, the floor of the other branch of case A.
    std::optional<Rational> case_a_upper_branch_floor;
    /// (2Q-1)/Q, the resolved case B cap.
    std::optional<Rational> case_b_cap;
    /// 2q^2 > 2q^2 + q - 1 fails for every q >= 5.
    bool case_b_upper_branch_contradictory = false;
    Rational case_c_cap;
    std::optional<Rational> case_c_upper_branch_floor;
    Rational case_d_cap;
    Rational case_d_floor;
    /// Primes q = 1 (mod 4) up to Q, or the case A primes when Q is absent.
    std::vector<Theorem5Row> rows;
};

/// Throws std::domain_error for Q < 5.
Theorem5Table theorem5_analyze(const std::optional<Natural>& Q);

struct Theorem6Admissible {
    Natural q;
    /// 3 <= s <= q - 6 with s = 3 (mod 4)
    std::vector<long> s_values;
    Rational lower;  ///< (q+3)/(q-1)
    Rational upper;  ///< (2q-6)/(q-1)
    /// lower > upper or upper <= 1
    bool contradiction = false;
};

/// Throws std::invalid_argument unless q is prime with q = 1 (mod 4).
Theorem6Admissible theorem6_admissible(const Natural& q);

/// Exhaustive check of the relations that hold without perfection over all
/// q^k <= euler_bound (q = k = 1 mod 4) and odd n <= n_bound coprime to q:
///   I(q^k) < I(n) and q^k < n  =>  sigma(q^k) < sigma(n) and q^k sigma(q^k) < n sigma(n)
///   I(q^k) < I(n)  <=>  sigma(q^k) n < sigma(n) q^k
struct Theorem1GridReport {
    std::uint64_t candidates = 0;
    std::uint64_t hypothesis_holds = 0;
    std::uint64_t forced_premise_holds = 0;
    std::uint64_t forced_violations = 0;
    std::uint64_t transfer_violations = 0;

    friend bool operator==(const Theorem1GridReport&, const Theorem1GridReport&) = default;
};

/// Work is split across `threads` workers over n; merging is by summation
/// so the result does not depend on the split.
Theorem1GridReport theorem1_grid(std::uint64_t euler_bound, std::uint64_t n_bound, unsigned threads = 1);

}  // namespace opnlab
