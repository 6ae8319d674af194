// Bounded brute-force explorations: abundancy-equation scans, the divisor-sum
// sieve and sigma-chain trees.
#pragma once

#include "opnlab/arith.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace opnlab {

/// Calls visit(n, sigma(n)) for every n in [lo, hi), ascending, using a
/// segmented divisor-pair sieve. No factorization is involved.
void for_each_sigma(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit,
                    std::uint64_t segment_size = 1ULL << 22);

/// sigma(n) for n in [lo, hi) from the same sieve, as a table.
std::vector<std::uint64_t> sigma_table(std::uint64_t lo, std::uint64_t hi);

enum class ParityFilter { OddOnly, All };

struct Shard {
    std::uint64_t index = 0;
    std::uint64_t count = 1;
};

struct ScanConfig {
    std::uint64_t n_bound = 1;
    std::uint64_t q_bound = 5;
    ParityFilter parity = ParityFilter::OddOnly;
    bool coprime = true;
    bool exclude_n_equals_1 = true;
    Shard shard{};
    /// Skip n <= resume_after inside the shard (checkpoint resume).
    std::uint64_t resume_after = 0;
    unsigned threads = 1;
    /// Above this n_bound, sigma comes from per-n factorization.
    std::uint64_t sieve_limit = 10'000'000;
};

/// Throws std::invalid_argument when bounds are < 1, the shard index is out
/// of range, or bounds exceed the 2^40 native scan limit.
void validate(const ScanConfig& cfg);

/// The n-range [first, last] covered by cfg.shard, before resume.
std::pair<std::uint64_t, std::uint64_t> shard_range(const ScanConfig& cfg);

struct EquationSolution {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::int64_t parameter = 0;  ///< r for I(n) = (q+r)/q, s for I(n) = (q+s)/(q-1)
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    DeficiencyClass n_class = DeficiencyClass::Deficient;

    friend bool operator==(const EquationSolution&, const EquationSolution&) = default;
    friend auto operator<=>(const EquationSolution& a, const EquationSolution& b) {
        if (a.n != b.n) return a.n <=> b.n;
        if (a.q != b.q) return a.q <=> b.q;
        return a.parameter <=> b.parameter;
    }
};

/// Receives solutions of each completed block in order, then the last n done.
struct ScanSink {
    std::function<void(const std::vector<EquationSolution>&)> on_solutions;
    std::function<void(std::uint64_t n_done)> on_progress;
};

/// All q sigma(n) = (q + r) n with 0 <= r <= q, prime q = 1 (mod 4) <= q_bound.
std::vector<EquationSolution> theorem4_scan(const ScanConfig& cfg, const ScanSink& sink = {});

/// All (q - 1) sigma(n) = n (q + s) with -1 <= s <= q - 2.
std::vector<EquationSolution> theorem6_scan(const ScanConfig& cfg, const ScanSink& sink = {});

/// Solutions of theorem4_scan with deficient n under the (odd, coprime, n > 1)
/// filters. Empty when the exclusion holds.
std::vector<EquationSolution> theorem4_deficient(const std::vector<EquationSolution>& solutions);

struct Theorem6Audit {
    std::size_t interior = 0;  ///< odd n > 1 with 1 <= s < q - 2
    std::vector<EquationSolution> residue_violations;
    std::vector<EquationSolution> bracket_violations;
    bool clean() const { return residue_violations.empty() && bracket_violations.empty(); }
};

/// s = 3 (mod 4) and (q+3)/(q-1) <= I(n) <= (2q-6)/(q-1) on interior solutions.
Theorem6Audit audit_theorem6(const std::vector<EquationSolution>& solutions);

/// All n <= bound with I(n) = target under the parity and n = 1 filters.
/// Throws std::domain_error for target <= 0.
std::vector<std::uint64_t> abundancy_ratio_solutions(const Rational& target, std::uint64_t bound,
                                                     const ScanConfig& filters = {});

class SieveBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SieveOptions {
    std::uint64_t segment_size = 1ULL << 22;
    /// Bounds above 10^9 require this.
    bool allow_large = false;
    std::uint64_t cross_check_samples = 10'000;
    std::uint64_t seed = 0x5eed;
};

struct DeficiencyCensus {
    std::uint64_t deficient = 0;
    std::uint64_t perfect = 0;
    std::uint64_t abundant = 0;
};

struct SieveResult {
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> perfect;
    std::uint64_t odd_perfect_count = 0;
    DeficiencyCensus census;
    std::uint64_t cross_checked = 0;
    std::vector<std::uint64_t> cross_check_mismatches;
};

SieveResult sieve_scan(std::uint64_t bound, const SieveOptions& options = {});

enum class ChainStatus { Open, ClosedByDepth, ClosedByBound, Contradiction };

std::string_view to_string(ChainStatus s) noexcept;

struct SigmaChainNode {
    Natural prime;
    unsigned long exponent = 0;
    Natural sigma_value;
    /// Product of I(p^e) over the distinct primes on the path from the root.
    Rational path_abundancy;
    ChainStatus status = ChainStatus::Open;
    std::vector<SigmaChainNode> children;
};

struct ChainOptions {
    /// Trial exponents for primes other than the root.
    std::vector<unsigned long> exponents{2, 4};
    FactorOptions factoring{};
};

/// Expands q^k into the odd prime factors of sigma(p^e), recursively. A prime
/// already on the path keeps its exponent; nodes whose prime power exceeds
/// magnitude_bound close by bound, nodes at `depth` close by depth, and
/// nodes whose path abundancy exceeds 2 are contradictions.
SigmaChainNode sigma_chain(const Natural& q, unsigned long k, unsigned depth, const Natural& magnitude_bound,
                           const ChainOptions& options = {});

/// Re-verifies that each child's prime divides its parent's sigma value and
/// that sigma values match sigma(p^e). Returns the number of failures.
std::size_t verify_chain(const SigmaChainNode& root);

std::size_t chain_size(const SigmaChainNode& root);

}  // namespace opnlab
