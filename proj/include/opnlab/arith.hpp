// Arbitrary-precision integers and rationals, primality, factorization and
// the multiplicative functions sigma and I(x) = sigma(x)/x.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace opnlab {

/// Non-negative arbitrary-precision integer. Non-negativity is checked at API
/// boundaries rather than by the type.
using Natural = mpz_class;
using Integer = mpz_class;
/// Always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses an exact decimal integer ("12345"). Signs, exponents and fractional
/// parts are rejected.
Natural parse_natural(std::string_view text);

/// Parses "a", "a/b" or a terminating decimal "1.2345" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

/// Truncated decimal rendering with `digits` fractional digits. For display
/// only; never used in a verdict.
std::string decimal_preview(const Rational& value, unsigned digits = 12);

/// Thrown when factoring needs more work than the configured effort budget.
class FactoringBudgetExceeded : public std::runtime_error {
public:
    FactoringBudgetExceeded(const Natural& n, std::uint64_t budget);
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t budget_;
};

struct FactorOptions {
    /// Upper limit on trial divisions plus Pollard-rho steps for one call.
    std::uint64_t effort = 1'000'000'000ULL;
};

/// Effort budget from OPNLAB_EFFORT when set to a decimal integer, otherwise
/// the default.
FactorOptions factor_options_from_env();

struct PrimePower {
    Natural prime;
    unsigned long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer. The empty factorization is 1.
class Factorization {
public:
    Factorization() = default;

    /// Validates ordering, exponents and primality of every listed prime.
    /// Throws std::invalid_argument on malformed input.
    static Factorization from_factors(std::vector<PrimePower> factors);

    /// p^e for a prime p. Primality is checked.
    static Factorization prime_power(const Natural& p, unsigned long e);

    const std::vector<PrimePower>& factors() const noexcept { return factors_; }
    auto begin() const noexcept { return factors_.begin(); }
    auto end() const noexcept { return factors_.end(); }
    bool empty() const noexcept { return factors_.empty(); }
    std::size_t size() const noexcept { return factors_.size(); }

    Natural value() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    explicit Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {}

    std::vector<PrimePower> factors_;
};

enum class DeficiencyClass { Deficient, Perfect, Abundant };

std::string_view to_string(DeficiencyClass cls) noexcept;

// Primality: deterministic Miller-Rabin for n < 2^64; above that 64 rounds
// with bases drawn from a GMP generator seeded by n itself, so results are
// reproducible run to run and the error bound is 4^-64 = 2^-128.
bool is_prime(const Natural& n);
bool is_prime(std::uint64_t n) noexcept;

/// Trial division to 10^6, then Pollard-rho with Brent cycle detection.
/// factor(1) is the empty factorization. Throws std::domain_error for n < 1.
Factorization factor(const Natural& n, const FactorOptions& options = {});

/// Native-width factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n,
                                                           const FactorOptions& options = {});

/// sigma(p^e) = (p^(e+1) - 1) / (p - 1).
Natural sigma_prime_power(const Natural& p, unsigned long e);

Natural sigma(const Factorization& f);
Rational abundancy(const Factorization& f);
DeficiencyClass classify_deficiency(const Factorization& f);

/// sigma(n) for native n via factor_u64. Overflow-checked.
std::uint64_t sigma_u64(std::uint64_t n);

/// Ascending primes p < bound with p = 1 (mod 4).
std::vector<Natural> primes_one_mod_four(const Natural& bound);
std::vector<std::uint64_t> primes_one_mod_four_u64(std::uint64_t bound);

/// Sieve of Eratosthenes over [0, bound).
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

}  // namespace opnlab
