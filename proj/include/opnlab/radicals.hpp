// Exact sums of rational multiples of rational square, fourth and eighth
// roots, with refinable rational enclosures and certified comparison.
#pragma once

#include "opnlab/arith.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opnlab {

enum class Ordering { Less, Equal, Greater };

std::string_view to_string(Ordering o) noexcept;
Ordering reverse(Ordering o) noexcept;

/// coefficient * base^(1/root_index), base > 0, root_index in {1, 2, 4, 8}.
struct RadicalTerm {
    Rational coefficient;
    Rational base = 1;
    unsigned root_index = 1;

    friend bool operator==(const RadicalTerm&, const RadicalTerm&) = default;
};

/// A real number written as a finite sum of RadicalTerms, kept in normal form:
/// perfect-square bases are pulled down to a smaller root index, all rational
/// parts are folded into one base-1 term, like terms are merged, zero terms
/// are dropped and the rest are sorted by (root_index, base). Zero is the
/// single term 0.
class BoundExpr {
public:
    BoundExpr();
    BoundExpr(const Rational& value);  // NOLINT(google-explicit-constructor)
    BoundExpr(long value);             // NOLINT(google-explicit-constructor)
    /// Unevaluated gmpxx arithmetic such as a/b + c/d.
    template <class T, class U>
    BoundExpr(const __gmp_expr<T, U>& value) : BoundExpr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
    explicit BoundExpr(std::vector<RadicalTerm> terms);

    /// coefficient * base^(1/root_index). Throws std::invalid_argument for a
    /// non-positive base or a root index outside {1, 2, 4, 8}.
    static BoundExpr radical(const Rational& coefficient, const Rational& base, unsigned root_index);
    static BoundExpr sqrt(const Rational& base) { return radical(1, base, 2); }
    static BoundExpr root4(const Rational& base) { return radical(1, base, 4); }
    static BoundExpr root8(const Rational& base) { return radical(1, base, 8); }

    const std::vector<RadicalTerm>& terms() const noexcept { return terms_; }

    /// Value when the normal form is a single rational term.
    std::optional<Rational> as_rational() const;
    bool is_rational() const { return as_rational().has_value(); }

    BoundExpr operator-() const;
    BoundExpr& operator+=(const BoundExpr& rhs);
    BoundExpr& operator-=(const BoundExpr& rhs);
    BoundExpr& operator*=(const Rational& scale);

    friend BoundExpr operator+(BoundExpr lhs, const BoundExpr& rhs) { return lhs += rhs; }
    friend BoundExpr operator-(BoundExpr lhs, const BoundExpr& rhs) { return lhs -= rhs; }
    friend BoundExpr operator*(BoundExpr lhs, const Rational& rhs) { return lhs *= rhs; }
    friend BoundExpr operator*(const Rational& lhs, BoundExpr rhs) { return rhs *= lhs; }

    /// Structural equality of normal forms.
    friend bool operator==(const BoundExpr&, const BoundExpr&) = default;

    /// Human readable form such as "5/4 + 1*(8/5)^(1/2)".
    std::string to_string() const;

private:
    void normalize();

    std::vector<RadicalTerm> terms_;
};

struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool subset_of(const RationalInterval& outer) const { return outer.lo <= lo && hi <= outer.hi; }

    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Enclosure from dyadic root bounds at `bits` binary digits. Intervals for
/// increasing `bits` are nested.
RationalInterval enclose_bits(const BoundExpr& e, unsigned long bits);

/// Enclosure of width <= eps. The working precision is the least number of
/// bits that guarantees the width, so smaller eps gives a nested interval.
/// Throws std::domain_error for eps <= 0.
RationalInterval enclose(const BoundExpr& e, const Rational& eps);

/// Thrown when enclosures fail to separate and no symbolic certificate
/// decides the comparison; usually a suspected equality.
class PrecisionBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CompareOptions {
    /// Refinement rounds; round r works at 32 * (r + 1) bits.
    unsigned rounds = 256;
};

/// Sign decision by symbolic means only: identical normal forms, a single
/// surviving term, or two terms compared by raising both to the common root
/// index. Returns nullopt when the difference has three or more terms of
/// mixed sign.
std::optional<Ordering> compare_by_powers(const BoundExpr& lhs, const BoundExpr& rhs);

/// Sign decision by refining enclosures of lhs - rhs. Never returns Equal;
/// returns nullopt when the budget runs out.
std::optional<Ordering> compare_by_enclosure(const BoundExpr& lhs, const BoundExpr& rhs,
                                             const CompareOptions& options = {});

/// Exact ordering of two real values. Equal is returned only with a symbolic
/// certificate. Throws PrecisionBudgetExceeded otherwise.
Ordering compare(const BoundExpr& lhs, const BoundExpr& rhs, const CompareOptions& options = {});

/// A constant that is printed to a fixed number of decimals.
struct PrintedConstant {
    std::string name;
    BoundExpr expr;
    std::string printed;
};

struct ConstantCheck {
    Rational printed_value;
    unsigned digits = 0;
    Rational eps;        ///< 10^-(digits + 2)
    Rational half_ulp;   ///< 10^-digits / 2
    RationalInterval enclosure;
    /// Enclosure lies within printed_value +- half_ulp.
    bool verified = false;
};

/// Registry of the eleven printed approximations.
const std::vector<PrintedConstant>& printed_constants();

/// Lookup by name. Throws std::out_of_range for unknown names.
const PrintedConstant& printed_constant(std::string_view name);

ConstantCheck verify_constant(const PrintedConstant& c);

}  // namespace opnlab
