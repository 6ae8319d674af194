#include "opnlab/radicals.hpp"

#include <algorithm>
#include <sstream>

namespace opnlab {

std::string_view to_string(Ordering o) noexcept {
    switch (o) {
        case Ordering::Less: return "less";
        case Ordering::Equal: return "equal";
        case Ordering::Greater: return "greater";
    }
    return "?";
}

Ordering reverse(Ordering o) noexcept {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return Ordering::Equal;
}

namespace {

bool valid_root_index(unsigned m) { return m == 1 || m == 2 || m == 4 || m == 8; }

bool perfect_square(const Rational& x) {
    return mpz_perfect_square_p(x.get_num().get_mpz_t()) && mpz_perfect_square_p(x.get_den().get_mpz_t());
}

Rational exact_sqrt(const Rational& x) {
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rational(num, den);
}

Rational pow(const Rational& x, unsigned long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), e);
    return make_rational(num, den);
}

Ordering ordering_of(int c) {
    if (c < 0) return Ordering::Less;
    if (c > 0) return Ordering::Greater;
    return Ordering::Equal;
}

// Dyadic bounds for base^(1/m): with base = a/b the root equals
// (a * b^(m-1))^(1/m) / b, and the integer root of the radicand scaled by
// 2^(m*bits) gives floor(root * b * 2^bits).
RationalInterval root_bounds(const Rational& base, unsigned m, unsigned long bits) {
    Integer b_power;
    mpz_pow_ui(b_power.get_mpz_t(), base.get_den().get_mpz_t(), m - 1);
    Integer radicand = base.get_num() * b_power;
    mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), static_cast<mp_bitcnt_t>(m) * bits);
    Integer floor_root;
    bool exact = mpz_root(floor_root.get_mpz_t(), radicand.get_mpz_t(), m) != 0;
    Integer scale = base.get_den();
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Rational lo = make_rational(floor_root, scale);
    Rational hi = exact ? lo : make_rational(floor_root + 1, scale);
    return {lo, hi};
}

}  // namespace

BoundExpr::BoundExpr() : terms_{RadicalTerm{0, 1, 1}} {}

BoundExpr::BoundExpr(const Rational& value) : terms_{RadicalTerm{value, 1, 1}} {}

BoundExpr::BoundExpr(long value) : BoundExpr(Rational(value)) {}

BoundExpr::BoundExpr(std::vector<RadicalTerm> terms) : terms_(std::move(terms)) { normalize(); }

BoundExpr BoundExpr::radical(const Rational& coefficient, const Rational& base, unsigned root_index) {
    return BoundExpr(std::vector<RadicalTerm>{RadicalTerm{coefficient, base, root_index}});
}

void BoundExpr::normalize() {
    std::vector<RadicalTerm> reduced;
    reduced.reserve(terms_.size());
    for (RadicalTerm t : terms_) {
        if (!valid_root_index(t.root_index)) {
            throw std::invalid_argument("root index must be one of 1, 2, 4, 8");
        }
        if (t.base <= 0) throw std::invalid_argument("radical base must be positive");
        if (t.coefficient == 0) continue;
        while (t.root_index > 1 && perfect_square(t.base)) {
            t.base = exact_sqrt(t.base);
            t.root_index /= 2;
        }
        if (t.root_index == 1) {
            t.coefficient *= t.base;
            t.base = 1;
        }
        reduced.push_back(std::move(t));
    }
    std::sort(reduced.begin(), reduced.end(), [](const RadicalTerm& a, const RadicalTerm& b) {
        if (a.root_index != b.root_index) return a.root_index < b.root_index;
        return a.base < b.base;
    });
    terms_.clear();
    for (auto& t : reduced) {
        if (!terms_.empty() && terms_.back().root_index == t.root_index && terms_.back().base == t.base) {
            terms_.back().coefficient += t.coefficient;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const RadicalTerm& t) { return t.coefficient == 0; });
    if (terms_.empty()) terms_.push_back(RadicalTerm{0, 1, 1});
}

std::optional<Rational> BoundExpr::as_rational() const {
    if (terms_.size() == 1 && terms_.front().root_index == 1) return terms_.front().coefficient;
    return std::nullopt;
}

BoundExpr BoundExpr::operator-() const {
    BoundExpr out = *this;
    for (auto& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
}

BoundExpr& BoundExpr::operator+=(const BoundExpr& rhs) {
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    normalize();
    return *this;
}

BoundExpr& BoundExpr::operator-=(const BoundExpr& rhs) { return *this += -rhs; }

BoundExpr& BoundExpr::operator*=(const Rational& scale) {
    for (auto& t : terms_) t.coefficient *= scale;
    normalize();
    return *this;
}

std::string BoundExpr::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coefficient;
        if (!first) {
            out << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        if (t.root_index == 1) {
            out << opnlab::to_string(c);
            continue;
        }
        if (c == -1) {
            out << '-';
        } else if (c != 1) {
            out << opnlab::to_string(c) << '*';
        }
        out << '(' << opnlab::to_string(t.base) << ")^(1/" << t.root_index << ')';
    }
    return out.str();
}

RationalInterval enclose_bits(const BoundExpr& e, unsigned long bits) {
    RationalInterval sum{0, 0};
    for (const auto& t : e.terms()) {
        if (t.root_index == 1) {
            sum.lo += t.coefficient;
            sum.hi += t.coefficient;
            continue;
        }
        RationalInterval r = root_bounds(t.base, t.root_index, bits);
        if (t.coefficient > 0) {
            sum.lo += t.coefficient * r.lo;
            sum.hi += t.coefficient * r.hi;
        } else {
            sum.lo += t.coefficient * r.hi;
            sum.hi += t.coefficient * r.lo;
        }
    }
    return sum;
}

RationalInterval enclose(const BoundExpr& e, const Rational& eps) {
    if (eps <= 0) throw std::domain_error("enclosure width must be positive");
    // Width at `bits` is at most sum(|c| / den(base)) / 2^bits.
    Rational slack = 0;
    for (const auto& t : e.terms()) {
        if (t.root_index != 1) slack += abs(t.coefficient) / Rational(t.base.get_den());
    }
    if (slack == 0) return enclose_bits(e, 0);
    Rational ratio = slack / eps;
    Integer needed;
    mpz_cdiv_q(needed.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
    unsigned long bits = 0;
    if (needed > 1) {
        Integer below = needed - 1;
        bits = mpz_sizeinbase(below.get_mpz_t(), 2);
    }
    return enclose_bits(e, bits);
}

std::optional<Ordering> compare_by_powers(const BoundExpr& lhs, const BoundExpr& rhs) {
    BoundExpr diff = lhs - rhs;
    const auto& terms = diff.terms();
    auto sign_of = [](const RadicalTerm& t) { return ordering_of(sgn(t.coefficient)); };

    if (terms.size() == 1) return sign_of(terms.front());

    bool all_positive = std::all_of(terms.begin(), terms.end(), [](const RadicalTerm& t) { return t.coefficient > 0; });
    bool all_negative = std::all_of(terms.begin(), terms.end(), [](const RadicalTerm& t) { return t.coefficient < 0; });
    if (all_positive) return Ordering::Greater;
    if (all_negative) return Ordering::Less;
    if (terms.size() != 2) return std::nullopt;

    // c1*x1 + c2*x2 with opposite signs: compare |c1|*x1 against |c2|*x2 by
    // raising both to the common root index.
    const RadicalTerm& pos = terms[0].coefficient > 0 ? terms[0] : terms[1];
    const RadicalTerm& neg = terms[0].coefficient > 0 ? terms[1] : terms[0];
    unsigned common = std::max(pos.root_index, neg.root_index);
    Rational pos_power = pow(pos.coefficient, common) * pow(pos.base, common / pos.root_index);
    Rational neg_power = pow(-neg.coefficient, common) * pow(neg.base, common / neg.root_index);
    return ordering_of(cmp(pos_power, neg_power));
}

std::optional<Ordering> compare_by_enclosure(const BoundExpr& lhs, const BoundExpr& rhs,
                                             const CompareOptions& options) {
    BoundExpr diff = lhs - rhs;
    for (unsigned round = 0; round < options.rounds; ++round) {
        RationalInterval box = enclose_bits(diff, 32UL * (round + 1));
        if (box.lo > 0) return Ordering::Greater;
        if (box.hi < 0) return Ordering::Less;
    }
    return std::nullopt;
}

Ordering compare(const BoundExpr& lhs, const BoundExpr& rhs, const CompareOptions& options) {
    if (auto certified = compare_by_powers(lhs, rhs)) return *certified;
    if (auto separated = compare_by_enclosure(lhs, rhs, options)) return *separated;
    throw PrecisionBudgetExceeded("enclosures of " + lhs.to_string() + " and " + rhs.to_string() +
                                  " did not separate within " + std::to_string(options.rounds) +
                                  " refinement rounds");
}

const std::vector<PrintedConstant>& printed_constants() {
    static const std::vector<PrintedConstant> registry = [] {
        auto r = [](long num, long den) { return make_rational(num, den); };
        std::vector<PrintedConstant> out;
        out.push_back({"two_root4_8_5", BoundExpr::radical(2, r(8, 5), 4), "2.2493653"});
        out.push_back({"sqrt_5_3", BoundExpr::sqrt(r(5, 3)), "1.2909944487358"});
        out.push_back({"sqrt_1_3", BoundExpr::sqrt(r(1, 3)), "0.5773502691896257645"});
        out.push_back({"two_sqrt_3", BoundExpr::radical(2, 3, 2), "3.464101615137754587"});
        out.push_back({"three_over_sqrt_2", BoundExpr::radical(3, r(1, 2), 2), "2.12132"});
        out.push_back({"sqrt_108_125", BoundExpr::sqrt(r(108, 125)), "0.929516"});
        out.push_back({"quarter_sum_125_108", BoundExpr::root4(r(125, 108)) + BoundExpr::root4(r(108, 125)),
                       "2.00133573154771263"});
        out.push_back({"sqrt_125_128", BoundExpr::sqrt(r(125, 128)), "0.9882117688"});
        out.push_back({"quarter_sum_128_125", BoundExpr::root4(r(128, 125)) + BoundExpr::root4(r(125, 128)),
                       "2.0000351547"});
        out.push_back({"lemma1_lower",
                       BoundExpr(r(5, 4)) + BoundExpr::sqrt(r(8, 5)) - BoundExpr::sqrt(10) +
                           BoundExpr::radical(2, r(8, 5), 4),
                       "1.60199870466"});
        out.push_back({"sqrt_8_5", BoundExpr::sqrt(r(8, 5)), "1.264911"});
        return out;
    }();
    return registry;
}

const PrintedConstant& printed_constant(std::string_view name) {
    for (const auto& c : printed_constants()) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("unknown constant '" + std::string(name) + "'");
}

ConstantCheck verify_constant(const PrintedConstant& c) {
    ConstantCheck check;
    check.printed_value = parse_rational(c.printed);
    auto dot = c.printed.find('.');
    check.digits = dot == std::string::npos ? 0 : static_cast<unsigned>(c.printed.size() - dot - 1);
    Integer ten_power;
    mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, check.digits);
    check.half_ulp = make_rational(1, 2 * ten_power);
    check.eps = make_rational(1, ten_power * 100);
    check.enclosure = enclose(c.expr, check.eps);
    RationalInterval window{check.printed_value - check.half_ulp, check.printed_value + check.half_ulp};
    check.verified = check.enclosure.width() <= check.eps && check.enclosure.subset_of(window);
    return check;
}

}  // namespace opnlab
