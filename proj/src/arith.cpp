#include "opnlab/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace opnlab {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    if (!all_digits(body)) throw std::invalid_argument("not an exact integer: '" + std::string(text) + "'");
    return Integer(std::string(text), 10);
}

}  // namespace

Natural parse_natural(std::string_view text) {
    if (!all_digits(text)) {
        throw std::invalid_argument("not an exact non-negative integer: '" + std::string(text) + "'");
    }
    return Natural(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
        Integer den(std::string(den_text), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return make_rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (negative) whole.remove_prefix(1);
        if (!all_digits(whole) || !all_digits(frac)) {
            throw std::invalid_argument("not an exact decimal: '" + std::string(text) + "'");
        }
        Integer num(std::string(whole) + std::string(frac), 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        if (negative) num = -num;
        return make_rational(num, den);
    }
    return Rational(parse_integer(text));
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str(10);
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

std::string decimal_preview(const Rational& value, unsigned digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer num = abs(value.get_num()) * scale;
    Integer scaled = num / value.get_den();
    std::string body = scaled.get_str(10);
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = value < 0 ? "-" : "";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    return out;
}

FactoringBudgetExceeded::FactoringBudgetExceeded(const Natural& n, std::uint64_t budget)
    : std::runtime_error("factoring effort budget of " + std::to_string(budget) + " exhausted on " +
                         n.get_str(10)),
      budget_(budget) {}

FactorOptions factor_options_from_env() {
    FactorOptions options;
    if (const char* env = std::getenv("OPNLAB_EFFORT"); env != nullptr && all_digits(env)) {
        options.effort = std::strtoull(env, nullptr, 10);
    }
    return options;
}

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].exponent == 0) throw std::invalid_argument("zero exponent in factorization");
        if (i > 0 && !(factors[i - 1].prime < factors[i].prime)) {
            throw std::invalid_argument("factorization primes must be strictly increasing");
        }
        if (!is_prime(factors[i].prime)) {
            throw std::invalid_argument("non-prime " + factors[i].prime.get_str() + " in factorization");
        }
    }
    return Factorization(std::move(factors));
}

Factorization Factorization::prime_power(const Natural& p, unsigned long e) {
    if (e == 0) return Factorization{};
    return from_factors({PrimePower{p, e}});
}

Natural Factorization::value() const {
    Natural product = 1;
    Natural term;
    for (const auto& [p, e] : factors_) {
        mpz_pow_ui(term.get_mpz_t(), p.get_mpz_t(), e);
        product *= term;
    }
    return product;
}

std::string_view to_string(DeficiencyClass cls) noexcept {
    switch (cls) {
        case DeficiencyClass::Deficient: return "deficient";
        case DeficiencyClass::Perfect: return "perfect";
        case DeficiencyClass::Abundant: return "abundant";
    }
    return "?";
}

Natural sigma_prime_power(const Natural& p, unsigned long e) {
    Natural top;
    mpz_pow_ui(top.get_mpz_t(), p.get_mpz_t(), e + 1);
    return (top - 1) / (p - 1);
}

Natural sigma(const Factorization& f) {
    Natural s = 1;
    for (const auto& [p, e] : f) s *= sigma_prime_power(p, e);
    return s;
}

Rational abundancy(const Factorization& f) { return make_rational(sigma(f), f.value()); }

DeficiencyClass classify_deficiency(const Factorization& f) {
    int c = cmp(sigma(f), 2 * f.value());
    if (c < 0) return DeficiencyClass::Deficient;
    if (c == 0) return DeficiencyClass::Perfect;
    return DeficiencyClass::Abundant;
}

std::uint64_t sigma_u64(std::uint64_t n) {
    if (n == 0) throw std::domain_error("sigma(0) is undefined");
    unsigned __int128 s = 1;
    for (auto [p, e] : factor_u64(n)) {
        unsigned __int128 term = 1, power = 1;
        for (unsigned i = 0; i < e; ++i) {
            power *= p;
            term += power;
        }
        s *= term;
        if (s > UINT64_MAX) throw std::overflow_error("sigma exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(s);
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 3) return primes;
    std::vector<bool> composite(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
    }
    return primes;
}

std::vector<std::uint64_t> primes_one_mod_four_u64(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (auto p : primes_below(bound)) {
        if (p % 4 == 1) out.push_back(p);
    }
    return out;
}

std::vector<Natural> primes_one_mod_four(const Natural& bound) {
    if (bound < 0) throw std::domain_error("negative bound");
    if (!bound.fits_ulong_p()) throw std::length_error("bound too large to enumerate");
    std::vector<Natural> out;
    for (auto p : primes_one_mod_four_u64(bound.get_ui())) out.emplace_back(static_cast<unsigned long>(p));
    return out;
}

}  // namespace opnlab
