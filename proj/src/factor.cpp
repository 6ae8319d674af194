#include "opnlab/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace opnlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<u64>& trial_primes() {
    static const std::vector<u64> primes = primes_below(kTrialLimit + 1);
    return primes;
}

class Effort {
public:
    Effort(const Natural& n, std::uint64_t budget) : n_(n), budget_(budget) {}

    void spend(std::uint64_t steps) {
        used_ += steps;
        if (used_ > budget_) throw FactoringBudgetExceeded(n_, budget_);
    }

private:
    const Natural& n_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Brent's variant of Pollard rho; returns a non-trivial factor of composite n.
u64 brent_rho(u64 n, Effort& effort) {
    if (n % 2 == 0) return 2;
    constexpr u64 kBatch = 128;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            effort.spend(r);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                u64 steps = std::min(kBatch, r - k);
                for (u64 i = 0; i < steps; ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                effort.spend(steps);
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
                effort.spend(1);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

mpz_class brent_rho(const mpz_class& n, Effort& effort) {
    constexpr unsigned long kBatch = 128;
    for (unsigned long c = 1;; ++c) {
        auto f = [&](const mpz_class& v) {
            mpz_class out = v * v + c;
            mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
            return out;
        };
        mpz_class y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
        for (unsigned long r = 1; g == 1; r <<= 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            effort.spend(r);
            for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                unsigned long steps = std::min(kBatch, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = f(y);
                    diff = abs(x - y);
                    q = q * diff % n;
                }
                effort.spend(steps);
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                effort.spend(1);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

// Splits a cofactor with no prime factor <= kTrialLimit.
void split_u64(u64 n, std::map<u64, unsigned>& out, Effort& effort) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = brent_rho(n, effort);
    split_u64(d, out, effort);
    split_u64(n / d, out, effort);
}

void split_big(const mpz_class& n, std::map<mpz_class, unsigned long>& out, Effort& effort) {
    if (n == 1) return;
    if (n.fits_ulong_p()) {
        std::map<u64, unsigned> small;
        split_u64(n.get_ui(), small, effort);
        for (auto [p, e] : small) out[mpz_class(static_cast<unsigned long>(p))] += e;
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class d = brent_rho(n, effort);
    split_big(d, out, effort);
    split_big(n / d, out, effort);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n, const FactorOptions& options) {
    if (n == 0) throw std::domain_error("cannot factor 0");
    Natural as_natural(static_cast<unsigned long>(n));
    Effort effort(as_natural, options.effort);
    std::vector<std::pair<u64, unsigned>> out;
    std::uint64_t divisions = 0;
    for (u64 p : trial_primes()) {
        if (p * p > n) break;
        ++divisions;
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    effort.spend(divisions);
    if (n > 1) {
        std::map<u64, unsigned> rest;
        split_u64(n, rest, effort);
        for (auto [p, e] : rest) out.emplace_back(p, e);
    }
    return out;
}

Factorization factor(const Natural& n, const FactorOptions& options) {
    if (n < 1) throw std::domain_error("factor requires n >= 1");
    std::vector<PrimePower> factors;
    if (n.fits_ulong_p()) {
        for (auto [p, e] : factor_u64(n.get_ui(), options)) {
            factors.push_back({Natural(static_cast<unsigned long>(p)), e});
        }
        return Factorization::from_factors(std::move(factors));
    }

    Effort effort(n, options.effort);
    mpz_class rest = n;
    std::uint64_t divisions = 0;
    mpz_class root = sqrt(rest);
    for (u64 p : trial_primes()) {
        if (mpz_cmp_ui(root.get_mpz_t(), p) < 0) break;
        ++divisions;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        factors.push_back({Natural(static_cast<unsigned long>(p)), e});
        root = sqrt(rest);
    }
    effort.spend(divisions);
    std::map<mpz_class, unsigned long> large;
    split_big(rest, large, effort);
    for (auto& [p, e] : large) factors.push_back({p, e});
    return Factorization::from_factors(std::move(factors));
}

}  // namespace opnlab
