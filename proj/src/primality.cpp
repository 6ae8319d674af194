#include "opnlab/arith.hpp"

#include <array>

namespace opnlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    mpz_class n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

constexpr std::array<u64, 12> kSmallPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr unsigned kLargeRounds = 64;

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes are a deterministic witness set below 2^64.
    for (u64 a : kSmallPrimes) {
        if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
}

bool is_prime(const Natural& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    for (u64 p : kSmallPrimes) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(n);
    mpz_class range = n - 3;
    for (unsigned round = 0; round < kLargeRounds; ++round) {
        mpz_class a = rng.get_z_range(range) + 2;
        if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
}

}  // namespace opnlab
