#include "opnlab/eulerian.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace opnlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct EulerFactor {
    u64 q;
    u64 power;
    u64 sigma;
};

std::vector<EulerFactor> euler_factors(u64 bound) {
    std::vector<EulerFactor> out;
    for (u64 q : primes_one_mod_four_u64(bound + 1)) {
        u64 power = q;
        u64 sigma = 1 + q;
        for (unsigned k = 1;; k += 4) {
            out.push_back({q, power, sigma});
            // advance k by 4; stop once q^(k+4) exceeds the bound
            bool fits = true;
            for (int step = 0; step < 4 && fits; ++step) {
                u128 next = static_cast<u128>(power) * q;
                if (next > bound) {
                    fits = false;
                    break;
                }
                power = static_cast<u64>(next);
                sigma += power;
            }
            if (!fits) break;
        }
    }
    return out;
}

Theorem1GridReport evaluate_range(const std::vector<EulerFactor>& factors, u64 n_lo, u64 n_hi) {
    Theorem1GridReport r;
    for (u64 n = n_lo | 1; n < n_hi; n += 2) {
        if (n == 1) continue;
        u64 sn = sigma_u64(n);
        Rational in = make_rational(Integer(static_cast<unsigned long>(sn)), Integer(static_cast<unsigned long>(n)));
        for (const auto& f : factors) {
            if (n % f.q == 0) continue;
            ++r.candidates;
            Rational iq = make_rational(Integer(static_cast<unsigned long>(f.sigma)),
                                        Integer(static_cast<unsigned long>(f.power)));
            bool hypothesis = iq < in;
            r.hypothesis_holds += hypothesis;
            // sigma(q^k)/sigma(n) < q^k/n by integer cross-multiplication.
            bool transfer = static_cast<u128>(f.sigma) * n < static_cast<u128>(f.power) * sn;
            if (transfer != hypothesis) ++r.transfer_violations;
            if (hypothesis && f.power < n) {
                ++r.forced_premise_holds;
                bool sigma_order = f.sigma < sn;
                bool products = static_cast<u128>(f.power) * f.sigma < static_cast<u128>(n) * sn;
                if (!sigma_order || !products) ++r.forced_violations;
            }
        }
    }
    return r;
}

}  // namespace

Theorem1GridReport theorem1_grid(std::uint64_t euler_bound, std::uint64_t n_bound, unsigned threads) {
    if (euler_bound > (1ULL << 32) || n_bound > (1ULL << 32)) throw std::length_error("grid bounds limited to 2^32");
    const auto factors = euler_factors(euler_bound);
    threads = std::max(1U, threads);
    u64 span = n_bound + 1;
    u64 chunk = (span + threads - 1) / threads;
    std::vector<Theorem1GridReport> parts(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            u64 lo = t * chunk;
            u64 hi = std::min(span, lo + chunk);
            if (lo >= hi) continue;
            workers.emplace_back([&, t, lo, hi] { parts[t] = evaluate_range(factors, lo, hi); });
        }
    }
    Theorem1GridReport total;
    for (const auto& p : parts) {
        total.candidates += p.candidates;
        total.hypothesis_holds += p.hypothesis_holds;
        total.forced_premise_holds += p.forced_premise_holds;
        total.forced_violations += p.forced_violations;
        total.transfer_violations += p.transfer_violations;
    }
    return total;
}

}  // namespace opnlab
