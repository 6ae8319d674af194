#include "opnlab/search.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace opnlab {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr u64 kMaxNativeBound = 1ULL << 40;
constexpr u64 kBlock = 1ULL << 16;

u64 narrow(u128 v) {
    if (v > UINT64_MAX) throw std::overflow_error("scan value exceeds 64 bits");
    return static_cast<u64>(v);
}

DeficiencyClass classify(u64 n, u64 sigma) {
    u128 twice = static_cast<u128>(n) * 2;
    if (sigma < twice) return DeficiencyClass::Deficient;
    if (sigma == twice) return DeficiencyClass::Perfect;
    return DeficiencyClass::Abundant;
}

bool passes_n_filters(const ScanConfig& cfg, u64 n) {
    if (cfg.exclude_n_equals_1 && n == 1) return false;
    if (cfg.parity == ParityFilter::OddOnly && n % 2 == 0) return false;
    return true;
}

bool passes_q_filter(const ScanConfig& cfg, u64 n, u64 q) { return !cfg.coprime || n % q != 0; }

using Solver = std::function<void(u64 n, u64 sigma, std::vector<EquationSolution>& out)>;

std::vector<EquationSolution> run_blocks(const ScanConfig& cfg, const ScanSink& sink, const Solver& solve) {
    validate(cfg);
    auto [first, last] = shard_range(cfg);
    first = std::max(first, cfg.resume_after + 1);
    const bool use_sieve = cfg.n_bound <= cfg.sieve_limit;
    const unsigned threads = std::max(1U, cfg.threads);

    auto process = [&](u64 lo, u64 hi) {
        std::vector<EquationSolution> out;
        if (use_sieve) {
            for_each_sigma(lo, hi, [&](u64 n, u64 s) {
                if (passes_n_filters(cfg, n)) solve(n, s, out);
            });
        } else {
            for (u64 n = lo; n < hi; ++n) {
                if (passes_n_filters(cfg, n)) solve(n, sigma_u64(n), out);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<EquationSolution> all;
    for (u64 batch = first; batch <= last; batch += kBlock * threads) {
        std::vector<std::vector<EquationSolution>> parts(threads);
        {
            std::vector<std::jthread> workers;
            for (unsigned t = 0; t < threads; ++t) {
                u64 lo = batch + t * kBlock;
                if (lo > last) break;
                u64 hi = std::min(last + 1, lo + kBlock);
                if (threads == 1) {
                    parts[t] = process(lo, hi);
                } else {
                    workers.emplace_back([&, t, lo, hi] { parts[t] = process(lo, hi); });
                }
            }
        }
        for (auto& part : parts) {
            if (part.empty()) continue;
            if (sink.on_solutions) sink.on_solutions(part);
            all.insert(all.end(), part.begin(), part.end());
        }
        if (sink.on_progress) sink.on_progress(std::min(last, batch + kBlock * threads - 1));
    }
    return all;
}

std::vector<u64> euler_primes(const ScanConfig& cfg) { return primes_one_mod_four_u64(cfg.q_bound + 1); }

}  // namespace

void validate(const ScanConfig& cfg) {
    if (cfg.n_bound < 1 || cfg.q_bound < 1) throw std::invalid_argument("scan bounds must be at least 1");
    if (cfg.n_bound > kMaxNativeBound) throw std::invalid_argument("n bound exceeds the 2^40 native scan limit");
    if (cfg.q_bound > (1ULL << 32)) throw std::invalid_argument("q bound exceeds 2^32");
    if (cfg.shard.count < 1 || cfg.shard.index >= cfg.shard.count) {
        throw std::invalid_argument("shard index must be below shard count");
    }
}

std::pair<std::uint64_t, std::uint64_t> shard_range(const ScanConfig& cfg) {
    u64 len = (cfg.n_bound + cfg.shard.count - 1) / cfg.shard.count;
    u64 first = 1 + cfg.shard.index * len;
    u64 last = std::min(cfg.n_bound, first + len - 1);
    return {first, last};
}

std::vector<EquationSolution> theorem4_scan(const ScanConfig& cfg, const ScanSink& sink) {
    const auto primes = euler_primes(cfg);
    auto solve = [&](u64 n, u64 s, std::vector<EquationSolution>& out) {
        // q(s - n) = r n with 0 <= r <= q needs n <= s <= 2n and
        // n / gcd(n, s - n) dividing the prime q.
        if (s > 2 * n) return;
        u64 d = s - n;
        u64 reduced = n / std::gcd(n, d);
        auto emit = [&](u64 q) {
            if (!passes_q_filter(cfg, n, q)) return;
            u64 r = narrow(static_cast<u128>(q) * d / n);
            out.push_back({n, q, static_cast<i64>(r), narrow(static_cast<u128>(q) * s),
                           narrow(static_cast<u128>(q + r) * n), classify(n, s)});
        };
        if (reduced == 1) {
            for (u64 q : primes) emit(q);
        } else if (std::binary_search(primes.begin(), primes.end(), reduced)) {
            emit(reduced);
        }
    };
    return run_blocks(cfg, sink, solve);
}

std::vector<EquationSolution> theorem6_scan(const ScanConfig& cfg, const ScanSink& sink) {
    const auto primes = euler_primes(cfg);
    auto solve = [&](u64 n, u64 s, std::vector<EquationSolution>& out) {
        // -1 <= s' <= q - 2 is n <= sigma(n) <= 2n; divisibility needs
        // n / gcd(n, sigma(n)) to divide q - 1.
        if (s > 2 * n) return;
        u64 reduced = n / std::gcd(n, s);
        for (u64 q : primes) {
            if ((q - 1) % reduced != 0 || !passes_q_filter(cfg, n, q)) continue;
            u128 lhs = static_cast<u128>(q - 1) * s;
            i64 param = static_cast<i64>(narrow(lhs / n)) - static_cast<i64>(q);
            out.push_back({n, q, param, narrow(lhs), narrow(static_cast<u128>(n) * static_cast<u128>(q + param)),
                           classify(n, s)});
        }
    };
    return run_blocks(cfg, sink, solve);
}

std::vector<EquationSolution> theorem4_deficient(const std::vector<EquationSolution>& solutions) {
    std::vector<EquationSolution> out;
    std::copy_if(solutions.begin(), solutions.end(), std::back_inserter(out), [](const EquationSolution& s) {
        return s.n > 1 && s.n_class == DeficiencyClass::Deficient;
    });
    return out;
}

Theorem6Audit audit_theorem6(const std::vector<EquationSolution>& solutions) {
    Theorem6Audit audit;
    for (const auto& sol : solutions) {
        i64 q = static_cast<i64>(sol.q);
        if (sol.n % 2 == 0 || sol.n == 1 || sol.parameter < 1 || sol.parameter >= q - 2) continue;
        ++audit.interior;
        if (sol.parameter % 4 != 3) audit.residue_violations.push_back(sol);
        // I(n) = lhs / ((q-1) n); compare against (q+3)/(q-1) and (2q-6)/(q-1).
        i128 scaled = static_cast<i128>(sol.lhs);
        i128 lower = static_cast<i128>(q + 3) * static_cast<i128>(sol.n);
        i128 upper = static_cast<i128>(2 * q - 6) * static_cast<i128>(sol.n);
        if (scaled < lower || scaled > upper) audit.bracket_violations.push_back(sol);
    }
    return audit;
}

std::vector<std::uint64_t> abundancy_ratio_solutions(const Rational& target, std::uint64_t bound,
                                                     const ScanConfig& filters) {
    if (target <= 0) throw std::domain_error("abundancy target must be positive");
    if (bound > kMaxNativeBound) throw std::invalid_argument("bound exceeds the 2^40 native scan limit");
    std::vector<u64> out;
    if (!target.get_num().fits_ulong_p() || !target.get_den().fits_ulong_p()) return out;
    const u64 a = target.get_num().get_ui();
    const u64 b = target.get_den().get_ui();
    auto consider = [&](u64 n, u64 s) {
        if (n % b != 0 || !passes_n_filters(filters, n)) return;
        if (static_cast<u128>(s) * b == static_cast<u128>(a) * n) out.push_back(n);
    };
    // I(n) = a/b in lowest terms forces b | n, so sparse multiples are
    // cheaper to factor one by one than to sieve.
    if (b > 64 || bound > filters.sieve_limit) {
        for (u64 n = b; n <= bound; n += b) consider(n, sigma_u64(n));
    } else {
        for_each_sigma(1, bound + 1, consider);
    }
    return out;
}

}  // namespace opnlab
