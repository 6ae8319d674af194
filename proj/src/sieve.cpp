#include "opnlab/search.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace opnlab {

void for_each_sigma(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit, std::uint64_t segment_size) {
    if (lo == 0) lo = 1;
    if (segment_size == 0) throw std::invalid_argument("segment size must be positive");
    std::vector<std::uint64_t> acc;
    for (std::uint64_t start = lo; start < hi; start += segment_size) {
        std::uint64_t end = std::min(hi, start + segment_size);
        acc.assign(end - start, 0);
        // Each divisor pair (d, m/d) with d <= sqrt(m) is added once.
        for (std::uint64_t d = 1; d * d < end; ++d) {
            std::uint64_t m = std::max(d * d, (start + d - 1) / d * d);
            for (std::uint64_t e = m / d; m < end; m += d, ++e) {
                acc[m - start] += e == d ? d : d + e;
            }
        }
        for (std::uint64_t m = start; m < end; ++m) visit(m, acc[m - start]);
    }
}

std::vector<std::uint64_t> sigma_table(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi > lo) out.reserve(hi - lo);
    for_each_sigma(lo, hi, [&](std::uint64_t, std::uint64_t s) { out.push_back(s); });
    return out;
}

SieveResult sieve_scan(std::uint64_t bound, const SieveOptions& options) {
    if (bound < 1) throw std::invalid_argument("sieve bound must be at least 1");
    if (bound > 1'000'000'000ULL && !options.allow_large) {
        throw SieveBudgetExceeded("sieve bound " + std::to_string(bound) + " exceeds 10^9 without opt-in");
    }
    SieveResult result;
    result.bound = bound;

    std::vector<std::uint64_t> samples;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, bound);
    const std::uint64_t wanted = std::min(options.cross_check_samples, bound);
    if (2 * wanted >= bound) {
        for (std::uint64_t n = 1; n <= bound; ++n) samples.push_back(n);
        std::shuffle(samples.begin(), samples.end(), rng);
        samples.resize(wanted);
        std::sort(samples.begin(), samples.end());
    } else {
        std::set<std::uint64_t> drawn;
        while (drawn.size() < wanted) drawn.insert(pick(rng));
        samples.assign(drawn.begin(), drawn.end());
    }
    auto next_sample = samples.begin();

    for_each_sigma(
        1, bound + 1,
        [&](std::uint64_t n, std::uint64_t s) {
            std::uint64_t twice = 2 * n;
            if (s < twice) {
                ++result.census.deficient;
            } else if (s == twice) {
                ++result.census.perfect;
                result.perfect.push_back(n);
                if (n % 2 == 1) ++result.odd_perfect_count;
            } else {
                ++result.census.abundant;
            }
            if (next_sample != samples.end() && *next_sample == n) {
                ++result.cross_checked;
                if (sigma_u64(n) != s) result.cross_check_mismatches.push_back(n);
                ++next_sample;
            }
        },
        options.segment_size);
    return result;
}

}  // namespace opnlab
