#include "opnlab/search.hpp"

#include <map>

namespace opnlab {

std::string_view to_string(ChainStatus s) noexcept {
    switch (s) {
        case ChainStatus::Open: return "open";
        case ChainStatus::ClosedByDepth: return "closed-by-depth";
        case ChainStatus::ClosedByBound: return "closed-by-bound";
        case ChainStatus::Contradiction: return "contradiction";
    }
    return "?";
}

namespace {

class ChainBuilder {
public:
    ChainBuilder(unsigned depth, const Natural& bound, const ChainOptions& options)
        : depth_(depth), bound_(bound), options_(options) {}

    SigmaChainNode expand(const Natural& p, unsigned long e, unsigned level, const Rational& abundancy_so_far) {
        SigmaChainNode node;
        node.prime = p;
        node.exponent = e;
        node.sigma_value = sigma_prime_power(p, e);

        bool fresh = !path_.contains(p);
        node.path_abundancy = abundancy_so_far;
        if (fresh) {
            Natural power;
            mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e);
            node.path_abundancy *= make_rational(node.sigma_value, power);
            if (power > bound_) {
                node.status = ChainStatus::ClosedByBound;
                return node;
            }
        }
        if (node.path_abundancy > 2) {
            node.status = ChainStatus::Contradiction;
            return node;
        }
        if (level >= depth_) {
            node.status = ChainStatus::ClosedByDepth;
            return node;
        }

        if (fresh) path_.emplace(p, e);
        for (const auto& [r, multiplicity] : factor(node.sigma_value, options_.factoring)) {
            (void)multiplicity;
            if (r == 2) continue;
            if (auto it = path_.find(r); it != path_.end()) {
                node.children.push_back(expand(r, it->second, level + 1, node.path_abundancy));
                continue;
            }
            for (unsigned long trial : options_.exponents) {
                node.children.push_back(expand(r, trial, level + 1, node.path_abundancy));
            }
        }
        if (fresh) path_.erase(p);
        node.status = ChainStatus::Open;
        return node;
    }

private:
    unsigned depth_;
    const Natural& bound_;
    const ChainOptions& options_;
    std::map<Natural, unsigned long> path_;
};

}  // namespace

SigmaChainNode sigma_chain(const Natural& q, unsigned long k, unsigned depth, const Natural& magnitude_bound,
                           const ChainOptions& options) {
    if (!is_prime(q) || q % 4 != 1) throw std::invalid_argument("chain root must be a prime = 1 (mod 4)");
    if (k % 4 != 1) throw std::invalid_argument("chain root exponent must be = 1 (mod 4)");
    for (auto e : options.exponents) {
        if (e == 0 || e % 2 != 0) throw std::invalid_argument("trial exponents must be positive and even");
    }
    ChainBuilder builder(depth, magnitude_bound, options);
    return builder.expand(q, k, 0, Rational(1));
}

std::size_t verify_chain(const SigmaChainNode& root) {
    std::size_t failures = 0;
    if (root.sigma_value != sigma_prime_power(root.prime, root.exponent)) ++failures;
    for (const auto& child : root.children) {
        if (child.prime % 2 == 0 || !mpz_divisible_p(root.sigma_value.get_mpz_t(), child.prime.get_mpz_t())) {
            ++failures;
        }
        failures += verify_chain(child);
    }
    return failures;
}

std::size_t chain_size(const SigmaChainNode& root) {
    std::size_t total = 1;
    for (const auto& child : root.children) total += chain_size(child);
    return total;
}

}  // namespace opnlab
