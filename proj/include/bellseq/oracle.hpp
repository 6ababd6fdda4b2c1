// oracle.hpp
// Independent recomputation of the classical bounds by exhaustive
// enumeration of deterministic strategies, in exact integer arithmetic,
// plus a direct matrix confirmation of the quantum maximum. Kept free of
// the closed-form code it is meant to check.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bellseq/combinatorics.hpp"
#include "bellseq/matrix.hpp"
#include "bellseq/observables.hpp"

namespace bellseq {

// One deterministic assignment of +-1 outcomes to every observable.
struct DeterministicStrategy {
    std::vector<int> alice_signs;  // 2^(n-1) entries in {+1, -1}
    std::vector<int> bob_signs;    // n entries in {+1, -1}
};

// sum_y sum_i (-1)^(bit y of x^i) a_i b_y for one deterministic strategy.
inline std::int64_t bell_objective(int n, const DeterministicStrategy& strategy) {
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    if (strategy.alice_signs.size() != half ||
        strategy.bob_signs.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("bell_objective: strategy size mismatch");
    std::int64_t value = 0;
    for (int y = 1; y <= n; ++y)
        for (std::size_t i = 0; i < half; ++i) {
            const int sign = inputs.at(i + 1).bit(y) ? -1 : 1;
            value += sign * strategy.alice_signs[i] *
                     strategy.bob_signs[static_cast<std::size_t>(y - 1)];
        }
    return value;
}

namespace detail {

// sign_table[i][y-1] = (-1)^(bit y of x^(i+1)) for i in 0..2^(n-1)-1.
inline std::vector<std::vector<int>> bell_sign_table(int n) {
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    std::vector<std::vector<int>> table(half, std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < half; ++i)
        for (int y = 1; y <= n; ++y)
            table[i][static_cast<std::size_t>(y - 1)] = inputs.at(i + 1).bit(y) ? -1 : 1;
    return table;
}

// Maximum of sum_y |sum_i sign[i][y] a_i| over all sign vectors a, with an
// optional exact linear constraint set on a.
inline std::int64_t best_constrained_value(int n,
                                           const std::vector<std::vector<int>>& constraints) {
    const auto signs = bell_sign_table(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << half); ++mask) {
        std::vector<int> a(half);
        for (std::size_t i = 0; i < half; ++i) a[i] = (mask >> i & 1u) ? -1 : 1;

        bool feasible = true;
        for (const auto& row : constraints) {
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < half; ++i) sum += row[i] * a[i];
            if (sum != 0) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;

        // For fixed Alice signs the best Bob sign is the sign of the
        // coefficient, so the objective is a sum of absolute values.
        std::int64_t value = 0;
        for (int y = 0; y < n; ++y) {
            std::int64_t coeff = 0;
            for (std::size_t i = 0; i < half; ++i)
                coeff += signs[i][static_cast<std::size_t>(y)] * a[i];
            value += coeff >= 0 ? coeff : -coeff;
        }
        if (value > best) best = value;
    }
    return best;
}

}  // namespace detail

// Maximum over local deterministic strategies; must match local_bound(n).
inline std::int64_t local_bound_bruteforce(int n) {
    if (n < 2 || n > 5)
        throw std::invalid_argument("local_bound_bruteforce: n must lie in [2, 5]");
    return detail::best_constrained_value(n, {});
}

// Maximum over deterministic strategies whose Alice signs satisfy every
// non-trivial parity constraint exactly; must match pnc_bound(n).
inline std::int64_t pnc_bound_bruteforce(int n) {
    if (n < 3 || n > 5)
        throw std::invalid_argument("pnc_bound_bruteforce: n must lie in [3, 5]");
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    std::vector<std::vector<int>> constraints;
    for (const BitString& s : nontrivial_parities(n)) {
        std::vector<int> row(half);
        for (std::size_t i = 0; i < half; ++i)
            row[i] = parity_bit(s, inputs.at(i + 1)) ? -1 : 1;
        constraints.push_back(std::move(row));
    }
    // All-plus Alice signs satisfy every constraint, so the restricted
    // search space is never empty; a zero maximum would mean a bug in the
    // constraint rows.
    const std::int64_t best = detail::best_constrained_value(n, constraints);
    if (best == 0)
        throw std::runtime_error("pnc_bound_bruteforce: no feasible assignment found");
    return best;
}

// Bell value of the sharp-measurement configuration on the maximally
// entangled state, evaluated entirely with matrices.
inline double quantum_max_check(int n, int n_cap = kMatrixLayerCap) {
    const auto set = make_observable_set(n, n_cap);
    const auto state = max_entangled_state(n, n_cap);
    const auto inputs = enumerate_inputs(n);
    double value = 0.0;
    for (int y = 1; y <= n; ++y)
        for (std::size_t i = 1; i <= set.alice.size(); ++i) {
            const double sign = inputs.at(i).bit(y) ? -1.0 : 1.0;
            value += sign * expectation(state.rho,
                                        kron(set.alice[i - 1],
                                             set.bob[static_cast<std::size_t>(y - 1)]));
        }
    return value;
}

}  // namespace bellseq
