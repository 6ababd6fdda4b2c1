// cascade.hpp
// Density-matrix simulation of the sequential measurement chain: one Alice
// measuring sharply, k Bobs measuring unsharply in turn on the same
// particle. Produces the Bell value seen by the last Bob, for unbiased and
// for correlated (biased) setting choices.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bellseq/combinatorics.hpp"
#include "bellseq/matrix.hpp"
#include "bellseq/measurement.hpp"
#include "bellseq/observables.hpp"

namespace bellseq {

struct CascadeConfig {
    int n = 2;
    std::vector<PovmParams> bobs;          // params of Bob 1..k, in order
    std::optional<double> bias_p;          // repeat probability; nullopt = unbiased (1/n)
    int n_cap = kMatrixLayerCap;

    void validate() const {
        if (bobs.empty()) throw std::invalid_argument("CascadeConfig: needs at least one Bob");
        if (bias_p && (*bias_p < 0.0 || *bias_p > 1.0))
            throw std::invalid_argument("CascadeConfig: bias_p must lie in [0, 1]");
    }
};

struct CascadeResult {
    double bell_value = 0.0;
    std::vector<ComplexMatrix> per_bob_states;  // pre-measurement state of each Bob, if kept
    std::vector<double> settings_weights;       // marginal setting distribution (uniform)
};

namespace detail {

// (1/n) sum_y  sum_b (I (x) sqrt(E_b,y)) rho (I (x) sqrt(E_b,y))
inline ComplexMatrix setting_averaged_update(const ComplexMatrix& rho,
                                             const ObservableSet& set,
                                             const PovmParams& params) {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const ComplexMatrix& b : set.bob)
        out += luders_update(rho, effects(params, b), set.dim);
    return out * (1.0 / static_cast<double>(set.n));
}

// sum_y sum_i (-1)^(bit y of x^i) tr[rho (A_i (x) (E+_y - E-_y))]
inline double bell_functional(const ComplexMatrix& rho, const ObservableSet& set,
                              const PovmParams& params) {
    const auto inputs = enumerate_inputs(set.n);
    double value = 0.0;
    for (int y = 1; y <= set.n; ++y) {
        const auto pair = effects(params, set.bob[static_cast<std::size_t>(y - 1)]);
        const ComplexMatrix diff = pair.plus - pair.minus;
        for (std::size_t i = 1; i <= set.alice.size(); ++i) {
            const double sign = inputs.at(i).bit(y) ? -1.0 : 1.0;
            value += sign * expectation(rho, kron(set.alice[i - 1], diff));
        }
    }
    return value;
}

// Same as bell_functional, but each setting y is evaluated on its own
// conditional state (used by the biased protocol).
inline double bell_functional_per_setting(const std::vector<ComplexMatrix>& rho_by_setting,
                                          const ObservableSet& set, const PovmParams& params) {
    const auto inputs = enumerate_inputs(set.n);
    double value = 0.0;
    for (int y = 1; y <= set.n; ++y) {
        const auto pair = effects(params, set.bob[static_cast<std::size_t>(y - 1)]);
        const ComplexMatrix diff = pair.plus - pair.minus;
        for (std::size_t i = 1; i <= set.alice.size(); ++i) {
            const double sign = inputs.at(i).bit(y) ? -1.0 : 1.0;
            value += sign * expectation(rho_by_setting[static_cast<std::size_t>(y - 1)],
                                        kron(set.alice[i - 1], diff));
        }
    }
    return value;
}

}  // namespace detail

// State shared between Alice and Bob number `upto` (1-based), i.e. the
// maximally entangled state after the unselective setting-averaged
// measurements of Bobs 1..upto-1.
inline ComplexMatrix sequential_state(const CascadeConfig& config, std::size_t upto) {
    config.validate();
    if (upto < 1 || upto > config.bobs.size())
        throw std::out_of_range("sequential_state: Bob index out of range");
    const auto set = make_observable_set(config.n, config.n_cap);
    ComplexMatrix rho = max_entangled_state(config.n, config.n_cap).rho;
    for (std::size_t j = 0; j + 1 < upto; ++j)
        rho = detail::setting_averaged_update(rho, set, config.bobs[j]);
    return rho;
}

// Bell value recorded by the last Bob of the chain, unbiased settings.
inline double bell_value_numeric(const CascadeConfig& config) {
    config.validate();
    const auto set = make_observable_set(config.n, config.n_cap);
    ComplexMatrix rho = max_entangled_state(config.n, config.n_cap).rho;
    for (std::size_t j = 0; j + 1 < config.bobs.size(); ++j)
        rho = detail::setting_averaged_update(rho, set, config.bobs[j]);
    return detail::bell_functional(rho, set, config.bobs.back());
}

// Bell value for the correlated-settings protocol: from the second Bob on,
// each Bob repeats the previous setting with probability bias_p and picks
// each of the other n-1 settings with probability (1-bias_p)/(n-1). The
// first Bob chooses uniformly. Exact mixture of branch states, no sampling.
//
// With one prior Bob this equals bell_value_biased_closed for every p.
// For longer chains the settings form a Markov chain, so the value matches
// the per-Bob product form only at p = 1/n (unbiased) and p = 1.
inline double bell_value_numeric_biased(const CascadeConfig& config) {
    config.validate();
    if (!config.bias_p)
        throw std::invalid_argument("bell_value_numeric_biased: bias_p is not set");
    if (config.n < 2 || config.n > 3)
        throw std::invalid_argument("bell_value_numeric_biased: validated for n = 2 or 3 only");
    const double p = *config.bias_p;
    const auto set = make_observable_set(config.n, config.n_cap);
    const std::size_t n = static_cast<std::size_t>(config.n);
    const std::size_t k = config.bobs.size();

    const ComplexMatrix rho0 = max_entangled_state(config.n, config.n_cap).rho;

    // branch[y] = state conditioned on the previous Bob having measured
    // setting y; the marginal setting distribution stays uniform.
    std::vector<ComplexMatrix> branch;
    std::vector<ComplexMatrix> seen_by_last(n, rho0);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<ComplexMatrix> seen(n, ComplexMatrix(rho0.rows(), rho0.cols()));
        for (std::size_t y = 0; y < n; ++y) {
            if (j == 0) {
                seen[y] = rho0;  // Bob 1 sees the fresh state whatever he picks
            } else {
                for (std::size_t y_prev = 0; y_prev < n; ++y_prev) {
                    const double w = (y_prev == y) ? p : (1.0 - p) / (config.n - 1);
                    seen[y] += w * branch[y_prev];
                }
            }
        }
        seen_by_last = seen;
        if (j + 1 == k) break;
        branch.assign(n, ComplexMatrix(rho0.rows(), rho0.cols()));
        for (std::size_t y = 0; y < n; ++y)
            branch[y] = luders_update(seen[y], effects(config.bobs[j], set.bob[y]), set.dim);
    }
    return detail::bell_functional_per_setting(seen_by_last, set, config.bobs.back());
}

// Full simulation record; per-Bob pre-measurement states kept on request.
inline CascadeResult run_cascade(const CascadeConfig& config, bool keep_states = false) {
    config.validate();
    CascadeResult result;
    result.settings_weights.assign(static_cast<std::size_t>(config.n),
                                   1.0 / static_cast<double>(config.n));
    if (config.bias_p) {
        result.bell_value = bell_value_numeric_biased(config);
        return result;
    }
    const auto set = make_observable_set(config.n, config.n_cap);
    ComplexMatrix rho = max_entangled_state(config.n, config.n_cap).rho;
    if (keep_states) result.per_bob_states.push_back(rho);
    for (std::size_t j = 0; j + 1 < config.bobs.size(); ++j) {
        rho = detail::setting_averaged_update(rho, set, config.bobs[j]);
        if (keep_states) result.per_bob_states.push_back(rho);
    }
    result.bell_value = detail::bell_functional(rho, set, config.bobs.back());
    return result;
}

}  // namespace bellseq
