// pomgame.hpp
// The n-bit parity-oblivious multiplexing game: the closed-form success
// probability and a Monte Carlo run of the full protocol (steered
// preparation, uniform queries, dichotomic readout).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "bellseq/analytic.hpp"
#include "bellseq/combinatorics.hpp"
#include "bellseq/measurement.hpp"
#include "bellseq/observables.hpp"

namespace bellseq {

// Reproducible randomness: std::mt19937_64 with fixed output mappings, so
// a seed pins the whole trajectory.
//   unit draws:  top 53 bits of one word, w >> 11, times 2^-53
//   index draws: floor(m * w / 2^64) via 128-bit multiply
class GameRng {
public:
    explicit GameRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t uniform_index(std::uint64_t m) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * m) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

struct GameRecord {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double empirical_p = 0.0;
    double analytic_p = 0.0;
    // outcome_counts[delta-1][y-1][b]: how often the receiver output b when
    // the encoded string was x^delta and the queried bit was y.
    std::vector<std::vector<std::array<std::uint64_t, 2>>> outcome_counts;
};

// 1/2 + bell_value / (2^n * n).
inline double success_probability(int n, double bell_value) {
    if (n < 2) throw std::invalid_argument("success_probability: n must be at least 2");
    return 0.5 + bell_value / (std::exp2(n) * n);
}

// Runs `trials` rounds: the sender draws a setting uniformly and measures
// (outcomes are equiprobable, so the encoded string is uniform over all
// 2^n), the receiver draws a query bit y uniformly and measures the y-th
// observable, outputting 0 on the + effect. Sharp readout unless povm is
// given.
inline GameRecord simulate_game(int n, std::uint64_t trials, std::uint64_t seed,
                                const std::optional<PovmParams>& povm = std::nullopt,
                                int n_cap = kMatrixLayerCap) {
    if (trials < 1) throw std::invalid_argument("simulate_game: needs at least one trial");
    const auto set = make_observable_set(n, n_cap);
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    const std::size_t total = inputs.size();
    const PovmParams readout = povm.value_or(PovmParams(1.0, 0.0));

    // p_plus[delta-1][y-1] = probability of the + effect on the steered
    // state encoding x^delta when the y-th observable is read out.
    std::vector<std::vector<double>> p_plus(total, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t i = 1; i <= half; ++i) {
        const auto pair = steered_states(n, i, n_cap);
        const std::size_t l = inputs.complement_index(i);
        for (int y = 1; y <= n; ++y) {
            const auto eff = effects(readout, set.bob[static_cast<std::size_t>(y - 1)]);
            p_plus[i - 1][static_cast<std::size_t>(y - 1)] = expectation(pair.first, eff.plus);
            p_plus[l - 1][static_cast<std::size_t>(y - 1)] = expectation(pair.second, eff.plus);
        }
    }

    GameRecord record;
    record.n = n;
    record.trials = trials;
    record.outcome_counts.assign(total,
                                 std::vector<std::array<std::uint64_t, 2>>(
                                     static_cast<std::size_t>(n), {0, 0}));

    GameRng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t i = static_cast<std::size_t>(rng.uniform_index(half)) + 1;
        const bool sender_plus = rng.uniform01() < 0.5;
        const std::size_t delta = sender_plus ? i : inputs.complement_index(i);
        const std::size_t y = static_cast<std::size_t>(rng.uniform_index(
                                  static_cast<std::uint64_t>(n))) + 1;
        const int b = rng.uniform01() < p_plus[delta - 1][y - 1] ? 0 : 1;
        record.outcome_counts[delta - 1][y - 1][static_cast<std::size_t>(b)] += 1;
        if (b == inputs.at(delta).bit(static_cast<int>(y))) ++record.successes;
    }
    record.empirical_p = static_cast<double>(record.successes) / static_cast<double>(trials);
    record.analytic_p = success_probability(n, tsirelson_value(n) * readout.eta);
    return record;
}

}  // namespace bellseq
