// analytic.hpp
// Closed forms: classical bounds of the Bell family, the quantum value of
// the sequential chain, critical-sharpness threshold chains for the POVM
// families, and the approximate recursions that bound them.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellseq/measurement.hpp"

namespace bellseq {

enum class BoundKind { local, pnc, tsirelson };

inline const char* to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::local: return "local";
        case BoundKind::pnc: return "pnc";
        case BoundKind::tsirelson: return "tsirelson";
    }
    return "?";
}

// How the biasedness of Bob j is tied to his sharpness along a chain.
struct PovmFamily {
    enum class Kind { one_param, sum_to_one, fixed_alpha };
    Kind kind = Kind::one_param;
    double alpha0 = 0.0;

    static PovmFamily one_param() { return {Kind::one_param, 0.0}; }
    static PovmFamily sum_to_one() { return {Kind::sum_to_one, 0.0}; }
    static PovmFamily fixed_alpha(double alpha) {
        if (alpha < 0.0 || alpha >= 1.0)
            throw std::invalid_argument("PovmFamily: fixed alpha must lie in [0, 1)");
        return {Kind::fixed_alpha, alpha};
    }

    double alpha_at(double eta) const {
        switch (kind) {
            case Kind::one_param: return 0.0;
            case Kind::sum_to_one: return 1.0 - eta;
            case Kind::fixed_alpha: return alpha0;
        }
        return 0.0;
    }

    const char* name() const {
        switch (kind) {
            case Kind::one_param: return "one-param";
            case Kind::sum_to_one: return "sum-to-one";
            case Kind::fixed_alpha: return "fixed-alpha";
        }
        return "?";
    }
};

// Thrown when a fixed-alpha chain reaches a sharpness for which the POVM
// would violate |alpha| + eta <= 1; step() is the Bob that cannot measure.
class infeasible_family_error : public std::runtime_error {
public:
    infeasible_family_error(int step, double eta, double alpha)
        : std::runtime_error("infeasible POVM family at Bob " + std::to_string(step) +
                             ": alpha " + std::to_string(alpha) + " + eta " +
                             std::to_string(eta) + " exceeds 1"),
          step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

namespace detail {

using uint128 = unsigned __int128;

// Exact C(n, k); fits in 128 bits for n <= 120.
inline uint128 binomial_u128(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial: bad arguments");
    if (n > 120) throw std::invalid_argument("binomial: n above exact-arithmetic cap (120)");
    if (k > n - k) k = n - k;
    uint128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<uint128>(n - k + i);
        result /= static_cast<uint128>(i);  // exact: result is C(n-k+i, i) here
    }
    return result;
}

}  // namespace detail

// n * C(n-1, floor((n-1)/2)): the deterministic local maximum.
inline std::uint64_t local_bound(int n) {
    if (n < 2) throw std::invalid_argument("local_bound: n must be at least 2");
    if (n > 62) throw std::invalid_argument("local_bound: exceeds 64-bit range for n > 62");
    const auto c = detail::binomial_u128(n - 1, (n - 1) / 2);
    return static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(n);
}

// 2^(n-1): the maximum once the parity constraints are imposed.
inline std::uint64_t pnc_bound(int n) {
    if (n < 2) throw std::invalid_argument("pnc_bound: n must be at least 2");
    if (n > 64) throw std::invalid_argument("pnc_bound: exceeds 64-bit range for n > 64");
    return std::uint64_t{1} << (n - 1);
}

// 2^(n-1) sqrt(n): the quantum maximum.
inline double tsirelson_value(int n) {
    if (n < 2) throw std::invalid_argument("tsirelson_value: n must be at least 2");
    return std::exp2(n - 1) * std::sqrt(static_cast<double>(n));
}

// Critical sharpness of the first Bob: classical bound / quantum maximum.
inline double first_threshold(int n, BoundKind kind) {
    if (n < 2) throw std::invalid_argument("first_threshold: n must be at least 2");
    switch (kind) {
        case BoundKind::pnc:
            return 1.0 / std::sqrt(static_cast<double>(n));
        case BoundKind::local: {
            const auto c = detail::binomial_u128(n - 1, (n - 1) / 2);
            const long double num = static_cast<long double>(c) * n;
            const long double den =
                std::exp2(static_cast<long double>(n - 1)) * std::sqrt(static_cast<long double>(n));
            return static_cast<double>(num / den);
        }
        case BoundKind::tsirelson:
            throw std::invalid_argument("first_threshold: tsirelson is not a classical bound");
    }
    throw std::invalid_argument("first_threshold: unknown bound kind");
}

// 2^(n-1) sqrt(n) * eta_k * prod_{j<k} gamma(n, params_j): the Bell value
// seen by the last Bob with unbiased settings.
inline double bell_value_closed(int n, const std::vector<PovmParams>& params) {
    if (params.empty()) throw std::invalid_argument("bell_value_closed: needs at least one Bob");
    double value = tsirelson_value(n) * params.back().eta;
    for (std::size_t j = 0; j + 1 < params.size(); ++j) value *= gamma(n, params[j]);
    return value;
}

// Correlated-settings closed form (unbiased alpha = 0 family):
// 2^(n-1) sqrt(n) * eta_k * prod_{j<k} [ p_j + (1-p_j) sqrt(1-eta_j^2) ].
// ps[j] is the probability that Bob j+2 repeats Bob j+1's setting. Exact
// for k <= 2 at every p, and for any k at p = 1/n and p = 1; in between,
// chains of three or more Bobs deviate from this product because the
// repeat-previous protocol correlates the whole settings history (see
// bell_value_numeric_biased).
inline double bell_value_biased_closed(int n, const std::vector<double>& etas,
                                       const std::vector<double>& ps) {
    if (etas.empty())
        throw std::invalid_argument("bell_value_biased_closed: needs at least one Bob");
    if (ps.size() + 1 != etas.size())
        throw std::invalid_argument("bell_value_biased_closed: needs one p per prior Bob");
    double value = tsirelson_value(n) * etas.back();
    for (std::size_t j = 0; j + 1 < etas.size(); ++j) {
        if (ps[j] < 0.0 || ps[j] > 1.0)
            throw std::invalid_argument("bell_value_biased_closed: p must lie in [0, 1]");
        value *= ps[j] + (1.0 - ps[j]) * xi(PovmParams(etas[j], 0.0));
    }
    return value;
}

// The critical sharpness of each Bob in turn, every predecessor pinned at
// its own critical value. Stops after k_max entries or one entry >= 1.
struct ThresholdChain {
    int n = 0;
    BoundKind kind = BoundKind::local;
    PovmFamily family;
    std::vector<double> criticals;
    int shared_count = 0;  // entries strictly below 1
};

inline ThresholdChain threshold_chain(int n, BoundKind kind, const PovmFamily& family,
                                      int k_max) {
    if (kind == BoundKind::tsirelson)
        throw std::invalid_argument("threshold_chain: kind must be local or pnc");
    if (k_max < 1) throw std::invalid_argument("threshold_chain: k_max must be positive");
    ThresholdChain chain;
    chain.n = n;
    chain.kind = kind;
    chain.family = family;
    chain.criticals.push_back(first_threshold(n, kind));
    while (static_cast<int>(chain.criticals.size()) < k_max && chain.criticals.back() < 1.0) {
        const double eta_prev = chain.criticals.back();
        const double alpha = family.alpha_at(eta_prev);
        if (std::abs(alpha) + eta_prev > 1.0 + 1e-12)
            throw infeasible_family_error(static_cast<int>(chain.criticals.size()), eta_prev,
                                          alpha);
        chain.criticals.push_back(eta_prev / gamma(n, PovmParams(eta_prev, alpha)));
    }
    for (double eta : chain.criticals)
        if (eta < 1.0) ++chain.shared_count;
    return chain;
}

// Largest k whose critical sharpness is below 1 (the chain terminates:
// each step divides by a factor strictly below 1).
inline int max_sequential_bobs(int n, BoundKind kind, const PovmFamily& family) {
    const auto chain = threshold_chain(n, kind, family, 1 << 20);
    if (chain.criticals.back() < 1.0)
        throw std::runtime_error("max_sequential_bobs: chain did not terminate");
    return chain.shared_count;
}

// 1/sqrt(n-k+1): closed-form upper estimate of the k-th critical sharpness
// of the one-parameter chain against the parity-constrained bound.
inline double approx_threshold(int n, int k) {
    if (k < 1) throw std::invalid_argument("approx_threshold: k must be positive");
    if (k > n) throw std::domain_error("approx_threshold: requires k <= n");
    return 1.0 / std::sqrt(static_cast<double>(n - k + 1));
}

// Least n for which the k-th Bob can still violate the parity-constrained
// bound at final sharpness eta_final: ceil(k - 1 + 1/eta_final^2).
inline int min_n_for_k(int k, double eta_final) {
    if (k < 1) throw std::invalid_argument("min_n_for_k: k must be positive");
    if (!(eta_final > 0.0) || eta_final > 1.0)
        throw std::invalid_argument("min_n_for_k: eta_final must lie in (0, 1]");
    const double v = (k - 1) + 1.0 / (eta_final * eta_final);
    const double r = std::round(v);
    return static_cast<int>(std::abs(v - r) < 1e-9 ? r : std::ceil(v));
}

// Approximate chain step eta -> eta / sqrt(1 - eta^2) (one-parameter
// family); overestimates the exact step eta / gamma.
inline double approx_step_one_param(double eta_prev) {
    if (!(eta_prev > 0.0) || eta_prev >= 1.0)
        throw std::invalid_argument("approx_step_one_param: eta must lie in (0, 1)");
    return eta_prev / std::sqrt(1.0 - eta_prev * eta_prev);
}

// Approximate chain step eta -> eta / sqrt(1 - eta) (sum-to-one family).
inline double approx_step_sum_to_one(double eta_prev) {
    if (!(eta_prev > 0.0) || eta_prev >= 1.0)
        throw std::invalid_argument("approx_step_sum_to_one: eta must lie in (0, 1)");
    return eta_prev / std::sqrt(1.0 - eta_prev);
}

// Candidate chained closed form for the sum-to-one recursion, evaluated
// exactly as stated in its source:
//   [ eta_2^(2^(k-1)) * ( (1-eta_k) (1-eta_{k-1})^2 ... (1-eta_2)^(2^(k-2)) )^-1 ]^(-1/2)
// taking etas = {eta_2, ..., eta_k}. It does NOT reproduce the composition
// of approx_step_sum_to_one (see tests); kept so the discrepancy stays
// visible rather than silently corrected.
inline double sum_to_one_chained_form(const std::vector<double>& etas) {
    const std::size_t k_minus_1 = etas.size();  // entries eta_2 .. eta_k
    if (k_minus_1 < 2)
        throw std::invalid_argument("sum_to_one_chained_form: needs eta_2..eta_k, k >= 3");
    const double eta2 = etas.front();
    double product = 1.0;
    double exponent = 1.0;
    for (std::size_t idx = etas.size(); idx-- > 0;) {  // eta_k down to eta_2
        product *= std::pow(1.0 - etas[idx], exponent);
        exponent *= 2.0;
    }
    const double inner = std::pow(eta2, exponent) / product;  // exponent = 2^(k-1)
    return 1.0 / std::sqrt(inner);
}

}  // namespace bellseq
