// measurement.hpp
// Two-parameter dichotomic POVMs: effect pairs with closed-form square
// roots, the unselective Luders update, and the scalar coherence factors
// xi and gamma that control how much correlation survives a measurement.

#pragma once

#include <cmath>
#include <stdexcept>

#include "bellseq/matrix.hpp"

namespace bellseq {

// Sharpness eta in (0, 1] and signed biasedness alpha, |alpha| + eta <= 1.
struct PovmParams {
    double eta;
    double alpha;

    explicit PovmParams(double eta_, double alpha_ = 0.0) : eta(eta_), alpha(alpha_) {
        if (!(eta > 0.0))
            throw std::invalid_argument("PovmParams: sharpness must be positive");
        if (std::abs(alpha) + eta > 1.0 + 1e-12)
            throw std::invalid_argument("PovmParams: |alpha| + eta must not exceed 1");
    }
};

// The POVM {plus, minus} together with the square roots used as Kraus
// operators. plus + minus = identity.
struct EffectPair {
    ComplexMatrix plus, minus;
    ComplexMatrix sqrt_plus, sqrt_minus;
};

// E(+-) = (1 +- alpha +- eta)/2 * P_plus + (1 +- alpha -+ eta)/2 * P_minus
// where P_(+-) = (I +- b_obs)/2 project onto the +-1 eigenspaces of b_obs.
// The square roots replace each coefficient by its square root.
inline EffectPair effects(const PovmParams& params, const ComplexMatrix& b_obs) {
    if (!b_obs.is_hermitian())
        throw std::invalid_argument("effects: observable must be Hermitian");
    const ComplexMatrix id = ComplexMatrix::identity(b_obs.rows());
    if (!(b_obs * b_obs).approx_equal(id))
        throw std::invalid_argument("effects: observable must square to identity");

    const double c_plus = (1.0 + params.alpha + params.eta) / 2.0;
    const double d_plus = (1.0 + params.alpha - params.eta) / 2.0;
    const double c_minus = (1.0 - params.alpha - params.eta) / 2.0;
    const double d_minus = (1.0 - params.alpha + params.eta) / 2.0;
    for (double coeff : {c_plus, d_plus, c_minus, d_minus})
        if (coeff < -1e-12)
            throw std::invalid_argument("effects: negative effect coefficient (invalid params)");
    const auto clamp0 = [](double v) { return v < 0.0 ? 0.0 : v; };

    const ComplexMatrix proj_plus = 0.5 * (id + b_obs);
    const ComplexMatrix proj_minus = 0.5 * (id - b_obs);

    EffectPair pair;
    pair.plus = clamp0(c_plus) * proj_plus + clamp0(d_plus) * proj_minus;
    pair.minus = clamp0(c_minus) * proj_plus + clamp0(d_minus) * proj_minus;
    pair.sqrt_plus = std::sqrt(clamp0(c_plus)) * proj_plus + std::sqrt(clamp0(d_plus)) * proj_minus;
    pair.sqrt_minus =
        std::sqrt(clamp0(c_minus)) * proj_plus + std::sqrt(clamp0(d_minus)) * proj_minus;
    return pair;
}

// xi = (sqrt((1+alpha)^2 - eta^2) + sqrt((1-alpha)^2 - eta^2)) / 2,
// the fraction of off-diagonal coherence an unselective measurement keeps.
inline double xi(const PovmParams& params) {
    const double r1 = (1.0 + params.alpha) * (1.0 + params.alpha) - params.eta * params.eta;
    const double r2 = (1.0 - params.alpha) * (1.0 - params.alpha) - params.eta * params.eta;
    if (r1 < -1e-12 || r2 < -1e-12)
        throw std::invalid_argument("xi: negative radicand (invalid params)");
    return (std::sqrt(std::max(r1, 0.0)) + std::sqrt(std::max(r2, 0.0))) / 2.0;
}

// gamma = (1 + (n-1) xi) / n: the factor by which each correlator of the
// shared state shrinks under one setting-averaged unselective measurement.
inline double gamma(int n, const PovmParams& params) {
    if (n < 2) throw std::invalid_argument("gamma: n must be at least 2");
    const double p = 1.0 / n;
    return p + (1.0 - p) * xi(params);
}

// Unselective update sum_b (I (x) sqrt(E_b)) rho (I (x) sqrt(E_b)) of a
// bipartite state whose first factor has dimension dimA.
inline ComplexMatrix luders_update(const ComplexMatrix& rho, const EffectPair& pair,
                                   int dimA) {
    if (!rho.is_square() || rho.rows() != dimA * pair.plus.rows())
        throw std::invalid_argument("luders_update: state dimension mismatch");
    const ComplexMatrix idA = ComplexMatrix::identity(dimA);
    const ComplexMatrix kp = kron(idA, pair.sqrt_plus);
    const ComplexMatrix km = kron(idA, pair.sqrt_minus);
    return kp * rho * kp + km * rho * km;
}

}  // namespace bellseq
