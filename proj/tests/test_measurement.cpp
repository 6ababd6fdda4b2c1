#include "doctest.h"

#include <cmath>
#include <random>

#include "bellseq/measurement.hpp"
#include "bellseq/observables.hpp"

using namespace bellseq;

namespace {

PovmParams random_params(std::mt19937& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eta = 0.05 + 0.95 * unit(gen);
    const double alpha = (2.0 * unit(gen) - 1.0) * (1.0 - eta);
    return PovmParams(eta, alpha);
}

ComplexMatrix random_density(int dim, std::mt19937& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(dist(gen), dist(gen));
    ComplexMatrix rho = g * g.adjoint();
    return rho * (1.0 / rho.trace().real());
}

}  // namespace

TEST_CASE("PovmParams validate the sharpness/biasedness region") {
    CHECK_NOTHROW(PovmParams(1.0, 0.0));
    CHECK_NOTHROW(PovmParams(0.5, 0.5));
    CHECK_NOTHROW(PovmParams(0.5, -0.5));
    CHECK_THROWS_AS(PovmParams(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PovmParams(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PovmParams(0.6, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PovmParams(0.6, -0.5), std::invalid_argument);
}

TEST_CASE("sharp effects collapse to the projectors") {
    const auto pair = effects(PovmParams(1.0, 0.0), pauli_z());
    const auto proj_plus = 0.5 * (ComplexMatrix::identity(2) + pauli_z());
    const auto proj_minus = 0.5 * (ComplexMatrix::identity(2) - pauli_z());
    CHECK(pair.plus.approx_equal(proj_plus, 1e-12));
    CHECK(pair.minus.approx_equal(proj_minus, 1e-12));
    CHECK(pair.sqrt_plus.approx_equal(proj_plus, 1e-12));
}

TEST_CASE("unsharp effect of sigma_z is diagonal with the stated weights") {
    const auto pair = effects(PovmParams(0.5, 0.0), pauli_z());
    ComplexMatrix expected(2, 2);
    expected(0, 0) = 0.75;
    expected(1, 1) = 0.25;
    CHECK(pair.plus.approx_equal(expected, 1e-12));
}

TEST_CASE("effect pairs are complete with exact square roots") {
    std::mt19937 gen(99);
    const auto bobs = bob_observables(4);
    for (int round = 0; round < 20; ++round) {
        const auto params = random_params(gen);
        const auto& b = bobs[static_cast<std::size_t>(round % 4)];
        const auto pair = effects(params, b);
        const int d = b.rows();
        CHECK((pair.plus + pair.minus).approx_equal(ComplexMatrix::identity(d), 1e-12));
        CHECK((pair.sqrt_plus * pair.sqrt_plus).approx_equal(pair.plus, 1e-12));
        CHECK((pair.sqrt_minus * pair.sqrt_minus).approx_equal(pair.minus, 1e-12));
        // E+ - E- = alpha I + eta B
        const auto diff = pair.plus - pair.minus;
        const auto expected = params.alpha * ComplexMatrix::identity(d) + params.eta * b;
        CHECK(diff.approx_equal(expected, 1e-12));
    }
}

TEST_CASE("effects reject observables without a +-1 spectrum") {
    CHECK_THROWS_AS(effects(PovmParams(0.5, 0.0), 2.0 * pauli_z()), std::invalid_argument);
    ComplexMatrix not_hermitian(2, 2);
    not_hermitian(0, 1) = 1.0;
    CHECK_THROWS_AS(effects(PovmParams(0.5, 0.0), not_hermitian), std::invalid_argument);
}

TEST_CASE("xi closed forms") {
    CHECK(xi(PovmParams(0.5, 0.0)) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(xi(PovmParams(1.0, 0.0)) == doctest::Approx(0.0));
    CHECK(xi(PovmParams(0.5774, 0.18)) == doctest::Approx(0.8057).epsilon(1e-3));
}

TEST_CASE("xi is even in alpha and decreasing in eta") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 50; ++round) {
        const auto params = random_params(gen);
        CHECK(xi(params) ==
              doctest::Approx(xi(PovmParams(params.eta, -params.alpha))).epsilon(1e-14));
        const double smaller = params.eta * unit(gen) * 0.999 + 1e-6;
        CHECK(xi(PovmParams(smaller, params.alpha)) >= xi(params) - 1e-12);
    }
}

TEST_CASE("gamma closed forms and monotonicity in xi") {
    CHECK(gamma(2, PovmParams(1.0 / std::sqrt(2.0), 0.0)) ==
          doctest::Approx((1.0 + std::sqrt(0.5)) / 2.0).epsilon(1e-12));
    CHECK(gamma(3, PovmParams(1.0, 0.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(gamma(5, PovmParams(1.0, 0.0)) == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    CHECK(gamma(3, PovmParams(1.0 / std::sqrt(3.0), 0.0)) ==
          doctest::Approx(0.8776).epsilon(1e-3));

    // larger xi (smaller eta) gives larger gamma
    CHECK(gamma(3, PovmParams(0.3, 0.0)) > gamma(3, PovmParams(0.8, 0.0)));
}

TEST_CASE("luders_update in the sharp limit is the projector update") {
    std::mt19937 gen(31);
    const auto rho = random_density(4, gen);
    const auto pair = effects(PovmParams(1.0, 0.0), pauli_z());
    const auto updated = luders_update(rho, pair, 2);

    const auto id2 = ComplexMatrix::identity(2);
    const auto pp = kron(id2, 0.5 * (id2 + pauli_z()));
    const auto pm = kron(id2, 0.5 * (id2 - pauli_z()));
    CHECK(updated.approx_equal(pp * rho * pp + pm * rho * pm, 1e-12));
}

TEST_CASE("luders_update approaches the identity channel for tiny sharpness") {
    std::mt19937 gen(32);
    const auto rho = random_density(4, gen);
    const auto pair = effects(PovmParams(1e-5, 0.2), pauli_x());
    CHECK(frobenius_distance(luders_update(rho, pair, 2), rho) < 1e-9);
}

TEST_CASE("luders_update preserves the trace on random states") {
    std::mt19937 gen(33);
    for (int round = 0; round < 10; ++round) {
        const auto rho = random_density(4, gen);
        const auto params = random_params(gen);
        const auto pair = effects(params, pauli_y());
        const auto updated = luders_update(rho, pair, 2);
        CHECK(std::abs(updated.trace() - rho.trace()) < 1e-12);
    }
    CHECK_THROWS_AS(luders_update(ComplexMatrix::identity(3),
                                  effects(PovmParams(0.5, 0.0), pauli_z()), 2),
                    std::invalid_argument);
}

TEST_CASE("single-setting update splits into kept and dephased parts") {
    std::mt19937 gen(34);
    for (int round = 0; round < 10; ++round) {
        const auto rho = random_density(4, gen);
        const auto params = random_params(gen);
        const auto pair = effects(params, pauli_x());
        const auto updated = luders_update(rho, pair, 2);

        const auto id2 = ComplexMatrix::identity(2);
        const auto pp = kron(id2, 0.5 * (id2 + pauli_x()));
        const auto pm = kron(id2, 0.5 * (id2 - pauli_x()));
        const auto dephased = pp * rho * pp + pm * rho * pm;
        const double kept = xi(params);
        CHECK(updated.approx_equal(kept * rho + (1.0 - kept) * dephased, 1e-9));
    }
}
