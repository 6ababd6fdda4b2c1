#include "doctest.h"

#include <cmath>
#include <random>

#include "bellseq/observables.hpp"

using namespace bellseq;

namespace {

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

// tr_B of a (dimA*dimB) square matrix; test-side helper for marginals.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, int dimB) {
    const int dimA = m.rows() / dimB;
    ComplexMatrix out(dimA, dimA);
    for (int b = 0; b < dimB; ++b)
        for (int i = 0; i < dimA; ++i)
            for (int j = 0; j < dimA; ++j) out(i, j) += m(i * dimB + b, j * dimB + b);
    return out;
}

// <v|m|v> >= -tol for a batch of random vectors; probabilistic PSD check.
bool looks_positive_semidefinite(const ComplexMatrix& m, std::mt19937& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int round = 0; round < 32; ++round) {
        std::vector<Complex> v(static_cast<std::size_t>(m.rows()));
        for (auto& z : v) z = Complex(dist(gen), dist(gen));
        Complex quad(0.0, 0.0);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                quad += std::conj(v[static_cast<std::size_t>(i)]) * m(i, j) *
                        v[static_cast<std::size_t>(j)];
        if (quad.real() < -1e-9) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("bob_observables base cases are the Pauli frames") {
    const auto b2 = bob_observables(2);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0].approx_equal(pauli_x(), 0.0));
    CHECK(b2[1].approx_equal(pauli_y(), 0.0));

    const auto b3 = bob_observables(3);
    REQUIRE(b3.size() == 3);
    CHECK(b3[2].approx_equal(pauli_z(), 0.0));
}

TEST_CASE("bob_observables n=4 matches the tensor construction") {
    const auto b4 = bob_observables(4);
    REQUIRE(b4.size() == 4);
    CHECK(b4[0].approx_equal(kron(pauli_x(), pauli_x()), 0.0));
    CHECK(b4[1].approx_equal(kron(pauli_x(), pauli_y()), 0.0));
    CHECK(b4[2].approx_equal(kron(pauli_x(), pauli_z()), 0.0));
    CHECK(b4[3].approx_equal(kron(pauli_y(), ComplexMatrix::identity(2)), 0.0));
}

TEST_CASE("bob_observables are Hermitian traceless involutions, pairwise anticommuting") {
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        const auto bobs = bob_observables(n);
        REQUIRE(bobs.size() == static_cast<std::size_t>(n));
        const int d = hilbert_dim(n);
        for (const auto& b : bobs) {
            CHECK(b.rows() == d);
            CHECK(b.is_hermitian());
            CHECK(std::abs(b.trace()) < 1e-12);
            CHECK((b * b).approx_equal(ComplexMatrix::identity(d)));
        }
        for (std::size_t a = 0; a < bobs.size(); ++a)
            for (std::size_t c = a + 1; c < bobs.size(); ++c)
                CHECK(anticommutator(bobs[a], bobs[c]).frobenius_norm() < 1e-9);
    }
    CHECK_THROWS_AS(bob_observables(9), std::invalid_argument);
    CHECK_THROWS_AS(bob_observables(1), std::invalid_argument);
}

TEST_CASE("alice_observable n=2 is the transposed-frame combination") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // x^1 = 00: (sigma_x^T + sigma_y^T)/sqrt(2) = (sigma_x - sigma_y)/sqrt(2)
    CHECK(alice_observable(2, 1).approx_equal(
        inv_sqrt2 * (pauli_x() - pauli_y()), 1e-12));
    // x^2 = 01: (sigma_x^T - sigma_y^T)/sqrt(2) = (sigma_x + sigma_y)/sqrt(2)
    CHECK(alice_observable(2, 2).approx_equal(
        inv_sqrt2 * (pauli_x() + pauli_y()), 1e-12));
    CHECK_THROWS_AS(alice_observable(2, 3), std::out_of_range);
    CHECK_THROWS_AS(alice_observable(2, 0), std::out_of_range);
}

TEST_CASE("alice observables square to identity") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto set = make_observable_set(n);
        REQUIRE(set.alice.size() == (std::size_t{1} << (n - 1)));
        for (const auto& a : set.alice) {
            CHECK(a.is_hermitian());
            CHECK((a * a).approx_equal(ComplexMatrix::identity(set.dim)));
        }
    }
}

TEST_CASE("signed sums of alice observables reproduce the transposed bob frame") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto set = make_observable_set(n);
        const auto inputs = enumerate_inputs(n);
        const double scale = std::exp2(n - 1) / std::sqrt(static_cast<double>(n));
        for (int y = 1; y <= n; ++y) {
            ComplexMatrix sum(set.dim, set.dim);
            for (std::size_t i = 1; i <= set.alice.size(); ++i) {
                const double sign = inputs.at(i).bit(y) ? -1.0 : 1.0;
                sum += sign * set.alice[i - 1];
            }
            CHECK(sum.approx_equal(
                scale * set.bob[static_cast<std::size_t>(y - 1)].transpose(), 1e-9));
        }
    }
}

TEST_CASE("max_entangled_state n=2 is the two-qubit Bell state") {
    const auto st = max_entangled_state(2);
    CHECK(st.dim == 2);
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    CHECK(st.rho.approx_equal(expected, 0.0));
}

TEST_CASE("max_entangled_state is pure with maximally mixed marginals") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        const auto st = max_entangled_state(n);
        CHECK(std::abs(st.rho.trace() - Complex(1.0, 0.0)) < 1e-12);
        CHECK(std::abs((st.rho * st.rho).trace() - Complex(1.0, 0.0)) < 1e-12);
        const auto id_over_d = (1.0 / st.dim) * ComplexMatrix::identity(st.dim);
        CHECK(partial_trace_first(st.rho, st.dim).approx_equal(id_over_d, 1e-12));
        CHECK(partial_trace_second(st.rho, st.dim).approx_equal(id_over_d, 1e-12));
    }
}

TEST_CASE("steered pairs average to the maximally mixed state") {
    std::mt19937 gen(2024);
    for (int n : {2, 3, 4}) {
        CAPTURE(n);
        const int d = hilbert_dim(n);
        const auto id_over_d = (1.0 / d) * ComplexMatrix::identity(d);
        for (std::size_t i = 1; i <= (std::size_t{1} << (n - 1)); ++i) {
            const auto [plus, minus] = steered_states(n, i);
            CHECK(std::abs(plus.trace() - Complex(1.0, 0.0)) < 1e-12);
            CHECK(std::abs(minus.trace() - Complex(1.0, 0.0)) < 1e-12);
            CHECK((0.5 * (plus + minus)).approx_equal(id_over_d, 1e-12));
            CHECK(looks_positive_semidefinite(plus, gen));
            CHECK(looks_positive_semidefinite(minus, gen));
        }
    }
}

TEST_CASE("steered state n=2 i=1 in closed form") {
    // remote state = (I + A_1^T)/2 with A_1 = (sigma_x - sigma_y)/sqrt(2)
    const auto [plus, minus] = steered_states(2, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto bloch = inv_sqrt2 * (pauli_x() + pauli_y());
    CHECK(plus.approx_equal(0.5 * (ComplexMatrix::identity(2) + bloch), 1e-12));
    CHECK(minus.approx_equal(0.5 * (ComplexMatrix::identity(2) - bloch), 1e-12));
}

TEST_CASE("observable constraints hold for n >= 3 and are absent at n = 2") {
    CHECK_FALSE(verify_alice_constraints(2).has_value());
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        const auto worst = verify_alice_constraints(n);
        REQUIRE(worst.has_value());
        CHECK(*worst < 1e-9);
    }
}

TEST_CASE("no parity of the input leaks from the steered ensembles") {
    for (int n = 2; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(verify_parity_obliviousness(n) < 1e-9);
    }
}
