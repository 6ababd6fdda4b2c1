// observables.hpp
// The measurement frames of the n-bit multiplexing scenario: Bob's n
// mutually anticommuting dichotomic observables on dimension 2^(n/2),
// Alice's 2^(n-1) dual observables, the shared maximally entangled state,
// and checks of the parity constraints the construction must obey.
//
// Alice's observables are built from the transposed Bob observables,
//     A_i = (1/sqrt(n)) * sum_y (-1)^(bit y of x^i) * B_y^T,
// which is the unique dual frame for which every correlator on the
// diagonal maximally entangled state Sum_k |kk> / sqrt(d) takes the value
// (-1)^(bit y of x^i) / sqrt(n), so the Bell expression reaches
// 2^(n-1) * sqrt(n). (On that state <A (x) B> = tr(A B^T) / d.)

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bellseq/combinatorics.hpp"
#include "bellseq/matrix.hpp"

namespace bellseq {

// Largest n for which the matrix layer builds observables (dim 2^(n/2)).
inline constexpr int kMatrixLayerCap = 8;

inline int hilbert_dim(int n) { return 1 << (n / 2); }

// n pairwise-anticommuting Hermitian involutions of size 2^(n/2), built by
// recursion from the n=2 and n=3 Pauli bases.
inline std::vector<ComplexMatrix> bob_observables(int n, int n_cap = kMatrixLayerCap) {
    if (n < 2) throw std::invalid_argument("bob_observables: n must be at least 2");
    if (n > n_cap) throw std::invalid_argument("bob_observables: n above matrix-layer cap");
    if (n == 2) return {pauli_x(), pauli_y()};
    if (n == 3) return {pauli_x(), pauli_y(), pauli_z()};
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n % 2 == 0) {
        const auto prev = bob_observables(n - 1, n_cap);
        for (const auto& b : prev) out.push_back(kron(pauli_x(), b));
        out.push_back(kron(pauli_y(), ComplexMatrix::identity(prev.front().rows())));
    } else {
        const auto prev = bob_observables(n - 2, n_cap);
        const int d = prev.front().rows();
        for (const auto& b : prev) out.push_back(kron(pauli_x(), b));
        out.push_back(kron(pauli_y(), ComplexMatrix::identity(d)));
        out.push_back(kron(pauli_z(), ComplexMatrix::identity(d)));
    }
    return out;
}

namespace detail {

inline ComplexMatrix alice_from_bobs(const std::vector<ComplexMatrix>& bobs,
                                     const BitString& x) {
    const int n = static_cast<int>(bobs.size());
    ComplexMatrix a(bobs.front().rows(), bobs.front().cols());
    for (int y = 1; y <= n; ++y) {
        const double sign = x.bit(y) ? -1.0 : 1.0;
        a += sign * bobs[static_cast<std::size_t>(y - 1)].transpose();
    }
    return a * (1.0 / std::sqrt(static_cast<double>(n)));
}

}  // namespace detail

// Alice's i-th optimal observable, i in 1..2^(n-1) indexing the ordered
// input set.
inline ComplexMatrix alice_observable(int n, std::size_t i, int n_cap = kMatrixLayerCap) {
    const std::size_t half = std::size_t{1} << (n - 1);
    if (i < 1 || i > half)
        throw std::out_of_range("alice_observable: index must be in 1..2^(n-1)");
    const auto bobs = bob_observables(n, n_cap);
    return detail::alice_from_bobs(bobs, enumerate_inputs(n).at(i));
}

// The full frame for one n, built once.
struct ObservableSet {
    int n = 0;
    int dim = 0;
    std::vector<ComplexMatrix> bob;    // n observables
    std::vector<ComplexMatrix> alice;  // 2^(n-1) observables
};

inline ObservableSet make_observable_set(int n, int n_cap = kMatrixLayerCap) {
    ObservableSet set;
    set.n = n;
    set.bob = bob_observables(n, n_cap);
    set.dim = set.bob.front().rows();
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    set.alice.reserve(half);
    for (std::size_t i = 1; i <= half; ++i)
        set.alice.push_back(detail::alice_from_bobs(set.bob, inputs.at(i)));
    return set;
}

struct EntangledState {
    int n = 0;
    int dim = 0;
    ComplexMatrix rho;  // (dim^2 x dim^2) pure density matrix
};

// |phi> = (1/sqrt(d)) Sum_k |k>|k> with d = 2^(n/2), as a density matrix.
inline EntangledState max_entangled_state(int n, int n_cap = kMatrixLayerCap) {
    if (n < 2) throw std::invalid_argument("max_entangled_state: n must be at least 2");
    if (n > n_cap) throw std::invalid_argument("max_entangled_state: n above matrix-layer cap");
    EntangledState st;
    st.n = n;
    st.dim = hilbert_dim(n);
    const int d = st.dim;
    st.rho = ComplexMatrix(d * d, d * d);
    const double amp = 1.0 / d;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) st.rho(k * d + k, l * d + l) = amp;
    return st;
}

// The two remote states prepared by Alice measuring her i-th observable:
// rho_plus = 2 tr_A[(P (x) I) rho], rho_minus = 2 tr_A[((I-P) (x) I) rho]
// with P = (I + A_i)/2. first encodes x^i, second its complement.
inline std::pair<ComplexMatrix, ComplexMatrix> steered_states(int n, std::size_t i,
                                                              int n_cap = kMatrixLayerCap) {
    const auto state = max_entangled_state(n, n_cap);
    const int d = state.dim;
    const ComplexMatrix a = alice_observable(n, i, n_cap);
    const ComplexMatrix proj = 0.5 * (ComplexMatrix::identity(d) + a);
    const ComplexMatrix co_proj = ComplexMatrix::identity(d) - proj;
    const ComplexMatrix id = ComplexMatrix::identity(d);
    ComplexMatrix plus = partial_trace_first(kron(proj, id) * state.rho, d) * 2.0;
    ComplexMatrix minus = partial_trace_first(kron(co_proj, id) * state.rho, d) * 2.0;
    return {std::move(plus), std::move(minus)};
}

// Frobenius norm of the worst violated observable constraint
//     Sum_i (-1)^(s . x^i) A_i = 0,  s ranging over nontrivial_parities(n).
// Returns nullopt for n = 2, where no non-trivial constraint exists.
inline std::optional<double> verify_alice_constraints(int n, int n_cap = kMatrixLayerCap) {
    if (n < 2) throw std::invalid_argument("verify_alice_constraints: n must be at least 2");
    if (n == 2) return std::nullopt;
    const auto set = make_observable_set(n, n_cap);
    const auto inputs = enumerate_inputs(n);
    double worst = 0.0;
    for (const BitString& s : nontrivial_parities(n)) {
        ComplexMatrix sum(set.dim, set.dim);
        for (std::size_t i = 1; i <= set.alice.size(); ++i) {
            const double sign = parity_bit(s, inputs.at(i)) ? -1.0 : 1.0;
            sum += sign * set.alice[i - 1];
        }
        worst = std::max(worst, sum.frobenius_norm());
    }
    return worst;
}

// Worst-case Frobenius distance between the two equal-weight mixtures of
// steered states split by each parity s. Zero (to tolerance) certifies
// that no parity of the input string leaks to the receiver.
inline double verify_parity_obliviousness(int n, int n_cap = kMatrixLayerCap) {
    const auto inputs = enumerate_inputs(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    std::vector<ComplexMatrix> rho_by_delta(inputs.size());
    for (std::size_t i = 1; i <= half; ++i) {
        auto pair = steered_states(n, i, n_cap);
        rho_by_delta[i - 1] = std::move(pair.first);
        rho_by_delta[inputs.complement_index(i) - 1] = std::move(pair.second);
    }
    const int d = hilbert_dim(n);
    const double weight = 1.0 / static_cast<double>(half);
    double worst = 0.0;
    for (const BitString& s : parity_set(n)) {
        ComplexMatrix even(d, d), odd(d, d);
        for (std::size_t delta = 1; delta <= inputs.size(); ++delta) {
            if (parity_bit(s, inputs.at(delta)))
                odd += rho_by_delta[delta - 1];
            else
                even += rho_by_delta[delta - 1];
        }
        worst = std::max(worst, frobenius_distance(even * weight, odd * weight));
    }
    return worst;
}

}  // namespace bellseq
