// matrix.hpp
// Dense complex matrices, just large enough for the simulations here:
// products, Kronecker products, partial trace over the first factor,
// expectation values and Frobenius distances. No eigensolver; every
// spectral object used by the library is available in closed form.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bellseq {

using Complex = std::complex<double>;

inline constexpr double kMatrixTolerance = 1e-9;
inline constexpr int kKronDimCap = 4096;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(check_shape(rows, cols), Complex(0.0, 0.0)) {}

    ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != check_shape(rows, cols))
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
        for (const Complex& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(int r, int c) { return data_[index(r, c)]; }
    const Complex& operator()(int r, int c) const { return data_[index(r, c)]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex z) {
        for (Complex& v : data_) v *= z;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex z) { return a *= z; }
    friend ComplexMatrix operator*(Complex z, ComplexMatrix a) { return a *= z; }
    friend ComplexMatrix operator*(ComplexMatrix a, double z) { return a *= Complex(z, 0.0); }
    friend ComplexMatrix operator*(double z, ComplexMatrix a) { return a *= Complex(z, 0.0); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0, 0.0); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("ComplexMatrix: inner dimensions do not match");
        ComplexMatrix out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex(0.0, 0.0)) continue;
                const Complex* brow = &b.data_[static_cast<std::size_t>(k) * b.cols_];
                Complex* orow = &out.data_[static_cast<std::size_t>(i) * out.cols_];
                for (int j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
            }
        }
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Complex trace() const {
        if (!is_square()) throw std::invalid_argument("ComplexMatrix::trace: matrix not square");
        Complex t(0.0, 0.0);
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    bool is_hermitian(double tol = kMatrixTolerance) const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    bool approx_equal(const ComplexMatrix& o, double tol = kMatrixTolerance) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (std::abs(data_[i] - o.data_[i]) > tol) return false;
        return true;
    }

private:
    static std::size_t check_shape(int rows, int cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("ComplexMatrix: negative dimension");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    std::size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("ComplexMatrix: index out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("ComplexMatrix: shape mismatch");
    }

    int rows_, cols_;
    std::vector<Complex> data_;
};

inline ComplexMatrix pauli_x() {
    return ComplexMatrix(2, 2, {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
}
inline ComplexMatrix pauli_y() {
    return ComplexMatrix(2, 2, {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)});
}
inline ComplexMatrix pauli_z() {
    return ComplexMatrix(2, 2, {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)});
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          int dim_cap = kKronDimCap) {
    const long long rr = 1LL * a.rows() * b.rows();
    const long long cc = 1LL * a.cols() * b.cols();
    if (rr > dim_cap || cc > dim_cap)
        throw std::invalid_argument("kron: result exceeds dimension cap");
    ComplexMatrix out(static_cast<int>(rr), static_cast<int>(cc));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

// Trace over the first tensor factor of a (dimA * dimB) square matrix.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& m, int dimA) {
    if (!m.is_square()) throw std::invalid_argument("partial_trace_first: matrix not square");
    if (dimA < 1 || m.rows() % dimA != 0)
        throw std::invalid_argument("partial_trace_first: dimension not divisible by dimA");
    const int dimB = m.rows() / dimA;
    ComplexMatrix out(dimB, dimB);
    for (int a = 0; a < dimA; ++a)
        for (int i = 0; i < dimB; ++i)
            for (int j = 0; j < dimB; ++j)
                out(i, j) += m(a * dimB + i, a * dimB + j);
    return out;
}

// Re tr(rho * obs); throws if the trace has a non-negligible imaginary part.
inline double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs,
                          double imag_tol = kMatrixTolerance) {
    if (!rho.is_square() || !obs.is_square() || rho.rows() != obs.rows())
        throw std::invalid_argument("expectation: dimensions do not match");
    Complex t(0.0, 0.0);
    for (int i = 0; i < rho.rows(); ++i)
        for (int j = 0; j < rho.cols(); ++j) t += rho(i, j) * obs(j, i);
    if (std::abs(t.imag()) > imag_tol)
        throw std::runtime_error("expectation: trace has imaginary residue above tolerance");
    return t.real();
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

}  // namespace bellseq
