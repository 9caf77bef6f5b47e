#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "bellbound/errors.hpp"

namespace bellbound {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Dimensions are capped at 64 per axis;
// that covers two sites of dimension up to 8 after tensor embedding.
inline constexpr std::size_t kDimensionCap = 64;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(1), cols_(1), entries_(1, Complex(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
        check_dims(rows, cols);
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        check_dims(rows, cols);
        if (entries_.size() != rows_ * cols_)
            throw ShapeError("entry count " + std::to_string(entries_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }

    // Row-major brace construction: ComplexMatrix{{1,0},{0,-1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        check_dims(rows_, cols_);
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw ShapeError("ragged initializer rows");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }

    static ComplexMatrix column(const std::vector<Complex>& v) {
        return ComplexMatrix(v.size(), 1, v);
    }

    bool all_finite() const {
        for (const Complex& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out.at(j, i) = std::conj(at(i, j));
        return out;
    }

    Complex trace() const {
        if (!is_square()) throw ShapeError("trace of a non-square matrix");
        Complex s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += at(i, i);
        return s;
    }

    // Largest entry magnitude.
    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    // Max-entry deviation from the adjoint; 0 for an exactly Hermitian matrix.
    double hermiticity_defect() const {
        if (!is_square()) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

    bool is_hermitian(double tol) const {
        return is_square() && hermiticity_defect() <= tol;
    }

    // (M + M†)/2.
    ComplexMatrix hermitian_part() const {
        if (!is_square()) throw ShapeError("hermitian part of a non-square matrix");
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out.at(i, j) = 0.5 * (at(i, j) + std::conj(at(j, i)));
        return out;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b, "+");
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            out.entries_[k] = a.entries_[k] + b.entries_[k];
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b, "-");
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            out.entries_[k] = a.entries_[k] - b.entries_[k];
        return out;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            out.entries_[k] = s * a.entries_[k];
        return out;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }
    friend ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, double s) { return Complex(s, 0.0) * a; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeError("product shape mismatch: " + shape_str(a) + " * " + shape_str(b));
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a.at(i, k);
                if (aik == Complex(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out.at(i, j) += aik * b.at(k, j);
            }
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows < 1 || cols < 1) throw ShapeError("matrix dimensions must be >= 1");
        if (rows > kDimensionCap || cols > kDimensionCap)
            throw SizeError("dimension " + std::to_string(std::max(rows, cols)) +
                            " exceeds cap " + std::to_string(kDimensionCap));
    }

    static std::string shape_str(const ComplexMatrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ShapeError(std::string("shape mismatch in ") + op + ": " +
                             shape_str(a) + " vs " + shape_str(b));
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// Kronecker product; block (i,j) of the result is lhs(i,j) * rhs.
inline ComplexMatrix tensor_product(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const std::size_t r = lhs.rows() * rhs.rows();
    const std::size_t c = lhs.cols() * rhs.cols();
    if (r > kDimensionCap || c > kDimensionCap)
        throw SizeError("tensor product dimension " + std::to_string(std::max(r, c)) +
                        " exceeds cap " + std::to_string(kDimensionCap));
    ComplexMatrix out(r, c);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            const Complex lij = lhs.at(i, j);
            for (std::size_t k = 0; k < rhs.rows(); ++k)
                for (std::size_t l = 0; l < rhs.cols(); ++l)
                    out.at(i * rhs.rows() + k, j * rhs.cols() + l) = lij * rhs.at(k, l);
        }
    return out;
}

// [x, y] = xy - yx.
inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (!x.is_square() || !y.is_square() || x.rows() != y.rows())
        throw ShapeError("commutator needs square matrices of equal dimension");
    return x * y - y * x;
}

// Trace over the second tensor factor: M on (da*db) -> da x da.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t da,
                                          std::size_t db) {
    if (!m.is_square() || m.rows() != da * db)
        throw ShapeError("partial trace dimension mismatch");
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < da; ++k) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < db; ++j) s += m.at(i * db + j, k * db + j);
            out.at(i, k) = s;
        }
    return out;
}

// Trace over the first tensor factor: M on (da*db) -> db x db.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t da,
                                         std::size_t db) {
    if (!m.is_square() || m.rows() != da * db)
        throw ShapeError("partial trace dimension mismatch");
    ComplexMatrix out(db, db);
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t l = 0; l < db; ++l) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < da; ++i) s += m.at(i * db + j, i * db + l);
            out.at(j, l) = s;
        }
    return out;
}

inline ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() {
    return ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
inline ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

// Unit-norm spin direction (theta, phi) on the Bloch sphere:
// sin(t)cos(p) X + sin(t)sin(p) Y + cos(t) Z. Eigenvalues are exactly +-1.
inline ComplexMatrix bloch_observable(double theta, double phi) {
    const double sx = std::sin(theta) * std::cos(phi);
    const double sy = std::sin(theta) * std::sin(phi);
    const double sz = std::cos(theta);
    return ComplexMatrix{{Complex(sz, 0.0), Complex(sx, -sy)},
                         {Complex(sx, sy), Complex(-sz, 0.0)}};
}

} // namespace bellbound
