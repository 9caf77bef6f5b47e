#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "bellbound/complex_matrix.hpp"
#include "bellbound/eigen.hpp"
#include "bellbound/errors.hpp"

namespace bellbound {

// A pure state vector or a density matrix on a finite-dimensional space.
class QuantumState {
public:
    enum class Kind { PureVector, DensityMatrix };

    static QuantumState pure(const ComplexMatrix& column) {
        if (column.cols() != 1) throw ShapeError("pure state must be a column vector");
        if (!column.all_finite()) throw FeasibilityError("state has non-finite entries");
        const double nrm = column.frobenius_norm();
        if (std::abs(nrm - 1.0) > 1e-10)
            throw FeasibilityError("pure state norm " + std::to_string(nrm) + " is not 1");
        return QuantumState(Kind::PureVector, column);
    }

    // Normalizes, then validates; convenient for eigenvector input.
    static QuantumState pure_normalized(const ComplexMatrix& column) {
        if (column.cols() != 1) throw ShapeError("pure state must be a column vector");
        const double nrm = column.frobenius_norm();
        if (nrm < 1e-12) throw FeasibilityError("cannot normalize a zero vector");
        return pure((1.0 / nrm) * column);
    }

    static QuantumState density(const ComplexMatrix& rho, const Tolerances& tol = {}) {
        if (!rho.is_square()) throw ShapeError("density matrix must be square");
        if (!rho.all_finite()) throw FeasibilityError("density matrix has non-finite entries");
        if (rho.hermiticity_defect() > 1e-10)
            throw FeasibilityError("density matrix is not Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
            throw FeasibilityError("density matrix trace is not 1");
        const Spectrum s = hermitian_eigen(rho, tol);
        if (s.min_eigenvalue() < -1e-10)
            throw FeasibilityError("density matrix has eigenvalue " +
                                   std::to_string(s.min_eigenvalue()));
        return QuantumState(Kind::DensityMatrix, rho);
    }

    static QuantumState maximally_mixed(std::size_t dim) {
        return density((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
    }

    Kind kind() const { return kind_; }
    const ComplexMatrix& data() const { return data_; }
    std::size_t dimension() const { return data_.rows(); }

    ComplexMatrix density_matrix() const {
        if (kind_ == Kind::DensityMatrix) return data_;
        return data_ * data_.adjoint();
    }

private:
    QuantumState(Kind kind, ComplexMatrix data) : kind_(kind), data_(std::move(data)) {}

    Kind kind_;
    ComplexMatrix data_;
};

// <psi|op|psi> for pure states, tr(rho op) for density matrices. The
// operator must be Hermitian; the imaginary residue of the result is
// checked against the tolerance and discarded.
inline double expectation(const QuantumState& state, const ComplexMatrix& op,
                          const Tolerances& tol = {}) {
    if (!op.is_square()) throw ShapeError("expectation of a non-square operator");
    if (op.rows() != state.dimension())
        throw ShapeError("state dimension " + std::to_string(state.dimension()) +
                         " does not match operator dimension " + std::to_string(op.rows()));
    const double herm_tol = std::max(tol.herm, 1e-12 * std::max(1.0, op.max_abs()));
    if (op.hermiticity_defect() > herm_tol)
        throw SymmetryError("expectation requires a Hermitian operator");

    Complex value = 0.0;
    if (state.kind() == QuantumState::Kind::PureVector) {
        const ComplexMatrix& psi = state.data();
        for (std::size_t i = 0; i < op.rows(); ++i) {
            Complex row = 0.0;
            for (std::size_t j = 0; j < op.cols(); ++j) row += op.at(i, j) * psi.at(j, 0);
            value += std::conj(psi.at(i, 0)) * row;
        }
    } else {
        value = (state.data() * op).trace();
    }
    if (std::abs(value.imag()) > std::max(tol.herm, 1e-10 * std::max(1.0, std::abs(value))))
        throw SymmetryError("expectation has imaginary residue " +
                            std::to_string(value.imag()));
    return value.real();
}

} // namespace bellbound
