#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bellbound/complex_matrix.hpp"
#include "bellbound/eigen.hpp"
#include "bellbound/errors.hpp"
#include "bellbound/state.hpp"

namespace bellbound {

enum class Site { ArmA, ArmB, Shared };

enum class Embedding { TensorEmbedded, SharedSpace };

// Closed interval the observable spectra must live in.
struct ValueRange {
    double lo = -1.0;
    double hi = 1.0;
};

inline constexpr ValueRange kOutcomeRange{-1.0, 1.0};      // outcome-valued
inline constexpr ValueRange kProbabilityRange{0.0, 1.0};   // transmission-valued

// A Hermitian measurement operator tagged with the site it acts on.
struct Observable {
    ComplexMatrix matrix;
    Site site = Site::Shared;
    std::string label;

    static Observable make(ComplexMatrix m, Site site, std::string label,
                           const Tolerances& tol = {}) {
        if (!m.is_square()) throw ShapeError("observable must be square: " + label);
        if (!m.all_finite()) throw FeasibilityError("observable has non-finite entries: " + label);
        if (m.hermiticity_defect() > tol.herm)
            throw SymmetryError("observable is not Hermitian: " + label);
        return Observable{std::move(m), site, std::move(label)};
    }

    std::size_t dimension() const { return matrix.rows(); }
};

// Four observables plus how they are composed into one operator.
struct BellScenario {
    Observable a1, a2, b1, b2;
    Embedding embedding = Embedding::TensorEmbedded;
    ValueRange value_range = kOutcomeRange;

    std::size_t dim_a() const { return a1.dimension(); }
    std::size_t dim_b() const { return b1.dimension(); }
    std::size_t total_dimension() const {
        return embedding == Embedding::TensorEmbedded ? dim_a() * dim_b() : a1.dimension();
    }
};

enum class Regime { Classical, LocalHiddenVariable, Nonlocal };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Classical: return "classical";
        case Regime::LocalHiddenVariable: return "local";
        case Regime::Nonlocal: return "nonlocal";
    }
    return "?";
}

// Which operator pairs commute, the matching bound, and the evidence.
struct CommutationRegime {
    Regime regime;
    double expected_bound; // exactly 2, 2*sqrt(2) or 2*sqrt(3)
    std::vector<std::pair<std::string, double>> witness; // pair label -> commutator norm
};

inline double regime_bound(Regime r) {
    switch (r) {
        case Regime::Classical: return 2.0;
        case Regime::LocalHiddenVariable: return 2.0 * std::sqrt(2.0);
        case Regime::Nonlocal: return 2.0 * std::sqrt(3.0);
    }
    return 0.0;
}

namespace detail {

inline void check_spectrum_in_range(const Observable& o, const ValueRange& r,
                                    const Tolerances& tol) {
    const Spectrum s = hermitian_eigen(o.matrix, tol);
    if (s.max_eigenvalue() > r.hi + tol.feasibility ||
        s.min_eigenvalue() < r.lo - tol.feasibility)
        throw FeasibilityError("observable " + o.label + " has spectrum [" +
                               std::to_string(s.min_eigenvalue()) + ", " +
                               std::to_string(s.max_eigenvalue()) + "] outside [" +
                               std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
}

} // namespace detail

// Validate and assemble a scenario. TensorEmbedded expects the a-observables
// tagged ArmA and the b-observables ArmB; they will act as a (x) I and
// I (x) b. SharedSpace expects one common dimension.
inline BellScenario build_scenario(Observable a1, Observable a2, Observable b1,
                                   Observable b2, Embedding embedding,
                                   ValueRange value_range = kOutcomeRange,
                                   const Tolerances& tol = {}) {
    if (!(value_range.lo <= value_range.hi) || !std::isfinite(value_range.lo) ||
        !std::isfinite(value_range.hi))
        throw RangeError("invalid value range");

    if (embedding == Embedding::TensorEmbedded) {
        if (a1.site != Site::ArmA || a2.site != Site::ArmA)
            throw ShapeError("tensor scenario requires a-observables on arm A");
        if (b1.site != Site::ArmB || b2.site != Site::ArmB)
            throw ShapeError("tensor scenario requires b-observables on arm B");
        if (a1.dimension() != a2.dimension())
            throw ShapeError("a1 and a2 dimensions differ");
        if (b1.dimension() != b2.dimension())
            throw ShapeError("b1 and b2 dimensions differ");
        if (a1.dimension() * b1.dimension() > kDimensionCap)
            throw SizeError("embedded dimension exceeds cap");
    } else {
        const std::size_t d = a1.dimension();
        if (a2.dimension() != d || b1.dimension() != d || b2.dimension() != d)
            throw ShapeError("shared-space scenario requires one common dimension");
    }

    for (const Observable* o : {&a1, &a2, &b1, &b2})
        detail::check_spectrum_in_range(*o, value_range, tol);

    return BellScenario{std::move(a1), std::move(a2), std::move(b1), std::move(b2),
                        embedding, value_range};
}

// The CHSH combination as one operator. TensorEmbedded composes by
// Kronecker products (Hermitian result); SharedSpace by plain matrix
// products (generally non-Hermitian).
inline ComplexMatrix bell_operator(const BellScenario& s) {
    if (s.embedding == Embedding::TensorEmbedded) {
        return tensor_product(s.a1.matrix, s.b1.matrix) +
               tensor_product(s.a2.matrix, s.b1.matrix) +
               tensor_product(s.a1.matrix, s.b2.matrix) -
               tensor_product(s.a2.matrix, s.b2.matrix);
    }
    return s.a1.matrix * s.b1.matrix + s.a2.matrix * s.b1.matrix +
           s.a1.matrix * s.b2.matrix - s.a2.matrix * s.b2.matrix;
}

// Expectation of the combination. SharedSpace reports the Hermitian part
// (B + B†)/2, the only state-independent real reading; pair it with
// magnitude_bound for the full picture.
inline double bell_expectation(const BellScenario& s, const QuantumState& state,
                               const Tolerances& tol = {}) {
    const ComplexMatrix b = bell_operator(s);
    if (s.embedding == Embedding::TensorEmbedded) return expectation(state, b, tol);
    return expectation(state, b.hermitian_part(), tol);
}

// sqrt(<B†B>) in the given state; never below |<B>| and never above 4
// for feasible scenarios in the default range.
inline double magnitude_bound(const BellScenario& s, const QuantumState& state,
                              const Tolerances& tol = {}) {
    const ComplexMatrix b = bell_operator(s);
    ComplexMatrix gram = (b.adjoint() * b).hermitian_part();
    Tolerances t = tol;
    t.herm = std::max(t.herm, 1e-12 * std::max(1.0, gram.max_abs()));
    return std::sqrt(std::max(0.0, expectation(state, gram, t)));
}

// Inspect all six pairwise commutators and label the scenario. Cross-site
// pairs are evaluated in the embedded space for TensorEmbedded scenarios,
// where they vanish identically.
inline CommutationRegime classify_regime(const BellScenario& s, double tol = 1e-9) {
    ComplexMatrix A1 = s.a1.matrix, A2 = s.a2.matrix, B1 = s.b1.matrix, B2 = s.b2.matrix;
    if (s.embedding == Embedding::TensorEmbedded) {
        const ComplexMatrix ia = ComplexMatrix::identity(s.dim_a());
        const ComplexMatrix ib = ComplexMatrix::identity(s.dim_b());
        A1 = tensor_product(s.a1.matrix, ib);
        A2 = tensor_product(s.a2.matrix, ib);
        B1 = tensor_product(ia, s.b1.matrix);
        B2 = tensor_product(ia, s.b2.matrix);
    }

    CommutationRegime out;
    const auto norm_of = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        return commutator(x, y).max_abs();
    };
    const double same_a = norm_of(A1, A2);
    const double same_b = norm_of(B1, B2);
    const std::array<std::pair<std::string, double>, 6> pairs{{
        {"[a1,a2]", same_a},
        {"[b1,b2]", same_b},
        {"[a1,b1]", norm_of(A1, B1)},
        {"[a1,b2]", norm_of(A1, B2)},
        {"[a2,b1]", norm_of(A2, B1)},
        {"[a2,b2]", norm_of(A2, B2)},
    }};
    out.witness.assign(pairs.begin(), pairs.end());

    bool cross_nonzero = false;
    for (std::size_t k = 2; k < pairs.size(); ++k)
        cross_nonzero = cross_nonzero || pairs[k].second >= tol;
    const bool same_nonzero = same_a >= tol || same_b >= tol;

    if (cross_nonzero)
        out.regime = Regime::Nonlocal;
    else if (same_nonzero)
        out.regime = Regime::LocalHiddenVariable;
    else
        out.regime = Regime::Classical;
    out.expected_bound = regime_bound(out.regime);
    return out;
}

// Change of the CHSH combination when the two settings of arm A are
// interchanged: |(E11+E21+E12-E22) - (E21+E11+E22-E12)| = 2|E12 - E22|.
// Zero exactly when the combination is insensitive to the interchange.
inline double swap_assumption_delta(double e11, double e21, double e12, double e22) {
    for (double e : {e11, e21, e12, e22})
        if (!(std::abs(e) <= 1.0 + 1e-12))
            throw RangeError("correlation " + std::to_string(e) + " outside [-1, 1]");
    const double original = e11 + e21 + e12 - e22;
    const double swapped = e21 + e11 + e22 - e12;
    return std::abs(original - swapped);
}

// (|00> + |11>)/sqrt(2) on two qubits.
inline QuantumState phi_plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return QuantumState::pure(ComplexMatrix::column({r, 0.0, 0.0, r}));
}

// Correlation table E_jk = <a_j (x) b_k> (Hermitian part for SharedSpace).
inline std::array<std::array<double, 2>, 2> correlation_table(const BellScenario& s,
                                                              const QuantumState& state,
                                                              const Tolerances& tol = {}) {
    std::array<std::array<double, 2>, 2> table{};
    const Observable* as[2] = {&s.a1, &s.a2};
    const Observable* bs[2] = {&s.b1, &s.b2};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            ComplexMatrix op = (s.embedding == Embedding::TensorEmbedded)
                                   ? tensor_product(as[j]->matrix, bs[k]->matrix)
                                   : (as[j]->matrix * bs[k]->matrix).hermitian_part();
            table[j][k] = expectation(state, op, tol);
        }
    return table;
}

} // namespace bellbound
