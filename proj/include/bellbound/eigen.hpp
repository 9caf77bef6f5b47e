#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bellbound/complex_matrix.hpp"
#include "bellbound/errors.hpp"

namespace bellbound {

// Central numeric tolerances. Defaults are the library-wide constants;
// callers may pass adjusted copies.
struct Tolerances {
    double herm = 1e-10;        // admissible Hermiticity defect on inputs
    double unitary = 1e-10;     // max-entry defect of V†V - I
    double recon = 1e-8;        // max-entry defect of V diag(w) V† - M
    double feasibility = 1e-9;  // slack when checking spectra against a range
    double commutator = 1e-9;   // "nonzero commutator" threshold
};

// Eigendecomposition of a Hermitian matrix. Eigenvalues descending;
// eigenvector k is column k of `eigenvectors`.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    double max_eigenvalue() const { return eigenvalues.front(); }
    double min_eigenvalue() const { return eigenvalues.back(); }

    ComplexMatrix eigenvector(std::size_t k) const {
        ComplexMatrix v(eigenvectors.rows(), 1);
        for (std::size_t i = 0; i < eigenvectors.rows(); ++i)
            v.at(i, 0) = eigenvectors.at(i, k);
        return v;
    }
};

namespace detail {

// Plain symmetric storage for the 2n x 2n real embedding.
struct RealSymmetric {
    std::size_t n;
    std::vector<double> a; // row-major n x n

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline double off_diagonal_frobenius(const RealSymmetric& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) s += 2.0 * m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
}

// Cyclic Jacobi sweeps. Diagonalizes m in place; v accumulates rotations
// (columns become eigenvectors). Returns the number of sweeps used.
inline int jacobi_cyclic(RealSymmetric& m, RealSymmetric& v, int max_sweeps) {
    const std::size_t n = m.n;
    v.a.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    double scale = 0.0;
    for (double x : m.a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0;
    const double stop = 1e-14 * scale * static_cast<double>(n);

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(m) <= stop) return sweep - 1;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = m.at(p, p);
                const double aqq = m.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                m.at(p, p) = app - t * apq;
                m.at(q, q) = aqq + t * apq;
                m.at(p, q) = 0.0;
                m.at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = m.at(k, p);
                    const double akq = m.at(k, q);
                    m.at(k, p) = akp - s * (akq + tau * akp);
                    m.at(p, k) = m.at(k, p);
                    m.at(k, q) = akq + s * (akp - tau * akq);
                    m.at(q, k) = m.at(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = vkp - s * (vkq + tau * vkp);
                    v.at(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
    return off_diagonal_frobenius(m) <= stop ? max_sweeps : max_sweeps + 1;
}

} // namespace detail

// Eigendecomposition of a Hermitian matrix via cyclic Jacobi on the
// 2n x 2n real-symmetric embedding [[Re, -Im], [Im, Re]]. Every eigenvalue
// of the embedding is doubled; complex eigenvectors are recovered by
// pairing each real eigenvector w = (x; y) with its partner J w (J being
// multiplication by i) and keeping one representative x + iy per pair.
inline Spectrum hermitian_eigen(const ComplexMatrix& m, const Tolerances& tol = {}) {
    if (!m.is_square()) throw ShapeError("eigendecomposition of a non-square matrix");
    const std::size_t n = m.rows();
    if (m.hermiticity_defect() > tol.herm)
        throw SymmetryError("matrix is not Hermitian within tolerance");

    // Exactly symmetric/antisymmetric real and imaginary parts.
    std::vector<double> re(n * n), im(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex z = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
            re[i * n + j] = z.real();
            im[i * n + j] = z.imag();
        }

    detail::RealSymmetric big{2 * n, std::vector<double>(4 * n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            big.at(i, j) = re[i * n + j];
            big.at(i, j + n) = -im[i * n + j];
            big.at(i + n, j) = im[i * n + j];
            big.at(i + n, j + n) = re[i * n + j];
        }

    detail::RealSymmetric rot{2 * n, {}};
    const int max_sweeps = 80;
    const int sweeps = detail::jacobi_cyclic(big, rot, max_sweeps);
    if (sweeps > max_sweeps)
        throw ConvergenceError("Jacobi eigensolver did not converge", 0.0, max_sweeps);

    // Real eigenpairs, sorted by descending eigenvalue (index breaks ties).
    const std::size_t nn = 2 * n;
    std::vector<std::size_t> order(nn);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return big.at(a, a) > big.at(b, b);
    });

    std::vector<std::vector<double>> vecs(nn, std::vector<double>(nn));
    std::vector<double> vals(nn);
    for (std::size_t k = 0; k < nn; ++k) {
        vals[k] = big.at(order[k], order[k]);
        for (std::size_t i = 0; i < nn; ++i) vecs[k][i] = rot.at(i, order[k]);
    }

    // Multiplication by i in the real embedding: (x; y) -> (-y; x).
    const auto apply_j = [n](const std::vector<double>& w) {
        std::vector<double> out(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = -w[i + n];
            out[i + n] = w[i];
        }
        return out;
    };
    const auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    // Walk eigenvalues in clusters (each complex eigenvalue appears twice);
    // inside a cluster, repeatedly take the leading vector, project the
    // two-dimensional fiber {w, Jw} out of the rest, and keep x + iy.
    double scale = 0.0;
    for (double v : vals) scale = std::max(scale, std::abs(v));
    const double cluster_tol = 1e-11 * std::max(1.0, scale);

    Spectrum spec;
    spec.eigenvalues.reserve(n);
    spec.eigenvectors = ComplexMatrix(n, n);
    std::size_t out_col = 0;

    std::size_t lo = 0;
    while (lo < nn) {
        std::size_t hi = lo + 1;
        while (hi < nn && vals[hi - 1] - vals[hi] <= cluster_tol) ++hi;

        std::vector<std::vector<double>> pool(vecs.begin() + lo, vecs.begin() + hi);
        std::vector<double> pool_vals(vals.begin() + lo, vals.begin() + hi);

        while (!pool.empty()) {
            // Pool is kept orthonormal, so the first vector is a valid pick.
            std::vector<double> w = pool.front();
            const std::vector<double> jw = apply_j(w);

            for (std::size_t i = 0; i < n; ++i)
                spec.eigenvectors.at(i, out_col) = Complex(w[i], w[i + n]);
            spec.eigenvalues.push_back(pool_vals.front());
            ++out_col;

            // Remove the fiber {w, Jw}, then re-orthonormalize what is left
            // (pivoted Gram-Schmidt; exact rank drop is 2 per emission).
            std::vector<std::vector<double>> rest;
            std::vector<double> rest_vals;
            for (std::size_t k = 1; k < pool.size(); ++k) {
                std::vector<double> u = pool[k];
                const double cw = dot(u, w);
                const double cj = dot(u, jw);
                for (std::size_t i = 0; i < u.size(); ++i)
                    u[i] -= cw * w[i] + cj * jw[i];
                rest.push_back(std::move(u));
                rest_vals.push_back(pool_vals[k]);
            }

            std::vector<std::vector<double>> next;
            std::vector<double> next_vals;
            std::vector<bool> used(rest.size(), false);
            while (true) {
                std::size_t pick = rest.size();
                double best = 1e-3;
                for (std::size_t k = 0; k < rest.size(); ++k) {
                    if (used[k]) continue;
                    const double nrm = std::sqrt(dot(rest[k], rest[k]));
                    if (nrm > best) {
                        best = nrm;
                        pick = k;
                    }
                }
                if (pick == rest.size()) break;
                used[pick] = true;
                std::vector<double>& u = rest[pick];
                for (double& x : u) x /= best;
                for (std::size_t k = 0; k < rest.size(); ++k) {
                    if (used[k]) continue;
                    const double c = dot(rest[k], u);
                    for (std::size_t i = 0; i < u.size(); ++i) rest[k][i] -= c * u[i];
                }
                next.push_back(u);
                next_vals.push_back(rest_vals[pick]);
            }
            pool = std::move(next);
            pool_vals = std::move(next_vals);
        }
        lo = hi;
    }

    if (out_col != n)
        throw ConvergenceError("eigenvector extraction produced " + std::to_string(out_col) +
                                   " of " + std::to_string(n) + " vectors",
                               0.0, sweeps);

    // Re-sort complex pairs (cluster walk already emits descending order,
    // but Rayleigh refinement below may nudge near-degenerate values).
    for (std::size_t k = 0; k < n; ++k) {
        Complex num = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex mv = 0.0;
            for (std::size_t j = 0; j < n; ++j) mv += m.at(i, j) * spec.eigenvectors.at(j, k);
            num += std::conj(spec.eigenvectors.at(i, k)) * mv;
        }
        spec.eigenvalues[k] = num.real();
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return spec.eigenvalues[a] > spec.eigenvalues[b];
    });
    Spectrum sorted;
    sorted.eigenvalues.resize(n);
    sorted.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted.eigenvalues[k] = spec.eigenvalues[perm[k]];
        for (std::size_t i = 0; i < n; ++i)
            sorted.eigenvectors.at(i, k) = spec.eigenvectors.at(i, perm[k]);
    }
    return sorted;
}

// sqrt(lambda_max(m† m)); equals max |eigenvalue| for Hermitian m.
inline double largest_singular_value(const ComplexMatrix& m, const Tolerances& tol = {}) {
    const ComplexMatrix gram = m.adjoint() * m;
    Tolerances t = tol;
    t.herm = std::max(t.herm, 1e-12 * std::max(1.0, gram.max_abs()));
    const Spectrum s = hermitian_eigen(gram, t);
    return std::sqrt(std::max(0.0, s.max_eigenvalue()));
}

// Rebuild V f(diag) V† for an eigenvalue map f.
namespace detail {
template <typename F>
ComplexMatrix remap_spectrum(const ComplexMatrix& m, F&& f, const Tolerances& tol) {
    const Spectrum s = hermitian_eigen(m, tol);
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += s.eigenvectors.at(i, k) * f(s.eigenvalues[k]) *
                       std::conj(s.eigenvectors.at(j, k));
            out.at(i, j) = acc;
        }
    return out.hermitian_part(); // exact Hermiticity for downstream checks
}
} // namespace detail

// Project a Hermitian matrix onto the set with spectrum in [lo, hi].
inline ComplexMatrix clamp_spectrum(const ComplexMatrix& m, double lo, double hi,
                                    const Tolerances& tol = {}) {
    if (!(lo <= hi)) throw RangeError("clamp_spectrum needs lo <= hi");
    return detail::remap_spectrum(
        m, [lo, hi](double w) { return std::clamp(w, lo, hi); }, tol);
}

// Maximizer of tr(a T) over Hermitian a with spectrum in [lo, hi]:
// eigenvalues of T map to hi where nonnegative, lo where negative.
inline ComplexMatrix spectrum_sign(const ComplexMatrix& m, double lo, double hi,
                                   const Tolerances& tol = {}) {
    if (!(lo <= hi)) throw RangeError("spectrum_sign needs lo <= hi");
    return detail::remap_spectrum(
        m, [lo, hi](double w) { return w >= 0.0 ? hi : lo; }, tol);
}

} // namespace bellbound
