// jacobi.hpp — cyclic Jacobi eigensolver for complex Hermitian matrices
//
// A 2x2 unitary plane rotation (with the phase of the pivot element folded
// in) annihilates one off-diagonal pair per step; full sweeps repeat until
// the off-diagonal Frobenius norm falls below 1e-13 * ||M||_F. Unconditional
// convergence for Hermitian input makes this easy to trust at desk scale.

#pragma once

#include "rabi/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

struct EighResult {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns, same order
    int sweeps{0};
    double off_norm{0.0};    // final off-diagonal Frobenius norm
};

class EighError : public std::runtime_error {
  public:
    EighError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_off_norm(achieved) {}
    double achieved_off_norm;
};

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint().eval()).norm();
}

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index p = 0; p < a.rows(); ++p)
        for (Eigen::Index q = 0; q < a.cols(); ++q)
            if (p != q) sum += std::norm(a(p, q));
    return std::sqrt(sum);
}

}  // namespace detail

inline EighResult eigh_jacobi(const Matrix& input, int max_sweeps = 100,
                              double hermitian_rtol = 1e-10) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("eigh_jacobi: matrix must be square");
    const Eigen::Index n = input.rows();
    const double scale = input.norm();
    if (hermiticity_defect(input) > hermitian_rtol * std::max(scale, 1e-300))
        throw std::invalid_argument("eigh_jacobi: matrix is not Hermitian");

    Matrix a = input;
    Matrix v = Matrix::Identity(n, n);

    const double target = 1e-13 * scale;
    // Rotating on pivots far below the convergence target is wasted work.
    const double pivot_floor = scale > 0.0 ? 0.1 * target / static_cast<double>(n) : 0.0;

    int sweep = 0;
    double off = detail::off_diagonal_norm(a);
    while (off > target && sweep < max_sweeps) {
        ++sweep;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= pivot_floor) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx u = apq / r;  // phase of the pivot
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                               : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- J^dag A J with J(p,p)=c, J(p,q)=s*u, J(q,p)=-s*conj(u), J(q,q)=c.
                const Vector col_p = a.col(p);
                const Vector col_q = a.col(q);
                a.col(p) = c * col_p - s * std::conj(u) * col_q;
                a.col(q) = s * u * col_p + c * col_q;
                const Matrix row_p = a.row(p);
                const Matrix row_q = a.row(q);
                a.row(p) = c * row_p.array() - s * u * row_q.array();
                a.row(q) = s * std::conj(u) * row_p.array() + c * row_q.array();
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                const Vector vp = v.col(p);
                const Vector vq = v.col(q);
                v.col(p) = c * vp - s * std::conj(u) * vq;
                v.col(q) = s * u * vp + c * vq;
            }
        }
        off = detail::off_diagonal_norm(a);
    }

    if (off > target)
        throw EighError("eigh_jacobi: no convergence after " + std::to_string(max_sweeps) +
                            " sweeps; achieved off-diagonal norm " + std::to_string(off),
                        off);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    EighResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        res.eigenvalues(k) = a(order[static_cast<std::size_t>(k)],
                               order[static_cast<std::size_t>(k)]).real();
        res.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    res.sweeps = sweep;
    res.off_norm = off;
    return res;
}

}  // namespace rabi
