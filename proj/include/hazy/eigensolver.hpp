#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hazy/complex2x2.hpp"

namespace hazy {

/// Square complex matrix, row-major. Carrier for sector blocks and reduced
/// density matrices; Hermiticity is a checked precondition of the solver,
/// not an invariant of the type.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(std::size_t(dim) * dim) {
        if (dim < 0) throw std::invalid_argument("CMatrix: negative dimension");
    }

    int dim() const { return dim_; }

    cplx& at(int i, int j) { return a_[std::size_t(i) * dim_ + j]; }
    const cplx& at(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

    double max_abs() const {
        double v = 0.0;
        for (const cplx& x : a_) v = std::max(v, std::abs(x));
        return v;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    double hermiticity_error() const {
        double err = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                err = std::max(err, std::abs(at(i, j) - std::conj(at(j, i))));
        return err;
    }

    bool is_hermitian(double rel_tol = 1e-12) const {
        const double scale = max_abs();
        if (scale == 0.0) return true;
        return hermiticity_error() <= rel_tol * scale;
    }

  private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

enum class EigenMethod {
    householder_ql,  // unitary reduction to real tridiagonal + implicit-shift QL
    jacobi,          // cyclic two-sided unitary rotations (cross-validation path)
};

namespace detail {

// Reduce a Hermitian matrix (given as a flat row-major copy) to a real
// symmetric tridiagonal (d, e) by Householder reflections. e[i] couples
// i and i+1; e[n-1] is a zero sentinel.
inline void householder_tridiagonalize(std::vector<cplx>& a, int n,
                                       std::vector<double>& d,
                                       std::vector<double>& e) {
    std::vector<cplx> u(n), p(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(a[std::size_t(i) * n + k]);
        if (xnorm2 == 0.0) continue;
        const cplx x0 = a[std::size_t(k + 1) * n + k];
        const double xnorm = std::sqrt(xnorm2);
        const double x0abs = std::abs(x0);
        const cplx phase = x0abs > 0.0 ? x0 / x0abs : cplx(1.0);
        const cplx alpha = -phase * xnorm;
        const double tau = xnorm * (xnorm + x0abs);  // |u|^2 / 2
        if (tau == 0.0) continue;

        const int m = n - (k + 1);
        u[0] = x0 + phase * xnorm;
        for (int i = 1; i < m; ++i) u[i] = a[std::size_t(k + 1 + i) * n + k];

        // p = S u / tau over the trailing submatrix S
        for (int i = 0; i < m; ++i) {
            cplx s = 0.0;
            const cplx* row = &a[std::size_t(k + 1 + i) * n + (k + 1)];
            for (int j = 0; j < m; ++j) s += row[j] * u[j];
            p[i] = s / tau;
        }
        cplx updotp = 0.0;
        for (int i = 0; i < m; ++i) updotp += std::conj(u[i]) * p[i];
        const double kap = updotp.real() / (2.0 * tau);
        for (int i = 0; i < m; ++i) p[i] -= kap * u[i];  // p is now q

        // S <- S - q u^H - u q^H
        for (int i = 0; i < m; ++i) {
            cplx* row = &a[std::size_t(k + 1 + i) * n + (k + 1)];
            const cplx qi = p[i], ui = u[i];
            for (int j = 0; j < m; ++j)
                row[j] -= qi * std::conj(u[j]) + ui * std::conj(p[j]);
        }

        a[std::size_t(k + 1) * n + k] = alpha;
        a[std::size_t(k) * n + (k + 1)] = std::conj(alpha);
        for (int i = k + 2; i < n; ++i) {
            a[std::size_t(i) * n + k] = 0.0;
            a[std::size_t(k) * n + i] = 0.0;
        }
    }
    d.resize(n);
    e.assign(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = a[std::size_t(i) * n + i].real();
    for (int i = 0; i + 1 < n; ++i) e[i] = std::abs(a[std::size_t(i + 1) * n + i]);
}

// Implicit-shift QL on a real symmetric tridiagonal. Destroys its inputs.
inline std::vector<double> tridiagonal_ql(std::vector<double> d,
                                          std::vector<double> e) {
    const int n = int(d.size());
    if (n == 0) return {};
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    // infinity-norm of T: the absolute deflation scale. Couplings below
    // eps * anorm are inside the backward-error budget no matter how the
    // matrix is graded; without this test, spectra spanning hundreds of
    // orders of magnitude (Sym^200 sectors) never deflate their tails.
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= eps * anorm)
                    break;
            }
            if (m != l) {
                if (++iter > 50)
                    throw std::runtime_error(
                        "tridiagonal_ql: no convergence after 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pp = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= pp;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pp;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    pp = s * r;
                    d[i + 1] = g + pp;
                    g = c * r - b;
                    if (i == l) {
                        d[l] -= pp;
                        e[l] = g;
                        e[m] = 0.0;
                    }
                }
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, int n) {
    const double fro = [&] {
        double s = 0.0;
        for (const cplx& x : a) s += std::norm(x);
        return std::sqrt(s);
    }();
    if (fro == 0.0) return std::vector<double>(n, 0.0);
    auto off_norm = [&] {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::norm(a[std::size_t(p) * n + q]);
        return std::sqrt(2.0 * s);
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_norm() <= 1e-14 * fro) {
            std::vector<double> w(n);
            for (int i = 0; i < n; ++i) w[i] = a[std::size_t(i) * n + i].real();
            std::sort(w.begin(), w.end());
            return w;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a[std::size_t(p) * n + q];
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                const cplx phase = apq / b;
                const double app = a[std::size_t(p) * n + p].real();
                const double aqq = a[std::size_t(q) * n + q].real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = tau == 0.0
                                     ? 1.0
                                     : std::copysign(1.0, tau) /
                                           (std::abs(tau) + std::hypot(tau, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx sigma = (t * c) * phase;
                // columns: col_p' = c col_p - conj(sigma) col_q ; col_q' = sigma col_p + c col_q
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a[std::size_t(i) * n + p];
                    const cplx aiq = a[std::size_t(i) * n + q];
                    a[std::size_t(i) * n + p] = c * aip - std::conj(sigma) * aiq;
                    a[std::size_t(i) * n + q] = sigma * aip + c * aiq;
                }
                // rows: row_p' = c row_p - sigma row_q ; row_q' = conj(sigma) row_p + c row_q
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a[std::size_t(p) * n + j];
                    const cplx aqj = a[std::size_t(q) * n + j];
                    a[std::size_t(p) * n + j] = c * apj - sigma * aqj;
                    a[std::size_t(q) * n + j] = std::conj(sigma) * apj + c * aqj;
                }
            }
        }
    }
    throw std::runtime_error("jacobi_eigenvalues: no convergence after 60 sweeps");
}

}  // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending. Throws if the matrix
/// is not Hermitian (to 1e-12 relative) or if the iteration cap is hit.
inline std::vector<double> hermitian_eigenvalues(
    const CMatrix& m, EigenMethod method = EigenMethod::householder_ql) {
    if (!m.is_hermitian())
        throw std::invalid_argument(
            "hermitian_eigenvalues: matrix is not Hermitian (error " +
            std::to_string(m.hermiticity_error()) + ")");
    const int n = m.dim();
    if (n == 0) return {};
    if (n == 1) return {m.at(0, 0).real()};
    if (method == EigenMethod::jacobi)
        return detail::jacobi_eigenvalues(m.data(), n);
    std::vector<cplx> a = m.data();
    std::vector<double> d, e;
    detail::householder_tridiagonalize(a, n, d, e);
    return detail::tridiagonal_ql(std::move(d), std::move(e));
}

}  // namespace hazy
