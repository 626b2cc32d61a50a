#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace hazy {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// Dense 2x2 complex matrix in the sigma^z eigenbasis (index 0 <-> |0>,
/// the sigma^z = +1 eigenstate).
struct Mat2 {
    cplx m[2][2]{};

    Mat2() = default;
    Mat2(cplx a00, cplx a01, cplx a10, cplx a11) : m{{a00, a01}, {a10, a11}} {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx a, cplx d) { return {a, 0.0, 0.0, d}; }

    cplx trace() const { return m[0][0] + m[1][1]; }
    cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Mat2 adjoint() const {
        return {std::conj(m[0][0]), std::conj(m[1][0]),
                std::conj(m[0][1]), std::conj(m[1][1])};
    }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return c;
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][j] + b.m[i][j];
    return c;
}

inline Mat2 operator*(cplx s, const Mat2& a) {
    Mat2 c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.m[i][j] = s * a.m[i][j];
    return c;
}

inline double max_abs(const Mat2& a) {
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v = std::max(v, std::abs(a.m[i][j]));
    return v;
}

/// Hermiticity check relative to the largest entry magnitude.
inline bool is_hermitian(const Mat2& a, double rel_tol = 1e-12) {
    const double scale = max_abs(a);
    if (scale == 0.0) return true;
    double err = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            err = std::max(err, std::abs(a.m[i][j] - std::conj(a.m[j][i])));
    return err <= rel_tol * scale;
}

/// V(t) = exp(-i t sigma^z / 2) = diag(e^{-it/2}, e^{+it/2}).
inline Mat2 rot_z(double t) {
    return Mat2::diag(std::polar(1.0, -0.5 * t), std::polar(1.0, 0.5 * t));
}

/// Eigenvalues of a Hermitian 2x2, returned as (larger, smaller):
/// (tr +- sqrt((m00 - m11)^2 + 4 |m01|^2)) / 2.
inline std::pair<double, double> eig_hermitian_2x2(const Mat2& a) {
    if (!is_hermitian(a))
        throw std::invalid_argument("eig_hermitian_2x2: matrix is not Hermitian");
    const double t = a.trace().real();
    const double d = a.m[0][0].real() - a.m[1][1].real();
    const double disc = std::sqrt(d * d + 4.0 * std::norm(a.m[0][1]));
    return {0.5 * (t + disc), 0.5 * (t - disc)};
}

}  // namespace hazy
