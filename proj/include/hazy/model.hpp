#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hazy/complex2x2.hpp"
#include "hazy/entropy.hpp"

namespace hazy {

/// Initial system qubit rho_S(0) = [[s00, s01], [conj(s01), 1-s00]] in the
/// pointer (sigma^z) basis.
struct SystemQubit {
    double s00;
    cplx s01;

    SystemQubit(double s00_, cplx s01_) : s00(s00_), s01(s01_) {
        if (s00 < -1e-12 || s00 > 1.0 + 1e-12)
            throw std::invalid_argument("SystemQubit: s00 outside [0,1]");
        s00 = std::min(std::max(s00, 0.0), 1.0);
        if (std::norm(s01) > s00 * (1.0 - s00) + 1e-12)
            throw std::invalid_argument(
                "SystemQubit: |s01|^2 > s00*s11 violates positivity");
    }

    double s11() const { return 1.0 - s00; }
    cplx s10() const { return std::conj(s01); }
    bool is_pure() const {
        return std::abs(std::norm(s01) - s00 * s11()) <= 1e-12;
    }
    Mat2 density() const { return {s00, s01, s10(), s11()}; }

    /// |+><+| with |+> = (|0> + |1>)/sqrt(2), the paper's reference state.
    static SystemQubit plus() { return {0.5, 0.5}; }
};

/// Per-environment-qubit initial state rho_r in the sigma^z basis, with the
/// derived eigenvalues lambda_+- and haziness h = H(lambda_plus).
struct EnvQubit {
    double r00;
    cplx r01;

    EnvQubit(double r00_, cplx r01_) : r00(r00_), r01(r01_) {
        if (r00 < -1e-12 || r00 > 1.0 + 1e-12)
            throw std::invalid_argument("EnvQubit: r00 outside [0,1]");
        r00 = std::min(std::max(r00, 0.0), 1.0);
        if (std::norm(r01) > r00 * (1.0 - r00) + 1e-12)
            throw std::invalid_argument(
                "EnvQubit: |r01|^2 > r00*r11 violates positivity");
    }

    double r11() const { return 1.0 - r00; }
    Mat2 density() const { return {r00, r01, std::conj(r01), r11()}; }

    double lambda_plus() const {
        return 0.5 + std::sqrt((r00 - 0.5) * (r00 - 0.5) + std::norm(r01));
    }
    double lambda_minus() const { return 1.0 - lambda_plus(); }

    /// Haziness h = -tr(rho_r log2 rho_r), the preexisting entropy in bits.
    double haziness() const { return binary_entropy(lambda_plus()); }

    /// Unitary W whose columns are eigenvectors of rho_r: W^H rho_r W =
    /// diag(lambda_plus, lambda_minus).
    Mat2 eigenbasis() const {
        const double lp = lambda_plus();
        if (std::abs(r01) == 0.0) {
            if (r00 >= r11()) return Mat2::identity();
            return {0.0, 1.0, 1.0, 0.0};
        }
        const cplx vp0 = r01, vp1 = cplx(lp - r00);
        const double np = std::sqrt(std::norm(vp0) + std::norm(vp1));
        // orthogonal complement of (vp0, vp1)
        const cplx vm0 = -std::conj(vp1), vm1 = std::conj(vp0);
        return {vp0 / np, vm0 / np, vp1 / np, vm1 / np};
    }

    /// Environment qubit with the requested haziness, adjusting only the
    /// coherence r01 (taken real nonnegative). Only h <= H(r00) is
    /// reachable this way: growing |r01| purifies the state.
    static EnvQubit from_haziness(double h, double r00 = 0.5) {
        if (h < -1e-12 || h > 1.0 + 1e-12)
            throw std::domain_error("EnvQubit::from_haziness: h outside [0,1]");
        h = std::min(std::max(h, 0.0), 1.0);
        const double h_max = binary_entropy(std::max(r00, 1.0 - r00));
        if (h > h_max + 1e-12)
            throw std::domain_error(
                "EnvQubit::from_haziness: haziness " + std::to_string(h) +
                " unreachable at r00=" + std::to_string(r00) +
                "; adjusting r01 alone cannot exceed h=" + std::to_string(h_max));
        const double lp = invert_binary_entropy(h);
        const double gap2 = (lp - 0.5) * (lp - 0.5) - (r00 - 0.5) * (r00 - 0.5);
        return {r00, std::sqrt(std::max(gap2, 0.0))};
    }
};

/// The dephasing model: n_env environment qubits, each coupled to the
/// system by (1/2) sigma_S^z sigma_k^z; t is dimensionless with period 2 pi.
struct ModelConfig {
    long n_env;
    SystemQubit system;
    EnvQubit env;

    ModelConfig(long n_env_, SystemQubit sys, EnvQubit e)
        : n_env(n_env_), system(sys), env(e) {
        if (n_env < 1)
            throw std::invalid_argument("ModelConfig: n_env must be >= 1");
    }
};

/// Single-qubit decoherence factor Lambda_k(t) = cos t + i (r11 - r00) sin t.
inline cplx lambda_k(double t, const EnvQubit& env) {
    return {std::cos(t), (env.r11() - env.r00) * std::sin(t)};
}

namespace detail {

template <typename T>
inline T pow_integer(T base, long n) {
    T acc(1.0);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// n * log(x) with the 0 * log(0) = 0 convention (x may be 0, n may be 0).
inline double log_pow(double log_x, long n) {
    return n == 0 ? 0.0 : double(n) * log_x;
}

}  // namespace detail

/// Lambda_k(t)^count: the decoherence factor of `count` environment qubits.
/// count = 0 is the empty product (covers the fragment-complement of a
/// whole-environment fragment).
inline cplx decoherence_factor(double t, const EnvQubit& env, long count) {
    if (count < 0)
        throw std::domain_error("decoherence_factor: negative qubit count");
    return detail::pow_integer(lambda_k(t, env), count);
}

/// rho_S(t): diagonal untouched, coherence damped by Lambda_E(t).
inline Mat2 system_state(double t, const ModelConfig& cfg) {
    const cplx lam = decoherence_factor(t, cfg.env, cfg.n_env);
    const cplx c = cfg.system.s01 * lam;
    return {cfg.system.s00, c, std::conj(c), cfg.system.s11()};
}

/// kappa_A(t) = (1 + sqrt((s11-s00)^2 + 4 |s01|^2 |Lambda_A|^2)) / 2, the
/// larger eigenvalue of the system state decohered by subsystem A.
inline double kappa(const SystemQubit& sys, double lam_abs) {
    lam_abs = std::min(std::max(lam_abs, 0.0), 1.0);
    const double d = sys.s11() - sys.s00;
    return 0.5 * (1.0 + std::sqrt(d * d + 4.0 * std::norm(sys.s01) * lam_abs * lam_abs));
}

/// Exact fragment entropy at t = pi/2 for r00 = 1/2:
///   H_F = -sum_n C(#F, n) lam_F(n) log2 lam_F(n),
///   lam_F(n) = s00 lam_-^n lam_+^{#F-n} + s11 lam_-^{#F-n} lam_+^n.
/// Accumulated in the log domain; exact up to #F = 200 and beyond.
inline double fragment_entropy_pi_half(long n_frag, const SystemQubit& sys,
                                       const EnvQubit& env) {
    if (n_frag < 0)
        throw std::domain_error("fragment_entropy_pi_half: negative fragment size");
    if (std::abs(env.r00 - 0.5) > 1e-12)
        throw std::domain_error(
            "fragment_entropy_pi_half: requires r00 = 1/2 (got r00=" +
            std::to_string(env.r00) + "); use the schur fragment entropy instead");
    if (n_frag == 0) return 0.0;

    const double lp = env.lambda_plus(), lm = env.lambda_minus();
    const double llp = lp > 0.0 ? std::log(lp) : neg_infinity();
    const double llm = lm > 0.0 ? std::log(lm) : neg_infinity();
    const double ls00 = sys.s00 > 0.0 ? std::log(sys.s00) : neg_infinity();
    const double ls11 = sys.s11() > 0.0 ? std::log(sys.s11()) : neg_infinity();

    detail::CompensatedSum h;
    for (long n = 0; n <= n_frag; ++n) {
        const double t0 = ls00 == neg_infinity()
                              ? neg_infinity()
                              : ls00 + detail::log_pow(llm, n) +
                                    detail::log_pow(llp, n_frag - n);
        const double t1 = ls11 == neg_infinity()
                              ? neg_infinity()
                              : ls11 + detail::log_pow(llm, n_frag - n) +
                                    detail::log_pow(llp, n);
        const double lv = log_add_exp(t0, t1);
        if (lv == neg_infinity() || lv == 0.0) continue;
        const double lc = log_binomial(n_frag, n);
        if (lv < 0.0)
            h.add(std::exp(lc + lv + std::log(-lv)) / kLn2);
        else
            h.add(-std::exp(lc + lv) * lv / kLn2);
    }
    return h.sum;
}

/// The two record-count peaks of Eq.-(12) form and their overlap
/// O = sum_n P_L(n) P_R(n). Probabilities are computed in the log domain
/// and exponentiated, so #F = 200 peaks come out exact instead of zero.
struct BimodalDistribution {
    std::vector<double> p_left;   // P_L(n), correlated with pointer |0>
    std::vector<double> p_right;  // P_R(n), correlated with pointer |1>
    double overlap = 0.0;
};

inline BimodalDistribution bimodal_distribution(long n_frag, const SystemQubit& sys,
                                                const EnvQubit& env) {
    if (n_frag < 1)
        throw std::domain_error("bimodal_distribution: fragment size must be >= 1");
    const double lp = env.lambda_plus(), lm = env.lambda_minus();
    const double llp = lp > 0.0 ? std::log(lp) : neg_infinity();
    const double llm = lm > 0.0 ? std::log(lm) : neg_infinity();

    BimodalDistribution out;
    out.p_left.resize(n_frag + 1);
    out.p_right.resize(n_frag + 1);
    detail::CompensatedSum ov;
    for (long n = 0; n <= n_frag; ++n) {
        const double lc = log_binomial(n_frag, n);
        const double lwl = lc + detail::log_pow(llm, n) + detail::log_pow(llp, n_frag - n);
        const double lwr = lc + detail::log_pow(llm, n_frag - n) + detail::log_pow(llp, n);
        out.p_left[n] = lwl == neg_infinity() ? 0.0 : sys.s00 * std::exp(lwl);
        out.p_right[n] = lwr == neg_infinity() ? 0.0 : sys.s11() * std::exp(lwr);
        ov.add(out.p_left[n] * out.p_right[n]);
    }
    out.overlap = ov.sum;
    return out;
}

}  // namespace hazy
