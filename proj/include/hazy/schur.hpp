#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hazy/complex2x2.hpp"
#include "hazy/eigensolver.hpp"
#include "hazy/entropy.hpp"
#include "hazy/model.hpp"

namespace hazy {

struct SchurOptions {
    int threads = 1;          // sector-level parallelism; <= 1 runs serially
    long frag_cap = 200;      // soft cap on fragment size
    bool allow_large_frag = false;
    EigenMethod eigen_method = EigenMethod::householder_ql;
};

/// Restriction of M^{(x)k} to the fully symmetric (Dicke) subspace, as a
/// (k+1) x (k+1) matrix in the orthonormal Dicke basis |D_0>, ..., |D_k>
/// (|D_a> = normalized sum of weight-a product states). Entry [b][a] is
///
///   sqrt(C(k,a)/C(k,b)) * sum_r C(k-a, b-r) C(a, r)
///        m00^{k-a-b+r} m10^{b-r} m01^{a-r} m11^r,
///
/// i.e. the coefficient extraction from (m00 x + m10 y)^{k-a} (m01 x + m11 y)^a.
/// Functorial: sym_power(M N, k) = sym_power(M, k) sym_power(N, k).
inline CMatrix sym_power(const Mat2& m, long k) {
    if (k < 0) throw std::domain_error("sym_power: negative degree");
    if (k > 1000)
        throw std::domain_error(
            "sym_power: degree above 1000 overflows the binomial tables");
    CMatrix out(int(k + 1));
    if (k == 0) {
        out.at(0, 0) = 1.0;
        return out;
    }

    // power tables for the four entries
    std::vector<cplx> p00(k + 1), p10(k + 1), p01(k + 1), p11(k + 1);
    p00[0] = p10[0] = p01[0] = p11[0] = 1.0;
    for (long i = 1; i <= k; ++i) {
        p00[i] = p00[i - 1] * m.m[0][0];
        p10[i] = p10[i - 1] * m.m[1][0];
        p01[i] = p01[i - 1] * m.m[0][1];
        p11[i] = p11[i - 1] * m.m[1][1];
    }
    // Pascal rows 0..k (C(1000,500) ~ 2.7e299 still fits a double)
    std::vector<std::vector<double>> row(k + 1);
    for (long j = 0; j <= k; ++j) {
        row[j].resize(j + 1);
        row[j][0] = 1.0;
        for (long i = 1; i <= j; ++i) row[j][i] = row[j][i - 1] * double(j - i + 1) / double(i);
    }

    for (long b = 0; b <= k; ++b) {
        for (long a = 0; a <= k; ++a) {
            cplx s = 0.0;
            const long r_lo = std::max(0L, a + b - k);
            const long r_hi = std::min(a, b);
            for (long r = r_lo; r <= r_hi; ++r)
                s += row[k - a][b - r] * row[a][r] * p00[k - a - b + r] * p10[b - r] *
                     p01[a - r] * p11[r];
            out.at(int(b), int(a)) = std::sqrt(row[k][a] / row[k][b]) * s;
        }
    }
    return out;
}

/// ln m(n, j) with m = C(n, nu) - C(n, nu-1), nu = (n - 2j)/2: the
/// Schur-Weyl multiplicity of the spin-j sector of n qubits. Evaluated as
/// ln C(n, nu) + log1p(-nu / (n - nu + 1)) to stay stable when the two
/// binomials nearly cancel.
inline double sector_multiplicity_log(long n, long two_j) {
    if (two_j < 0 || two_j > n || ((n - two_j) & 1))
        throw std::domain_error("sector_multiplicity_log: 2j=" + std::to_string(two_j) +
                                " invalid for n=" + std::to_string(n));
    const long nu = (n - two_j) / 2;
    return log_binomial(n, nu) + std::log1p(-double(nu) / double(n - nu + 1));
}

/// Sector labels 2j = n, n-2, ..., down to n mod 2.
inline std::vector<long> sector_labels(long n) {
    std::vector<long> labels;
    for (long two_j = n; two_j >= 0; two_j -= 2) labels.push_back(two_j);
    return labels;
}

namespace detail {

inline void check_fragment_size(long n_frag, const SchurOptions& opts) {
    if (n_frag < 0)
        throw std::domain_error("fragment size must be >= 0");
    if (n_frag > opts.frag_cap && !opts.allow_large_frag)
        throw std::domain_error(
            "fragment size " + std::to_string(n_frag) + " above the soft cap " +
            std::to_string(opts.frag_cap) +
            "; set allow_large_frag to proceed (cost grows as #F^4)");
}

inline void parallel_for(long count, int threads,
                             const std::function<void(long)>& body) {
    if (threads <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    const int workers = int(std::min<long>(threads, count));
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Shared sector sweep: assemble_block(two_j) must return the unscaled
// Hermitian sector matrix of dimension dim_factor * (2j+1); its eigenvalues
// are emitted with the prefactor det(rho_r)^nu kept in the log domain and
// multiplicity m(n_frag, j).
template <typename AssembleFn>
inline Spectrum sector_spectrum(long n_frag, const EnvQubit& env,
                                const SchurOptions& opts, long dim_factor,
                                AssembleFn assemble_block) {
    Spectrum spec;
    if (n_frag == 0) {
        spec.add_log(0.0, 0.0);  // the trivial weight-1 spectrum
        return spec;
    }
    const double lp = env.lambda_plus(), lm = env.lambda_minus();
    const bool det_zero = lm <= 0.0;
    const double log_det = det_zero ? neg_infinity() : std::log(lp) + std::log(lm);

    const std::vector<long> labels = sector_labels(n_frag);
    const long n_sectors = long(labels.size());
    std::vector<std::vector<double>> eigs(n_sectors);
    std::vector<double> log_mult(n_sectors);
    std::vector<char> skipped(n_sectors, 0);

    parallel_for(n_sectors, opts.threads, [&](long s) {
        const long two_j = labels[s];
        const long nu = (n_frag - two_j) / 2;
        log_mult[s] = sector_multiplicity_log(n_frag, two_j);
        if (det_zero && nu > 0) {
            skipped[s] = 1;  // det(rho_r)^nu = 0: the whole sector has zero weight
            return;
        }
        eigs[s] = hermitian_eigenvalues(assemble_block(two_j), opts.eigen_method);
    });

    for (long s = 0; s < n_sectors; ++s) {
        const long two_j = labels[s];
        const long nu = (n_frag - two_j) / 2;
        if (skipped[s]) {
            spec.add_zero(log_mult[s] + std::log(double(dim_factor * (two_j + 1))));
            continue;
        }
        const double log_pref = nu == 0 ? 0.0 : double(nu) * log_det;
        for (double lam : eigs[s]) {
            if (lam < -1e-12)
                throw std::domain_error(
                    "sector_spectrum: eigenvalue " + std::to_string(lam) +
                    " below -1e-12 in sector 2j=" + std::to_string(two_j));
            if (lam <= 0.0)
                spec.add_zero(log_mult[s]);
            else
                spec.add_log(log_pref + std::log(lam), log_mult[s]);
        }
    }
    return spec;
}

}  // namespace detail

/// Exact spectrum of the fragment state rho_F(t) =
/// s00 A^{(x)#F} + s11 B^{(x)#F} with A = V(t) rho_r V(-t), B = V(-t) rho_r V(t),
/// block-diagonalized over permutation-symmetric sectors: sector 2j carries
/// the (2j+1)-dim matrix det(rho_r)^nu [s00 Sym^2j(A) + s11 Sym^2j(B)] with
/// multiplicity m(#F, j). Polynomial in #F; reaches #F = 200 routinely.
inline Spectrum fragment_spectrum(double t, long n_frag, const SystemQubit& sys,
                                  const EnvQubit& env, const SchurOptions& opts = {}) {
    detail::check_fragment_size(n_frag, opts);
    const Mat2 v = rot_z(t), vd = rot_z(-t), rho = env.density();
    const Mat2 a = v * rho * vd;
    const Mat2 b = vd * rho * v;
    return detail::sector_spectrum(n_frag, env, opts, 1, [&](long two_j) {
        const CMatrix sa = sym_power(a, two_j);
        const CMatrix sb = sym_power(b, two_j);
        CMatrix block(int(two_j + 1));
        for (int i = 0; i <= two_j; ++i)
            for (int j = 0; j <= two_j; ++j)
                block.at(i, j) = sys.s00 * sa.at(i, j) + sys.s11() * sb.at(i, j);
        return block;
    });
}

/// H_F(t) in bits.
inline double fragment_entropy(double t, long n_frag, const SystemQubit& sys,
                               const EnvQubit& env, const SchurOptions& opts = {}) {
    if (n_frag == 0) return 0.0;
    return spectrum_entropy(fragment_spectrum(t, n_frag, sys, env, opts));
}

/// Exact spectrum of the joint state rho_SF(t), off-diagonal blocks
/// included (no good-decoherence assumption). Sector 2j carries the
/// Hermitian 2(2j+1)-dim block
///   [ s00 Sym(A)                  s01 Lambda_{E/F} Sym(C) ]
///   [ (conj. transpose)           s11 Sym(B)              ]
/// scaled by det(rho_r)^nu, with C = V(t) rho_r V(t) and Lambda_{E/F} the
/// decoherence factor of the #E - #F untouched environment qubits.
inline Spectrum joint_spectrum(double t, long n_env, long n_frag,
                               const SystemQubit& sys, const EnvQubit& env,
                               const SchurOptions& opts = {}) {
    if (n_frag > n_env)
        throw std::domain_error("joint_spectrum: n_frag " + std::to_string(n_frag) +
                                " exceeds n_env " + std::to_string(n_env));
    detail::check_fragment_size(n_frag, opts);
    const cplx lam_ef = decoherence_factor(t, env, n_env - n_frag);

    if (n_frag == 0) {
        // spectrum of rho_S(t): kappa_E and 1 - kappa_E
        Spectrum spec;
        const double k = kappa(sys, std::abs(lam_ef));
        if (k > 0.0) spec.add_log(std::log(k), 0.0); else spec.add_zero(0.0);
        const double k2 = 1.0 - k;
        if (k2 > 0.0) spec.add_log(std::log(k2), 0.0); else spec.add_zero(0.0);
        return spec;
    }

    const Mat2 v = rot_z(t), vd = rot_z(-t), rho = env.density();
    const Mat2 a = v * rho * vd;
    const Mat2 b = vd * rho * v;
    const Mat2 c = v * rho * v;
    const cplx coupling = sys.s01 * lam_ef;

    return detail::sector_spectrum(n_frag, env, opts, 2, [&](long two_j) {
        const CMatrix sa = sym_power(a, two_j);
        const CMatrix sb = sym_power(b, two_j);
        const CMatrix sc = sym_power(c, two_j);
        const int d = int(two_j + 1);
        CMatrix block(2 * d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                block.at(i, j) = sys.s00 * sa.at(i, j);
                block.at(d + i, d + j) = sys.s11() * sb.at(i, j);
                block.at(i, d + j) = coupling * sc.at(i, j);
                block.at(d + j, i) = std::conj(coupling * sc.at(i, j));
            }
        }
        return block;
    });
}

/// I(S:F) = H_S + H_F - H_SF from the three exact spectra. This is the
/// artifact's ground-truth fast path; no good-decoherence assumption.
inline double mutual_info_schur(double t, long n_env, long n_frag,
                                const SystemQubit& sys, const EnvQubit& env,
                                const SchurOptions& opts = {}) {
    if (n_frag < 0 || n_frag > n_env)
        throw std::domain_error("mutual_info_schur: n_frag outside [0, n_env]");
    const ModelConfig cfg(n_env, sys, env);
    const double h_s = binary_entropy(eig_hermitian_2x2(system_state(t, cfg)).first);
    const double h_f =
        n_frag == 0 ? 0.0 : spectrum_entropy(fragment_spectrum(t, n_frag, sys, env, opts));
    const double h_sf = spectrum_entropy(joint_spectrum(t, n_env, n_frag, sys, env, opts));
    return h_s + h_f - h_sf;
}

}  // namespace hazy
