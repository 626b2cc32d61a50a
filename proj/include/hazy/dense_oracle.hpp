#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hazy/eigensolver.hpp"
#include "hazy/entropy.hpp"
#include "hazy/model.hpp"

namespace hazy {

/// Full joint density matrix on 1 + n_env qubits. Qubit 0 is the system
/// (most significant bit of the basis index), qubits 1..n_env the
/// environment. Deliberately simple: this module is the trust anchor.
struct DenseState {
    long n_env = 0;
    std::vector<cplx> rho;  // dim x dim, row-major

    long dim() const { return 1L << (n_env + 1); }
    cplx& at(long i, long j) { return rho[std::size_t(i) * dim() + j]; }
    const cplx& at(long i, long j) const { return rho[std::size_t(i) * dim() + j]; }
};

namespace detail {

// Energy of a computational basis state under H = (1/2) sigma_S^z sum_k sigma_k^z.
inline double basis_energy(long idx, long n_env) {
    const int s_bit = int((idx >> n_env) & 1);
    const long env_bits = idx & ((1L << n_env) - 1);
    const long ones = std::popcount(static_cast<unsigned long long>(env_bits));
    const double sz_sum = double(n_env - 2 * ones);
    return 0.5 * (s_bit == 0 ? 1.0 : -1.0) * sz_sum;
}

}  // namespace detail

/// rho_SE(t) = U (rho_S (x) rho_r^{(x) n}) U^H with U the conditional-phase
/// evolution of the purely dephasing Hamiltonian: since H is diagonal in
/// the joint sigma^z basis, the evolution is an elementwise phase
/// exp(-i t (E_a - E_b)), no matrix exponential needed.
inline DenseState dense_joint_state(double t, const ModelConfig& cfg,
                                    bool allow_large = false) {
    if (cfg.n_env > 12 && !allow_large)
        throw std::domain_error(
            "dense_joint_state: n_env " + std::to_string(cfg.n_env) +
            " > 12 (dense state would exceed ~1 GiB); pass allow_large to override");
    DenseState st;
    st.n_env = cfg.n_env;
    const long dim = st.dim();
    st.rho.assign(std::size_t(dim) * dim, 0.0);

    const Mat2 s = cfg.system.density();
    const Mat2 r = cfg.env.density();
    std::vector<double> energy(dim);
    for (long i = 0; i < dim; ++i) energy[i] = detail::basis_energy(i, cfg.n_env);

    for (long i = 0; i < dim; ++i) {
        for (long j = 0; j < dim; ++j) {
            cplx v = s.m[(i >> cfg.n_env) & 1][(j >> cfg.n_env) & 1];
            for (long k = 0; k < cfg.n_env && v != cplx(0.0); ++k) {
                const long shift = cfg.n_env - 1 - k;
                v *= r.m[(i >> shift) & 1][(j >> shift) & 1];
            }
            if (v != cplx(0.0))
                st.at(i, j) = v * std::polar(1.0, -t * (energy[i] - energy[j]));
        }
    }
    return st;
}

/// Reduced density matrix over the subsystems in `keep` (0 = system,
/// 1..n_env = environment qubits), in ascending qubit order.
inline CMatrix partial_trace(const DenseState& st, const std::vector<int>& keep) {
    if (keep.empty())
        throw std::domain_error("partial_trace: empty subsystem selector");
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::unique(kept.begin(), kept.end()) != kept.end())
        throw std::domain_error("partial_trace: duplicate subsystem in selector");
    if (kept.front() < 0 || kept.back() > st.n_env)
        throw std::domain_error("partial_trace: selector outside [0, n_env]");

    const long n_total = st.n_env + 1;
    std::vector<long> kept_shift, traced_shift;
    for (long q = 0; q < n_total; ++q) {
        const long shift = st.n_env - q;  // qubit q occupies this bit
        if (std::binary_search(kept.begin(), kept.end(), int(q)))
            kept_shift.push_back(shift);
        else
            traced_shift.push_back(shift);
    }
    const long dk = 1L << kept_shift.size();
    const long dt = 1L << traced_shift.size();

    auto scatter = [](long bits, const std::vector<long>& shifts) {
        long idx = 0;
        for (std::size_t b = 0; b < shifts.size(); ++b)
            idx |= ((bits >> (shifts.size() - 1 - b)) & 1L) << shifts[b];
        return idx;
    };

    CMatrix out{int(dk)};
    for (long i = 0; i < dk; ++i) {
        const long base_i = scatter(i, kept_shift);
        for (long j = 0; j < dk; ++j) {
            const long base_j = scatter(j, kept_shift);
            cplx sum = 0.0;
            for (long tbits = 0; tbits < dt; ++tbits) {
                const long off = scatter(tbits, traced_shift);
                sum += st.at(base_i | off, base_j | off);
            }
            out.at(int(i), int(j)) = sum;
        }
    }
    return out;
}

/// -sum lambda log2 lambda of a density matrix by dense diagonalization.
inline double density_entropy(const CMatrix& rho,
                              EigenMethod method = EigenMethod::householder_ql) {
    double h = 0.0;
    for (double lam : hermitian_eigenvalues(rho, method)) {
        if (lam < -1e-12)
            throw std::domain_error("density_entropy: eigenvalue " +
                                    std::to_string(lam) + " below -1e-12");
        if (lam > 0.0) h -= lam * std::log2(lam);
    }
    return h;
}

/// Brute-force I(S:F) = H_S + H_F - H_SF on the first n_frag environment
/// qubits (any choice is equivalent by symmetry; the tests check that).
inline double oracle_mutual_info(double t, long n_env, long n_frag,
                                 const SystemQubit& sys, const EnvQubit& env) {
    if (n_frag < 0 || n_frag > n_env)
        throw std::domain_error("oracle_mutual_info: n_frag outside [0, n_env]");
    const ModelConfig cfg(n_env, sys, env);
    const DenseState st = dense_joint_state(t, cfg);

    std::vector<int> frag, joint{0};
    for (int q = 1; q <= n_frag; ++q) {
        frag.push_back(q);
        joint.push_back(q);
    }
    const double h_s = density_entropy(partial_trace(st, {0}));
    const double h_f = n_frag == 0 ? 0.0 : density_entropy(partial_trace(st, frag));
    const double h_sf = density_entropy(partial_trace(st, joint));
    return h_s + h_f - h_sf;
}

}  // namespace hazy
