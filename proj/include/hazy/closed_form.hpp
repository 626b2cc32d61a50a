#pragma once

#include <cmath>
#include <stdexcept>

#include "hazy/model.hpp"
#include "hazy/schur.hpp"

namespace hazy {

namespace detail {

// H_F(t) routed to the cheapest exact expression: #F h at t = 0, the
// closed form at the special point (t = pi/2, r00 = 1/2), the sector
// spectrum otherwise. Dispatch on t uses exact double equality; the sweep
// layer guarantees symbolic time tokens land on these exact values.
inline double fragment_entropy_dispatch(double t, long n_frag, const SystemQubit& sys,
                                        const EnvQubit& env, const SchurOptions& opts) {
    if (n_frag == 0) return 0.0;
    if (t == 0.0) return double(n_frag) * env.haziness();
    if (t == kHalfPi && std::abs(env.r00 - 0.5) <= 1e-12)
        return fragment_entropy_pi_half(n_frag, sys, env);
    return fragment_entropy(t, n_frag, sys, env, opts);
}

}  // namespace detail

struct ClosedFormInfo {
    double bits;
    /// True when the parameters fall in the domain where the closed form
    /// has been verified analytically (pure rho_S(0), or t = 0). Outside
    /// it the value is still computed; `validate` measures the discrepancy
    /// against the dense oracle instead of asserting it away.
    bool verified_domain;
};

/// I(S:F) = [H_F(t) - H_F(0)] + [H(kappa_E(t)) - H(kappa_{E/F}(t))],
/// with H_F(0) = #F h in this symmetric model.
inline ClosedFormInfo mutual_info_closed_form(double t, long n_frag,
                                              const ModelConfig& cfg,
                                              const SchurOptions& opts = {}) {
    if (n_frag < 0 || n_frag > cfg.n_env)
        throw std::domain_error("mutual_info_closed_form: n_frag outside [0, n_env]");
    const bool verified = cfg.system.is_pure() || t == 0.0;
    if (t == 0.0) return {0.0, true};
    if (cfg.system.s00 <= 0.0 || cfg.system.s00 >= 1.0)
        return {0.0, verified};  // pointer eigenstate: nothing to learn

    const double lam = std::abs(lambda_k(t, cfg.env));
    const double h_f = detail::fragment_entropy_dispatch(t, n_frag, cfg.system, cfg.env, opts);
    const double h_f0 = double(n_frag) * cfg.env.haziness();
    const double dev =
        binary_entropy(kappa(cfg.system, detail::pow_integer(lam, cfg.n_env))) -
        binary_entropy(kappa(cfg.system, detail::pow_integer(lam, cfg.n_env - n_frag)));
    return {(h_f - h_f0) + dev, verified};
}

/// Eq.-(3) form I = H_F(t) - H_F(0): exact whenever both Lambda_E and
/// Lambda_{E/F} vanish (at t = pi/2, r00 = 1/2 that is everywhere except
/// #F = #E).
inline double good_decoherence_info(double t, long n_frag, const ModelConfig& cfg,
                                    const SchurOptions& opts = {}) {
    if (n_frag < 0 || n_frag > cfg.n_env)
        throw std::domain_error("good_decoherence_info: n_frag outside [0, n_env]");
    if (t == 0.0) return 0.0;
    const double h_f = detail::fragment_entropy_dispatch(t, n_frag, cfg.system, cfg.env, opts);
    return h_f - double(n_frag) * cfg.env.haziness();
}

}  // namespace hazy
