#pragma once

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "hazy/sweep.hpp"

namespace hazy {

struct ValidationCheck {
    std::string name;
    double max_dev;
    double tolerance;
    bool pass;
};

struct ValidateOptions {
    /// Flip the sign of one computed value in the oracle-equivalence grid:
    /// a self-test proving the harness actually detects faults.
    bool inject_fault = false;
};

namespace detail {

// Small deterministic generator for reproducible pseudo-random inputs.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    double uniform() {  // in [0, 1)
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return double(state >> 11) * 0x1.0p-53;
    }
};

inline double max_abs_entry_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

}  // namespace detail

/// Runs the trust-anchor suite: oracle equivalence for both fast paths,
/// the Eq.-(7) cross-check, Eq.-(3)/(6) consistency, spectrum and sector
/// invariants, the totally-hazy null result, and the measured closed-form
/// discrepancy for mixed rho_S(0). Writes one human-readable line per
/// check to `log` and the machine CSV `check,max_abs_deviation,tolerance,pass`
/// to `csv`. Returns 0 when everything passes, 1 otherwise.
inline int cmd_validate(const SweepConfig& cfg, std::ostream& csv, std::ostream& log,
                        ValidateOptions vopts = {}) {
    const int threads = cfg.resolved_threads();
    const SchurOptions opts = cfg.schur_options();
    std::vector<ValidationCheck> checks;

    const std::vector<double> t_grid = {0.0, kPi / 7.0, kPi / 3.0, kHalfPi, 1.9};
    const std::vector<double> h_grid = {0.0, 0.25, 0.8, 1.0};

    // --- oracle equivalence: schur and closed form vs brute force -----------
    {
        struct Task {
            long n_env;
            double t, h;
        };
        std::vector<Task> tasks;
        for (long n = 2; n <= 8; ++n)
            for (double t : t_grid)
                for (double h : h_grid) tasks.push_back({n, t, h});
        std::vector<double> dev_schur(tasks.size(), 0.0), dev_closed(tasks.size(), 0.0);
        detail::parallel_for(long(tasks.size()), threads, [&](long i) {
            const Task& tk = tasks[i];
            const SystemQubit sys = SystemQubit::plus();
            const EnvQubit env = EnvQubit::from_haziness(tk.h);
            const ModelConfig model(tk.n_env, sys, env);
            for (long f = 0; f <= tk.n_env; ++f) {
                const double ref = oracle_mutual_info(tk.t, tk.n_env, f, sys, env);
                double schur = mutual_info_schur(tk.t, tk.n_env, f, sys, env, opts);
                if (vopts.inject_fault && i == 0 && f == 1) schur = -schur;
                const double closed = mutual_info_closed_form(tk.t, f, model, opts).bits;
                dev_schur[i] = std::max(dev_schur[i], std::abs(schur - ref));
                dev_closed[i] = std::max(dev_closed[i], std::abs(closed - ref));
            }
        });
        double ds = 0.0, dc = 0.0;
        for (double v : dev_schur) ds = std::max(ds, v);
        for (double v : dev_closed) dc = std::max(dc, v);
        checks.push_back({"schur_vs_oracle", ds, 1e-8, ds <= 1e-8});
        checks.push_back({"closed_form_vs_oracle", dc, 1e-8, dc <= 1e-8});
    }

    // --- Eq. (7) vs sector fragment entropy at t = pi/2 ---------------------
    {
        std::vector<long> frags;
        for (long f = 1; f <= 50; ++f) frags.push_back(f);
        frags.push_back(100);
        frags.push_back(200);
        const std::vector<double> hs = {0.1, 0.5, 0.9};
        std::vector<double> devs(frags.size() * hs.size(), 0.0);
        detail::parallel_for(long(devs.size()), threads, [&](long i) {
            const long f = frags[i % frags.size()];
            const double h = hs[i / frags.size()];
            const SystemQubit sys = SystemQubit::plus();
            const EnvQubit env = EnvQubit::from_haziness(h);
            const double closed = fragment_entropy_pi_half(f, sys, env);
            const double sector = fragment_entropy(kHalfPi, f, sys, env, opts);
            devs[i] = std::abs(closed - sector);
        });
        double d = 0.0;
        for (double v : devs) d = std::max(d, v);
        checks.push_back({"eq7_vs_schur_fragment_entropy", d, 1e-9, d <= 1e-9});
    }

    // --- good-decoherence form vs full closed form at t = pi/2, #F < #E -----
    {
        double d = 0.0;
        const SystemQubit sys = SystemQubit::plus();
        for (double h : {0.0, 0.3, 0.8}) {
            const ModelConfig model(100, sys, EnvQubit::from_haziness(h));
            for (long f : {1L, 2L, 5L, 13L, 42L, 99L}) {
                const double a = good_decoherence_info(kHalfPi, f, model, opts);
                const double b = mutual_info_closed_form(kHalfPi, f, model, opts).bits;
                d = std::max(d, std::abs(a - b));
            }
        }
        checks.push_back({"eq3_vs_eq6_at_pi_half", d, 1e-12, d <= 1e-12});
    }

    // --- the Eq. (6) open question: mixed rho_S(0) vs oracle ----------------
    {
        double d = 0.0;
        const std::vector<SystemQubit> mixed = {{0.3, cplx(0.1, 0.2)},
                                                {0.5, cplx(0.2, 0.0)},
                                                {0.7, cplx(0.0, -0.25)}};
        for (const SystemQubit& sys : mixed)
            for (long n : {2L, 4L, 6L})
                for (double t : t_grid)
                    for (double h : {0.25, 0.8}) {
                        const EnvQubit env = EnvQubit::from_haziness(h);
                        const ModelConfig model(n, sys, env);
                        for (long f = 0; f <= n; ++f) {
                            const double ref = oracle_mutual_info(t, n, f, sys, env);
                            const double val =
                                mutual_info_closed_form(t, f, model, opts).bits;
                            d = std::max(d, std::abs(val - ref));
                        }
                    }
        checks.push_back({"closed_form_mixed_state_vs_oracle", d, 1e-8, d <= 1e-8});
    }

    // --- spectrum weights stay normalized ------------------------------------
    {
        double d = 0.0;
        const SystemQubit sys = SystemQubit::plus();
        for (double h : {0.3, 0.9})
            for (double t : {0.7, kHalfPi})
                for (long f : {1L, 7L, 30L, 100L, 200L}) {
                    const EnvQubit env = EnvQubit::from_haziness(h);
                    d = std::max(d, std::abs(fragment_spectrum(t, f, sys, env, opts)
                                                 .total_weight() - 1.0));
                    d = std::max(d, std::abs(joint_spectrum(t, 201, f, sys, env, opts)
                                                 .total_weight() - 1.0));
                }
        checks.push_back({"spectrum_weight_unit", d, 1e-9, d <= 1e-9});
    }

    // --- sector dimensions sum to 2^n (log domain) ---------------------------
    {
        double d = 0.0;
        for (long n : {1L, 2L, 3L, 7L, 20L, 60L, 100L, 200L}) {
            double acc = neg_infinity();
            for (long two_j : sector_labels(n))
                acc = log_add_exp(acc, std::log(double(two_j + 1)) +
                                           sector_multiplicity_log(n, two_j));
            d = std::max(d, std::abs(acc - double(n) * kLn2));
        }
        checks.push_back({"sector_dimension_sum", d, 1e-9, d <= 1e-9});
    }

    // --- sym_power functoriality on pseudo-random pairs ----------------------
    {
        double d = 0.0;
        detail::Lcg rng(12345);
        for (int trial = 0; trial < 20; ++trial) {
            const long k = 1 + trial % 6;
            auto rand_mat = [&] {
                return Mat2{cplx(rng.uniform(), rng.uniform()),
                            cplx(rng.uniform(), rng.uniform()),
                            cplx(rng.uniform(), rng.uniform()),
                            cplx(rng.uniform(), rng.uniform())};
            };
            const Mat2 m = rand_mat(), n = rand_mat();
            const CMatrix lhs = sym_power(m * n, k);
            const CMatrix sm = sym_power(m, k), sn = sym_power(n, k);
            CMatrix rhs(int(k + 1));
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) {
                    cplx s = 0.0;
                    for (int l = 0; l <= k; ++l) s += sm.at(i, l) * sn.at(l, j);
                    rhs.at(i, j) = s;
                }
            d = std::max(d, detail::max_abs_entry_diff(lhs, rhs));
        }
        checks.push_back({"sym_power_functoriality", d, 1e-10, d <= 1e-10});
    }

    // --- totally hazy environment: zero information in the good-decoherence
    // --- domain (t in {0, pi/2}, #F < #E at pi/2)
    {
        double d = 0.0;
        const SystemQubit sys = SystemQubit::plus();
        const EnvQubit env = EnvQubit::from_haziness(1.0);
        for (long n : {4L, 8L}) {
            const ModelConfig model(n, sys, env);
            for (long f = 0; f <= n; ++f)
                d = std::max(d, std::abs(oracle_mutual_info(0.0, n, f, sys, env)));
            for (long f = 0; f < n; ++f) {
                d = std::max(d, std::abs(oracle_mutual_info(kHalfPi, n, f, sys, env)));
                d = std::max(d, std::abs(mutual_info_schur(kHalfPi, n, f, sys, env, opts)));
                d = std::max(d,
                             std::abs(mutual_info_closed_form(kHalfPi, f, model, opts).bits));
            }
        }
        const ModelConfig big(100, sys, env);
        for (long f : {0L, 1L, 50L, 99L}) {
            d = std::max(d, std::abs(mutual_info_closed_form(kHalfPi, f, big, opts).bits));
            d = std::max(d, std::abs(mutual_info_schur(kHalfPi, 100, f, sys, env, opts)));
            d = std::max(d, std::abs(good_decoherence_info(kHalfPi, f, big, opts)));
        }
        checks.push_back({"hazy_null_result", d, 1e-10, d <= 1e-10});
    }

    // --- Eq. (12) marginals reproduce the Eq. (7) eigenvalues ----------------
    {
        double d = 0.0;
        const SystemQubit sys = SystemQubit::plus();
        for (double h : {0.3, 0.9})
            for (long f : {1L, 5L, 50L}) {
                const EnvQubit env = EnvQubit::from_haziness(h);
                const BimodalDistribution bd = bimodal_distribution(f, sys, env);
                const double lp = env.lambda_plus(), lm = env.lambda_minus();
                for (long n = 0; n <= f; ++n) {
                    const double lam_f =
                        sys.s00 * std::pow(lm, double(n)) * std::pow(lp, double(f - n)) +
                        sys.s11() * std::pow(lm, double(f - n)) * std::pow(lp, double(n));
                    const double c = std::exp(log_binomial(f, n));
                    d = std::max(d, std::abs(bd.p_left[n] + bd.p_right[n] - c * lam_f));
                }
            }
        checks.push_back({"bimodal_marginals_match_eq7", d, 1e-12, d <= 1e-12});
    }

    // --- info curves nondecreasing in fragment size ---------------------------
    {
        double worst = 0.0;  // largest decrease observed
        const SystemQubit sys = SystemQubit::plus();
        for (double h : {0.0, 0.5, 0.9})
            for (double t : {kPi / 5.0, kHalfPi}) {
                const ModelConfig model(20, sys, EnvQubit::from_haziness(h));
                const InfoCurve c = info_curve(t, model, Method::schur, opts);
                for (std::size_t i = 1; i < c.points.size(); ++i)
                    worst = std::max(worst, c.points[i - 1].bits - c.points[i].bits);
            }
        checks.push_back({"info_curve_monotone", worst, 1e-9, worst <= 1e-9});
    }

    // --- report ---------------------------------------------------------------
    bool all_pass = true;
    csv << "check,max_abs_deviation,tolerance,pass\n";
    for (const ValidationCheck& c : checks) {
        all_pass = all_pass && c.pass;
        csv << c.name << ',' << format_g17(c.max_dev) << ',' << format_g17(c.tolerance)
            << ',' << (c.pass ? "true" : "false") << '\n';
        log << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": max deviation "
            << format_g17(c.max_dev) << " (tolerance " << format_g17(c.tolerance)
            << ")\n";
    }
    log << (all_pass ? "all checks passed\n" : "VALIDATION FAILED\n");
    return all_pass ? 0 : 1;
}

}  // namespace hazy
