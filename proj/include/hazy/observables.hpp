#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hazy/closed_form.hpp"
#include "hazy/dense_oracle.hpp"
#include "hazy/model.hpp"
#include "hazy/schur.hpp"

namespace hazy {

enum class Method { automatic, schur, closed_form, oracle };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::schur: return "schur";
        case Method::closed_form: return "closed-form";
        case Method::oracle: return "oracle";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "auto") return Method::automatic;
    if (s == "schur") return Method::schur;
    if (s == "closed-form" || s == "closed_form") return Method::closed_form;
    if (s == "oracle") return Method::oracle;
    throw std::domain_error("unknown method '" + s +
                            "' (expected auto|schur|closed-form|oracle)");
}

/// auto dispatch: oracle when the dense state is cheap (n_env <= 8), the
/// Eq.-(7)-backed closed form at the exactly-solvable point (t = pi/2,
/// r00 = 1/2), the sector spectra otherwise.
inline Method resolve_method(Method m, double t, const ModelConfig& cfg) {
    if (m != Method::automatic) return m;
    if (cfg.n_env <= 8) return Method::oracle;
    if (t == kHalfPi && std::abs(cfg.env.r00 - 0.5) <= 1e-12)
        return Method::closed_form;
    return Method::schur;
}

/// I(S:F) through the requested route.
inline double mutual_info(double t, long n_frag, const ModelConfig& cfg,
                          Method method = Method::automatic,
                          const SchurOptions& opts = {}) {
    switch (resolve_method(method, t, cfg)) {
        case Method::oracle:
            return oracle_mutual_info(t, cfg.n_env, n_frag, cfg.system, cfg.env);
        case Method::closed_form:
            return mutual_info_closed_form(t, n_frag, cfg, opts).bits;
        default:
            return mutual_info_schur(t, cfg.n_env, n_frag, cfg.system, cfg.env, opts);
    }
}

/// The classical plateau sits at the decohered system entropy H(s00).
inline double plateau_level(const SystemQubit& sys) { return binary_entropy(sys.s00); }

struct InfoPoint {
    long n_frag;
    double bits;
    Method method;  // the route actually used
};

struct InfoCurve {
    double t;
    std::vector<InfoPoint> points;  // n_frag = 0..n_env, ascending
};

/// Mutual information for every fragment size 0..n_env at one time.
inline InfoCurve info_curve(double t, const ModelConfig& cfg,
                            Method method = Method::automatic,
                            const SchurOptions& opts = {}) {
    const Method used = resolve_method(method, t, cfg);
    if (used == Method::oracle && cfg.n_env > 12)
        throw std::domain_error(
            "info_curve: method oracle requires n_env <= 12, got " +
            std::to_string(cfg.n_env));
    InfoCurve curve;
    curve.t = t;
    curve.points.resize(cfg.n_env + 1);
    detail::parallel_for(cfg.n_env + 1, opts.threads, [&](long f) {
        SchurOptions point_opts = opts;
        point_opts.threads = 1;  // grid-level parallelism only
        curve.points[f] = {f, mutual_info(t, f, cfg, used, point_opts), used};
    });
    return curve;
}

/// Information deficit delta = 1 - I / H_S against the plateau level,
/// clamped to [0, 1].
inline double deficit(double info_bits, const SystemQubit& sys) {
    const double h_s = plateau_level(sys);
    if (h_s <= 0.0)
        throw std::domain_error("deficit: plateau level H(s00) is zero");
    return std::min(std::max(1.0 - info_bits / h_s, 0.0), 1.0);
}

/// Least fragment size whose information reaches (1 - delta) H_S, or
/// absent if none up to n_env qualifies. Binary search over the
/// (monotone) info curve plus a +-1 linear verification; comparisons use
/// an absolute slack of 1e-12 so curves that touch the threshold exactly
/// are not lost to round-off.
inline std::optional<long> min_fragment_for_deficit(double delta, double t,
                                                    const ModelConfig& cfg,
                                                    Method method = Method::automatic,
                                                    const SchurOptions& opts = {}) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::domain_error("min_fragment_for_deficit: delta must be in (0,1)");
    const double h_s = plateau_level(cfg.system);
    if (h_s <= 0.0) return std::nullopt;
    const double threshold = (1.0 - delta) * h_s - 1e-12;

    std::map<long, double> cache;
    auto info_at = [&](long f) {
        auto it = cache.find(f);
        if (it != cache.end()) return it->second;
        const double v = mutual_info(t, f, cfg, method, opts);
        cache.emplace(f, v);
        return v;
    };

    if (info_at(cfg.n_env) < threshold) return std::nullopt;
    long lo = 1, hi = cfg.n_env;
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (info_at(mid) >= threshold)
            hi = mid;
        else
            lo = mid + 1;
    }
    // guard against tolerance-level non-monotonicity around the candidate
    while (lo > 1 && info_at(lo - 1) >= threshold) --lo;
    while (lo <= cfg.n_env && info_at(lo) < threshold) ++lo;
    if (lo > cfg.n_env) return std::nullopt;
    return lo;
}

struct RedundancyResult {
    double haziness;
    double delta;
    double t;
    long n_env;
    std::optional<long> n_frag_delta;

    /// R_delta = n_env / n_frag_delta: rational with n_env in the numerator.
    std::optional<double> redundancy() const {
        if (!n_frag_delta) return std::nullopt;
        return double(n_env) / double(*n_frag_delta);
    }
};

inline RedundancyResult redundancy(double delta, double t, const ModelConfig& cfg,
                                   Method method = Method::automatic,
                                   const SchurOptions& opts = {}) {
    RedundancyResult r{cfg.env.haziness(), delta, t, cfg.n_env,
                       min_fragment_for_deficit(delta, t, cfg, method, opts)};
    return r;
}

/// (overlap, deficit) pairs for a list of environment states at fixed
/// fragment size, sorted by overlap. The Fig.-3b-style relation.
inline std::vector<std::pair<double, double>> deficit_overlap_curve(
    long n_frag, double t, const SystemQubit& sys, const std::vector<EnvQubit>& envs,
    long n_env, Method method = Method::automatic, const SchurOptions& opts = {}) {
    std::vector<std::pair<double, double>> out;
    out.reserve(envs.size());
    for (const EnvQubit& env : envs) {
        const ModelConfig cfg(n_env, sys, env);
        const double ov = bimodal_distribution(n_frag, sys, env).overlap;
        const double d = deficit(mutual_info(t, n_frag, cfg, method, opts), sys);
        out.emplace_back(ov, d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hazy
