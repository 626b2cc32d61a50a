#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hazy/observables.hpp"

namespace hazy {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A time value together with the token it was written as. Symbolic pi
/// tokens ("pi/2", "pi/3", "0.75*pi") resolve to the same double the
/// library's special-point dispatch compares against, so t = pi/2 never
/// drifts past the Eq.-(7) precondition through decimal rounding.
struct TimeSpec {
    std::string token;
    double value;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " from '" + s + "'");
    }
    if (pos != t.size())
        throw ConfigError("trailing characters in " + what + " '" + s + "'");
    return v;
}

inline long parse_integer(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " from '" + s + "'");
    }
    if (pos != t.size())
        throw ConfigError("trailing characters in " + what + " '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Accepts "pi", "pi/3", "0.5*pi", "2*pi/7", or a plain decimal.
inline double parse_time_token(const std::string& token) {
    const std::string t = detail::trim(token);
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string::npos) return detail::parse_number(t, "time");
    double coef = 1.0;
    if (pi_pos > 0) {
        const std::string head = detail::trim(t.substr(0, pi_pos));
        if (head.empty() || head.back() != '*')
            throw ConfigError("malformed time token '" + token + "'");
        coef = detail::parse_number(head.substr(0, head.size() - 1), "time coefficient");
    }
    double divisor = 1.0;
    const std::string tail = detail::trim(t.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/')
            throw ConfigError("malformed time token '" + token + "'");
        divisor = detail::parse_number(tail.substr(1), "time divisor");
        if (divisor == 0.0) throw ConfigError("time token divides by zero");
    }
    return coef * kPi / divisor;
}

/// Comma list of time tokens, or a "start:stop:count" linear grid whose
/// endpoints are taken verbatim (so symbolic endpoints stay exact).
inline std::vector<TimeSpec> parse_t_grid(const std::string& spec) {
    std::vector<TimeSpec> grid;
    const std::string s = detail::trim(spec);
    if (s.empty()) throw ConfigError("empty t_grid");
    if (s.find(':') != std::string::npos) {
        const auto parts = detail::split(s, ':');
        if (parts.size() != 3)
            throw ConfigError("t_grid range must be start:stop:count, got '" + spec + "'");
        const double start = parse_time_token(parts[0]);
        const double stop = parse_time_token(parts[1]);
        const long count = detail::parse_integer(parts[2], "t_grid count");
        if (count < 1) throw ConfigError("t_grid count must be >= 1");
        for (long i = 0; i < count; ++i) {
            double v;
            std::string tok;
            if (i == 0) {
                v = start;
                tok = detail::trim(parts[0]);
            } else if (i == count - 1) {
                v = stop;
                tok = detail::trim(parts[1]);
            } else {
                v = start + double(i) * (stop - start) / double(count - 1);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                tok = buf;
            }
            grid.push_back({tok, v});
        }
        return grid;
    }
    for (const std::string& tok : detail::split(s, ',')) {
        const std::string tt = detail::trim(tok);
        if (tt.empty()) throw ConfigError("empty entry in t_grid '" + spec + "'");
        grid.push_back({tt, parse_time_token(tt)});
    }
    return grid;
}

/// "all", or a comma list of sizes and inclusive "a-b" ranges.
struct FragGrid {
    bool all = true;
    std::vector<long> list;
    std::string token = "all";
};

inline FragGrid parse_frag_grid(const std::string& spec) {
    FragGrid g;
    g.token = detail::trim(spec);
    if (g.token.empty()) throw ConfigError("empty frag_grid");
    if (g.token == "all") return g;
    g.all = false;
    for (const std::string& tok : detail::split(g.token, ',')) {
        const std::string tt = detail::trim(tok);
        const auto dash = tt.find('-');
        if (dash != std::string::npos && dash > 0) {
            const long a = detail::parse_integer(tt.substr(0, dash), "frag_grid");
            const long b = detail::parse_integer(tt.substr(dash + 1), "frag_grid");
            if (b < a) throw ConfigError("descending range in frag_grid '" + tt + "'");
            for (long f = a; f <= b; ++f) g.list.push_back(f);
        } else {
            g.list.push_back(detail::parse_integer(tt, "frag_grid"));
        }
    }
    return g;
}

/// Comma list or start:stop:count linear grid of plain decimals.
inline std::vector<double> parse_value_grid(const std::string& spec,
                                            const std::string& what) {
    std::vector<double> out;
    const std::string s = detail::trim(spec);
    if (s.empty()) throw ConfigError("empty " + what);
    if (s.find(':') != std::string::npos) {
        const auto parts = detail::split(s, ':');
        if (parts.size() != 3)
            throw ConfigError(what + " range must be start:stop:count");
        const double start = detail::parse_number(parts[0], what);
        const double stop = detail::parse_number(parts[1], what);
        const long count = detail::parse_integer(parts[2], what + " count");
        if (count < 1) throw ConfigError(what + " count must be >= 1");
        for (long i = 0; i < count; ++i)
            out.push_back(i == 0 ? start
                          : i == count - 1
                              ? stop
                              : start + double(i) * (stop - start) / double(count - 1));
        return out;
    }
    for (const std::string& tok : detail::split(s, ','))
        out.push_back(detail::parse_number(tok, what));
    return out;
}

/// One sweep request. Defaults reproduce the paper's reference setup:
/// #E = 100, rho_S(0) = |+><+|, r00 = 1/2, pure environment, t = pi/2.
struct SweepConfig {
    long n_env = 100;
    double s00 = 0.5, s01_re = 0.5, s01_im = 0.0;
    double r00 = 0.5;
    std::optional<double> r01;       // exactly one of r01 / haziness
    std::optional<double> haziness;  // (neither set means haziness = 0)
    std::vector<TimeSpec> t_grid{{"pi/2", kHalfPi}};
    FragGrid frag_grid;
    std::vector<double> h_grid;  // redundancy sweep; default filled below
    double delta = 0.1;
    long n_frag = 50;  // bimodal fragment size (Fig.-3b convention)
    Method method = Method::automatic;
    int threads = 0;  // 0 = hardware concurrency
    std::string output;
    bool allow_large_frag = false;
    EigenMethod eigen_method = EigenMethod::householder_ql;

    SystemQubit system() const { return {s00, {s01_re, s01_im}}; }

    EnvQubit env() const {
        if (r01 && haziness)
            throw ConfigError("exactly one of r01 / haziness may be given");
        if (r01) return {r00, *r01};
        return EnvQubit::from_haziness(haziness.value_or(0.0), r00);
    }

    ModelConfig model() const { return {n_env, system(), env()}; }

    std::vector<long> fragments() const {
        if (frag_grid.all) {
            std::vector<long> out(n_env + 1);
            for (long f = 0; f <= n_env; ++f) out[f] = f;
            return out;
        }
        for (long f : frag_grid.list)
            if (f < 0 || f > n_env)
                throw ConfigError("frag_grid entry " + std::to_string(f) +
                                  " outside [0, n_env=" + std::to_string(n_env) + "]");
        return frag_grid.list;
    }

    std::vector<double> haziness_grid() const {
        if (!h_grid.empty()) return h_grid;
        std::vector<double> out;
        for (int i = 0; i <= 99; ++i) out.push_back(double(i) / 100.0);
        return out;
    }

    int resolved_threads() const {
        if (threads > 0) return threads;
        const unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : int(hc);
    }

    SchurOptions schur_options() const {
        SchurOptions o;
        o.threads = 1;  // sweeps parallelize over grid points instead
        o.allow_large_frag = allow_large_frag;
        o.eigen_method = eigen_method;
        return o;
    }

    void validate() const {
        if (n_env < 1) throw ConfigError("n_env must be >= 1");
        if (threads < 0) throw ConfigError("threads must be >= 0");
        if (delta <= 0.0 || delta >= 1.0) throw ConfigError("delta must be in (0,1)");
        if (n_frag < 1) throw ConfigError("n_frag must be >= 1");
        try {
            (void)model();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        (void)fragments();
        if (t_grid.empty()) throw ConfigError("t_grid must be nonempty");
    }
};

inline std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string join_tokens(const std::vector<TimeSpec>& grid) {
    std::string s;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i) s += ',';
        s += grid[i].token;
    }
    return s;
}

inline std::string sanitize_error(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    return msg;
}

}  // namespace detail

/// Apply one `key = value` assignment (config-file line or equivalent).
inline void apply_config_entry(SweepConfig& cfg, const std::string& key,
                               const std::string& value) {
    if (key == "n_env") cfg.n_env = detail::parse_integer(value, key);
    else if (key == "s00") cfg.s00 = detail::parse_number(value, key);
    else if (key == "s01_re") cfg.s01_re = detail::parse_number(value, key);
    else if (key == "s01_im") cfg.s01_im = detail::parse_number(value, key);
    else if (key == "r00") cfg.r00 = detail::parse_number(value, key);
    else if (key == "r01") { cfg.r01 = detail::parse_number(value, key); cfg.haziness.reset(); }
    else if (key == "haziness") { cfg.haziness = detail::parse_number(value, key); cfg.r01.reset(); }
    else if (key == "t_grid") cfg.t_grid = parse_t_grid(value);
    else if (key == "frag_grid") cfg.frag_grid = parse_frag_grid(value);
    else if (key == "h_grid") cfg.h_grid = parse_value_grid(value, key);
    else if (key == "delta") cfg.delta = detail::parse_number(value, key);
    else if (key == "n_frag") cfg.n_frag = detail::parse_integer(value, key);
    else if (key == "method") cfg.method = parse_method(detail::trim(value));
    else if (key == "threads") cfg.threads = int(detail::parse_integer(value, key));
    else if (key == "output") cfg.output = detail::trim(value);
    else if (key == "allow_large_frag") cfg.allow_large_frag = detail::parse_integer(value, key) != 0;
    else if (key == "eigen_method") {
        const std::string v = detail::trim(value);
        if (v == "householder-ql") cfg.eigen_method = EigenMethod::householder_ql;
        else if (v == "jacobi") cfg.eigen_method = EigenMethod::jacobi;
        else throw ConfigError("unknown eigen_method '" + v + "'");
    }
    else throw ConfigError("unknown key '" + key + "'");
}

/// Flat `key = value` text, `#` comments, UTF-8. Later lines win; CLI
/// flags are applied on top by the driver.
inline SweepConfig parse_config_text(const std::string& text,
                                     const std::string& origin = "<config>") {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    bool saw_r01 = false, saw_haziness = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || line.find("==") != std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        saw_r01 = saw_r01 || key == "r01";
        saw_haziness = saw_haziness || key == "haziness";
        if (saw_r01 && saw_haziness)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": exactly one of r01 / haziness may be given");
        try {
            apply_config_entry(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": field '" +
                              key + "': " + e.what());
        }
    }
    return cfg;
}

inline SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

inline std::string serialize_config(const SweepConfig& cfg) {
    std::ostringstream out;
    out << "n_env = " << cfg.n_env << '\n';
    out << "s00 = " << format_g17(cfg.s00) << '\n';
    out << "s01_re = " << format_g17(cfg.s01_re) << '\n';
    out << "s01_im = " << format_g17(cfg.s01_im) << '\n';
    out << "r00 = " << format_g17(cfg.r00) << '\n';
    if (cfg.r01) out << "r01 = " << format_g17(*cfg.r01) << '\n';
    if (cfg.haziness) out << "haziness = " << format_g17(*cfg.haziness) << '\n';
    out << "t_grid = " << detail::join_tokens(cfg.t_grid) << '\n';
    out << "frag_grid = " << cfg.frag_grid.token << '\n';
    if (!cfg.h_grid.empty()) {
        out << "h_grid = ";
        for (std::size_t i = 0; i < cfg.h_grid.size(); ++i)
            out << (i ? "," : "") << format_g17(cfg.h_grid[i]);
        out << '\n';
    }
    out << "delta = " << format_g17(cfg.delta) << '\n';
    out << "n_frag = " << cfg.n_frag << '\n';
    out << "method = " << method_name(cfg.method) << '\n';
    out << "threads = " << cfg.threads << '\n';
    if (!cfg.output.empty()) out << "output = " << cfg.output << '\n';
    out << "allow_large_frag = " << (cfg.allow_large_frag ? 1 : 0) << '\n';
    out << "eigen_method = "
        << (cfg.eigen_method == EigenMethod::jacobi ? "jacobi" : "householder-ql")
        << '\n';
    return out.str();
}

/// Full (t_grid x frag_grid) sweep of I(S:F), one CSV row per point,
/// sorted by (t, n_frag). Rows are computed by a stateless worker pool
/// and merged by index, so the bytes are identical for any thread count.
/// Per-point dispatch failures become row-level error markers.
inline int cmd_mutual_info(const SweepConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelConfig model = cfg.model();
    const double h = model.env.haziness();
    const std::vector<long> frags = cfg.fragments();

    struct Point {
        TimeSpec t;
        long frag;
    };
    std::vector<Point> points;
    points.reserve(cfg.t_grid.size() * frags.size());
    for (const TimeSpec& t : cfg.t_grid)
        for (long f : frags) points.push_back({t, f});
    std::stable_sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.t.value != b.t.value) return a.t.value < b.t.value;
        return a.frag < b.frag;
    });

    const SchurOptions opts = cfg.schur_options();
    std::vector<std::string> rows(points.size());
    detail::parallel_for(long(points.size()), cfg.resolved_threads(), [&](long i) {
        const Point& p = points[i];
        const Method used = resolve_method(cfg.method, p.t.value, model);
        std::string cell;
        try {
            cell = format_g17(mutual_info(p.t.value, p.frag, model, used, opts));
        } catch (const std::exception& e) {
            cell = "error(" + detail::sanitize_error(e.what()) + ")";
        }
        rows[i] = format_g17(p.t.value) + "," + std::to_string(p.frag) + "," +
                  std::to_string(cfg.n_env) + "," + format_g17(h) + "," +
                  method_name(used) + "," + cell;
    });

    out << "t,n_frag,n_env,haziness,method,I_bits\n";
    for (const std::string& r : rows) out << r << '\n';
    return 0;
}

/// Redundancy R_delta versus haziness for each t in the grid. Absent
/// values (no qualifying fragment) are emitted as empty fields.
inline int cmd_redundancy(const SweepConfig& cfg, std::ostream& out) {
    cfg.validate();
    const std::vector<double> hs = cfg.haziness_grid();

    struct Point {
        TimeSpec t;
        double h;
    };
    std::vector<Point> points;
    for (const TimeSpec& t : cfg.t_grid)
        for (double h : hs) points.push_back({t, h});
    std::stable_sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.t.value != b.t.value) return a.t.value < b.t.value;
        return a.h < b.h;
    });

    const SchurOptions opts = cfg.schur_options();
    std::vector<std::string> rows(points.size());
    detail::parallel_for(long(points.size()), cfg.resolved_threads(), [&](long i) {
        const Point& p = points[i];
        std::string frag_cell, red_cell;
        try {
            const EnvQubit env = EnvQubit::from_haziness(p.h, cfg.r00);
            const ModelConfig model(cfg.n_env, cfg.system(), env);
            const RedundancyResult r =
                redundancy(cfg.delta, p.t.value, model, cfg.method, opts);
            if (r.n_frag_delta) {
                frag_cell = std::to_string(*r.n_frag_delta);
                red_cell = format_g17(*r.redundancy());
            }
        } catch (const std::exception& e) {
            frag_cell = "error(" + detail::sanitize_error(e.what()) + ")";
        }
        rows[i] = format_g17(p.h) + "," + format_g17(cfg.delta) + "," +
                  format_g17(p.t.value) + "," + frag_cell + "," + red_cell;
    });

    out << "haziness,delta,t,n_frag_delta,redundancy\n";
    for (const std::string& r : rows) out << r << '\n';
    return 0;
}

/// Record-count distribution P_L/P_R at t = pi/2 for one fragment size,
/// plus the (overlap, deficit) summary row.
inline int cmd_bimodal(const SweepConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.n_frag > cfg.n_env)
        throw ConfigError("bimodal: n_frag exceeds n_env");
    const ModelConfig model = cfg.model();
    const BimodalDistribution bd =
        bimodal_distribution(cfg.n_frag, model.system, model.env);

    out << "n,P_L,P_R\n";
    for (long n = 0; n <= cfg.n_frag; ++n)
        out << n << ',' << format_g17(bd.p_left[n]) << ',' << format_g17(bd.p_right[n])
            << '\n';

    std::string summary;
    try {
        const double info =
            mutual_info(kHalfPi, cfg.n_frag, model, cfg.method, cfg.schur_options());
        summary = format_g17(bd.overlap) + "," + format_g17(deficit(info, model.system));
    } catch (const std::exception& e) {
        summary = format_g17(bd.overlap) + ",error(" + detail::sanitize_error(e.what()) + ")";
    }
    out << "overlap,deficit\n" << summary << '\n';
    return 0;
}

}  // namespace hazy
