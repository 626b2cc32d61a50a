#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hazy {

inline constexpr double kLn2 = 0.69314718055994530942;

inline double neg_infinity() { return -std::numeric_limits<double>::infinity(); }

/// Binary (Shannon) entropy H(x) = -x log2 x - (1-x) log2(1-x) in bits.
/// Inputs within 1e-12 of [0,1] are clamped; anything farther out is a
/// domain error. H(0) = H(1) = 0 exactly.
inline double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw std::domain_error("binary_entropy: argument " + std::to_string(x) +
                                " outside [0,1]");
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

/// Unique x in [1/2, 1] with binary_entropy(x) = h, by bisection.
inline double invert_binary_entropy(double h) {
    if (h < -1e-12 || h > 1.0 + 1e-12)
        throw std::domain_error("invert_binary_entropy: argument " +
                                std::to_string(h) + " outside [0,1]");
    if (h >= 1.0) return 0.5;
    if (h <= 0.0) return 1.0;
    double lo = 0.5, hi = 1.0;
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (binary_entropy(mid) > h)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// ln C(n, k). Backed by lgamma; relative accuracy ~1e-14 for n <= 1e6.
inline double log_binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n)
        throw std::domain_error("log_binomial: require 0 <= k <= n, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
    if (n > 1000000)
        throw std::domain_error("log_binomial: n exceeds the supported cap of 1e6");
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
inline double log_add_exp(double a, double b) {
    if (a == neg_infinity()) return b;
    if (b == neg_infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

namespace detail {

// Kahan-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace detail

/// Multiset of eigenvalues carried entirely in the natural-log domain:
/// each entry is (log value, log multiplicity). Multiplicities may be
/// astronomically large (e.g. ln C(200,100) ~ 135) and values denormally
/// small (e.g. 200 ln lambda_minus ~ -900); neither is representable as a
/// plain double product, which is why both live as logs. Exact zero
/// eigenvalues are carried separately as an explicit zero-weight marker.
class Spectrum {
  public:
    struct Entry {
        double log_value;
        double log_multiplicity;
    };

    /// Add a strictly positive eigenvalue given as its natural log.
    void add_log(double log_value, double log_multiplicity) {
        if (!std::isfinite(log_value))
            throw std::invalid_argument("Spectrum::add_log: non-finite log value");
        entries_.push_back({log_value, log_multiplicity});
    }

    /// Add a raw eigenvalue (e.g. straight from an eigensolver).
    /// Values below -1e-12 are an error; values in [-1e-12, 0] are
    /// clamped to an exact zero marker.
    void add_eigenvalue(double value, double log_multiplicity) {
        if (value < -1e-12)
            throw std::domain_error("Spectrum: eigenvalue " + std::to_string(value) +
                                    " below -1e-12");
        if (value <= 0.0)
            add_zero(log_multiplicity);
        else
            entries_.push_back({std::log(value), log_multiplicity});
    }

    void add_zero(double log_multiplicity) {
        log_zero_mult_ = log_add_exp(log_zero_mult_, log_multiplicity);
    }

    const std::vector<Entry>& entries() const { return entries_; }

    /// Natural log of the total multiplicity of exact zeros (-inf if none).
    double log_zero_multiplicity() const { return log_zero_mult_; }

    /// Sum of multiplicity * value over all entries.
    double total_weight() const {
        detail::CompensatedSum w;
        for (const Entry& e : entries_) w.add(std::exp(e.log_value + e.log_multiplicity));
        return w.sum;
    }

  private:
    std::vector<Entry> entries_;
    double log_zero_mult_ = -std::numeric_limits<double>::infinity();
};

/// Von Neumann entropy -sum mult * v * log2 v in bits. The per-entry term
/// is evaluated as exp(log_mult + log_v + log(-log_v)) / ln 2, so values as
/// small as e^-1000 contribute correctly instead of underflowing to NaN.
/// Requires unit total weight (within 1e-9).
inline double spectrum_entropy(const Spectrum& s) {
    const double w = s.total_weight();
    if (std::abs(w - 1.0) > 1e-9)
        throw std::domain_error("spectrum_entropy: weights sum to " +
                                std::to_string(w) + ", not 1");
    detail::CompensatedSum h;
    for (const Spectrum::Entry& e : s.entries()) {
        if (e.log_value == 0.0) continue;
        if (e.log_value < 0.0)
            h.add(std::exp(e.log_multiplicity + e.log_value +
                           std::log(-e.log_value)) / kLn2);
        else  // value marginally above 1: round-off on a unit-weight spectrum
            h.add(-std::exp(e.log_multiplicity + e.log_value) * e.log_value / kLn2);
    }
    return h.sum;
}

}  // namespace hazy
