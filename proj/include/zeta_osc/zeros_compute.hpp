#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "zeta_osc/zeros_ingest.hpp"

namespace zeta_osc {

struct RSConfig {
    /// Absolute tolerance on each refined b_j.
    double refine_tolerance = 1e-9;
    /// Scan resolution per Gram interval (>= 4).
    int scan_points_per_gram_interval = 8;
    /// Number of Riemann-Siegel correction terms beyond C0 used by the scan (0..4).
    int correction_terms = 4;

    void validate() const;
};

/// Riemann-Siegel theta, asymptotic expansion truncated after the t^-3 term.
double rs_theta(double t);
double rs_theta_derivative(double t);

/// Riemann-Siegel Z(t) for t > 2 pi: main sum plus the C0 remainder
/// (-1)^(m-1) (t/2pi)^(-1/4) Psi(p), and optionally C1..C4.
/// `correction_terms` = 0 gives the first-order formula.
double rs_z(double t, int correction_terms = 4);

/// Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p), evaluated through its
/// removable singularities at p = 1/4 and 3/4.
double rs_psi(double p);

/// Z(t) used for zero finding: an Euler-Maclaurin evaluation of
/// zeta(1/2 + it) below kEulerMaclaurinCrossover, rs_z above it.
/// The asymptotic Riemann-Siegel remainder is only good to ~1e-6 near t = 14.
double hardy_z(double t, int correction_terms = 4);
inline constexpr double kEulerMaclaurinCrossover = 400.0;

/// Gram point g_n: rs_theta(g_n) = n pi. Newton iteration from the inverted
/// leading term. Accepts n >= -1 (g_{-1} ~ 9.667 brackets the first zero).
/// Throws NumericError if Newton fails to converge in 64 iterations.
double gram_point(std::int64_t n);

/// Bisects a sign-change bracket of `f` down to width <= tol and returns the
/// midpoint. Requires f(lo) and f(hi) of opposite sign (or one exactly 0).
template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double tol, double f_lo, double f_hi) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_sign_change: empty bracket");
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw std::invalid_argument("bisect_sign_change: no sign change in bracket");
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double tol) {
    return bisect_sign_change(f, lo, hi, tol, f(lo), f(hi));
}

/// First n zeros, by scanning Z over Gram intervals and bisecting each sign
/// change. The running count is verified at every good Gram point g_m
/// ((-1)^m Z(g_m) > 0) against N(g_m) = m + 1; a failing Gram block is
/// re-scanned at 8x density before MissedZeroError is thrown.
ZeroTable compute_first_n_zeros(std::size_t n, const RSConfig& cfg = {});

}  // namespace zeta_osc
