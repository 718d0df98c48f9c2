#include "zeta_osc/zeros_compute.hpp"

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/lambert_w.hpp>

#include "rs_coefficients.hpp"
#include "zeta_osc/error.hpp"

namespace zeta_osc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <std::size_t N>
double horner(const std::array<double, N>& c, double z) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

double correction_poly(int k, double z) {
    switch (k) {
        case 1: return horner(detail::kC1, z);
        case 2: return horner(detail::kC2, z);
        case 3: return horner(detail::kC3, z);
        case 4: return horner(detail::kC4, z);
        default: return 0.0;
    }
}

// ln n and n^-1/2 for the main sum; covers t up to ~1e8.
struct MainSumTable {
    static constexpr std::size_t kSize = 4096;
    std::array<double, kSize + 1> log_n{};
    std::array<double, kSize + 1> inv_sqrt_n{};

    MainSumTable() {
        for (std::size_t n = 1; n <= kSize; ++n) {
            log_n[n] = std::log(static_cast<double>(n));
            inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

const MainSumTable& main_sum_table() {
    static const MainSumTable table;
    return table;
}

// Asymptotic theta carried to the t^-9 term; at t = 9 the truncation error
// is below 1e-13, which is what the Euler-Maclaurin branch needs.
double theta_extended(double t) {
    const double t2 = t * t;
    const double tail = 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) +
                        31.0 / (80640.0 * t * t2 * t2) + 127.0 / (430080.0 * t * t2 * t2 * t2) +
                        511.0 / (1216512.0 * t * t2 * t2 * t2 * t2);
    return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + tail;
}

// zeta(1/2 + it) by Euler-Maclaurin summation with N = t/2 + 10 head terms
// and 12 Bernoulli corrections.
std::complex<double> zeta_critical_line_em(double t) {
    using C = std::complex<double>;
    static constexpr std::array<double, 12> kB2k = {
        1.0 / 6.0,          -1.0 / 30.0,      1.0 / 42.0,         -1.0 / 30.0,
        5.0 / 66.0,         -691.0 / 2730.0,  7.0 / 6.0,          -3617.0 / 510.0,
        43867.0 / 798.0,    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

    const C s(0.5, t);
    const auto big_n = static_cast<std::size_t>(t / 2.0) + 10;
    auto n_pow_neg_s = [t](double n) {
        return std::polar(1.0 / std::sqrt(n), -t * std::log(n));
    };

    C sum(0.0, 0.0);
    for (std::size_t n = 1; n < big_n; ++n) sum += n_pow_neg_s(static_cast<double>(n));

    const double nn = static_cast<double>(big_n);
    const C n_neg_s = n_pow_neg_s(nn);
    sum += n_neg_s * nn / (s - 1.0);
    sum += 0.5 * n_neg_s;

    // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
    C rising = s;                   // s (s+1) ... (s+2k-2)
    C n_pow = n_neg_s / nn;         // N^(-s-2k+1)
    double factorial = 2.0;         // (2k)!
    for (std::size_t k = 1; k <= kB2k.size(); ++k) {
        sum += kB2k[k - 1] / factorial * rising * n_pow;
        const double j = static_cast<double>(2 * k - 1);
        rising *= (s + j) * (s + j + 1.0);
        n_pow /= nn * nn;
        factorial *= (j + 2.0) * (j + 3.0);
    }
    return sum;
}

double z_euler_maclaurin(double t) {
    return (std::polar(1.0, theta_extended(t)) * zeta_critical_line_em(t)).real();
}

// Grows on demand; index m + 1 holds data for Gram index m (m >= -1).
class GramCache {
public:
    explicit GramCache(int correction_terms) : terms_(correction_terms) {}

    double point(std::int64_t m) {
        fill(m);
        return points_[static_cast<std::size_t>(m + 1)];
    }
    double z(std::int64_t m) {
        fill(m);
        return z_[static_cast<std::size_t>(m + 1)];
    }

private:
    void fill(std::int64_t m) {
        while (static_cast<std::int64_t>(points_.size()) <= m + 1) {
            const auto idx = static_cast<std::int64_t>(points_.size()) - 1;
            const double g = gram_point(idx);
            points_.push_back(g);
            z_.push_back(hardy_z(g, terms_));
        }
    }

    int terms_;
    std::vector<double> points_;
    std::vector<double> z_;
};

// Zeros of Z in (g_lo, g_hi], scanning `density` sub-steps per Gram interval.
std::vector<double> scan_block(GramCache& gram, std::int64_t m_lo, std::int64_t m_hi, int density,
                               const RSConfig& cfg) {
    auto z = [&](double t) { return hardy_z(t, cfg.correction_terms); };
    std::vector<double> found;
    double t_prev = gram.point(m_lo);
    double z_prev = gram.z(m_lo);
    for (std::int64_t m = m_lo + 1; m <= m_hi; ++m) {
        const double a = gram.point(m - 1);
        const double b = gram.point(m);
        for (int q = 1; q <= density; ++q) {
            const double t = q == density ? b : a + (b - a) * q / density;
            const double zt = q == density ? gram.z(m) : z(t);
            if (std::signbit(zt) != std::signbit(z_prev) && z_prev != 0.0)
                found.push_back(
                    bisect_sign_change(z, t_prev, t, cfg.refine_tolerance, z_prev, zt));
            t_prev = t;
            z_prev = zt;
        }
    }
    return found;
}

}  // namespace

void RSConfig::validate() const {
    if (!(refine_tolerance > 0.0)) throw std::invalid_argument("refine_tolerance must be > 0");
    if (scan_points_per_gram_interval < 4)
        throw std::invalid_argument("scan_points_per_gram_interval must be >= 4");
    if (correction_terms < 0 || correction_terms > 4)
        throw std::invalid_argument("correction_terms must be in [0, 4]");
}

double rs_theta(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("rs_theta: requires t > 0");
    return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t);
}

double rs_theta_derivative(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("rs_theta_derivative: requires t > 0");
    const double t2 = t * t;
    return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t2) - 21.0 / (5760.0 * t2 * t2);
}

double rs_psi(double p) {
    const double c = std::cos(kTwoPi * p);
    if (std::abs(c) >= 1e-8) return std::cos(kTwoPi * (p * p - p - 1.0 / 16.0)) / c;

    // Near p0 in {1/4, 3/4}: with e = p - p0 the ratio is
    // sin(a e + 2pi e^2) / (sigma sin(2pi e)), a = 2pi(2 p0 - 1), sigma = -1 at 1/4.
    const double frac = p - std::floor(p);
    const double p0 = frac < 0.5 ? 0.25 : 0.75;
    const double sigma = p0 < 0.5 ? -1.0 : 1.0;
    const double e = frac - p0;
    const double a = kTwoPi * (2.0 * p0 - 1.0);
    const double u = a * e + kTwoPi * e * e;
    const double v = kTwoPi * e;
    return (a + kTwoPi * e) / (sigma * kTwoPi) * (1.0 - (u * u - v * v) / 6.0);
}

double rs_z(double t, int correction_terms) {
    if (!(t > kTwoPi) || !std::isfinite(t)) throw std::domain_error("rs_z: requires t > 2*pi");
    if (correction_terms < 0 || correction_terms > 4)
        throw std::invalid_argument("rs_z: correction_terms must be in [0, 4]");

    const double a = std::sqrt(t / kTwoPi);
    const auto m = static_cast<std::size_t>(a);
    const double p = a - static_cast<double>(m);
    const double theta = rs_theta(t);

    const auto& tab = main_sum_table();
    double sum = 0.0;
    for (std::size_t n = 1; n <= m; ++n) {
        if (n <= MainSumTable::kSize) {
            sum += std::cos(theta - t * tab.log_n[n]) * tab.inv_sqrt_n[n];
        } else {
            const double dn = static_cast<double>(n);
            sum += std::cos(theta - t * std::log(dn)) / std::sqrt(dn);
        }
    }

    double remainder = rs_psi(p);
    if (correction_terms > 0) {
        const double z = 2.0 * p - 1.0;
        double inv_a_pow = 1.0;
        for (int k = 1; k <= correction_terms; ++k) {
            inv_a_pow /= a;
            remainder += correction_poly(k, z) * inv_a_pow;
        }
    }
    const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
    return 2.0 * sum + sign * remainder / std::sqrt(a);
}

double hardy_z(double t, int correction_terms) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("hardy_z: requires t > 0");
    if (t < kEulerMaclaurinCrossover) return z_euler_maclaurin(t);
    return rs_z(t, correction_terms);
}

double gram_point(std::int64_t n) {
    if (n < -1) throw std::domain_error("gram_point: requires n >= -1");
    const double target = static_cast<double>(n) * kPi;
    const double shifted = static_cast<double>(n) + 0.125;
    const double w = boost::math::lambert_w0(shifted / std::numbers::e);
    double t = kTwoPi * shifted / w;

    for (int iter = 0; iter < 64; ++iter) {
        const double step = (rs_theta(t) - target) / rs_theta_derivative(t);
        t -= step;
        if (std::abs(step) <= 1e-15 * t) return t;
    }
    throw NumericError("gram_point: Newton iteration did not converge for n = " +
                       std::to_string(n));
}

ZeroTable compute_first_n_zeros(std::size_t n, const RSConfig& cfg) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("compute_first_n_zeros: requires n >= 1");

    // No zero lies below g_{-1} ~ 9.667, so the count there is known to be 0.
    constexpr std::int64_t kMaxBlockIntervals = 4096;
    GramCache gram(cfg.correction_terms);
    ZeroTable table;
    table.values.reserve(n);

    std::int64_t block_lo = -1;
    std::int64_t m = -1;
    while (table.count() < n) {
        ++m;
        const bool good = (m % 2 == 0 ? 1.0 : -1.0) * gram.z(m) > 0.0;
        if (!good) {
            if (m - block_lo > kMaxBlockIntervals)
                throw NumericError("no good Gram point after g_" + std::to_string(block_lo));
            continue;
        }
        const auto expected = static_cast<std::size_t>(m + 1) - table.count();
        auto found = scan_block(gram, block_lo, m, cfg.scan_points_per_gram_interval, cfg);
        if (found.size() != expected)
            found = scan_block(gram, block_lo, m, 8 * cfg.scan_points_per_gram_interval, cfg);
        if (found.size() != expected)
            throw MissedZeroError(gram.point(block_lo), gram.point(m), expected, found.size());
        table.values.insert(table.values.end(), found.begin(), found.end());
        block_lo = m;
    }
    table.values.resize(n);
    table.source = "computed: Riemann-Siegel scan over Gram intervals, first " +
                   std::to_string(n) + " zeros";
    validate_zeros(table.values);
    return table;
}

}  // namespace zeta_osc
