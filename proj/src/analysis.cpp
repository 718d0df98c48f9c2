#include "zeta_osc/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "zeta_osc/fft.hpp"

namespace zeta_osc {

namespace {

constexpr double kDegeneratePower = 1e-30;

void put(std::ostream& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

WindowMetrics measure_window(std::span<const double> x, std::span<const double> w) {
    const std::size_t n = w.size();
    WindowMetrics m;
    m.x_center = 0.5 * (x.front() + x.back());
    m.span = x.back() - x.front();

    if (!std::all_of(w.begin(), w.end(), [](double v) { return std::isfinite(v); })) {
        m.saturated = true;
        m.spectral_flatness = 1.0;
        m.envelope = std::numeric_limits<double>::infinity();
        return m;
    }

    // n is a power of two, so v / n is exact and the sum cannot overflow.
    const double inv_n = 1.0 / static_cast<double>(n);
    double mean = 0.0, comp = 0.0;
    for (double v : w) {
        const double term = v * inv_n;
        const double t = mean + term;
        comp += std::abs(mean) >= std::abs(term) ? (mean - t) + term : (term - t) + mean;
        mean = t;
    }
    mean += comp;

    std::vector<double> d(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = w[i] - mean;
        peak = std::max(peak, std::abs(d[i]));
    }
    m.envelope = peak;

    // Flatness is scale-invariant; normalise to keep |X|^2 finite.
    const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
    std::vector<double> normalised(n);
    for (std::size_t i = 0; i < n; ++i) normalised[i] = d[i] * scale;
    const auto power = power_spectrum_no_dc(normalised);
    const double max_power = *std::max_element(power.begin(), power.end());

    if (peak == 0.0 || max_power * (peak * peak) < kDegeneratePower) {
        m.degenerate = true;
        return m;
    }

    double log_sum = 0.0, sum = 0.0;
    std::size_t used = 0;
    for (double p : power) {
        if (p > 0.0) {
            log_sum += std::log(p);
            sum += p;
            ++used;
        }
    }
    const double arith = sum / static_cast<double>(used);
    const double geo = std::exp(log_sum / static_cast<double>(used));
    m.spectral_flatness = std::clamp(geo / arith, 0.0, 1.0);

    int prev = 0;
    for (double v : d) {
        const int s = sign_of(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++m.crossings;
        prev = s;
    }
    m.crossing_frequency = static_cast<double>(m.crossings) / (2.0 * m.span);
    return m;
}

LineFit least_squares(std::span<const double> u, std::span<const double> v) {
    const double n = static_cast<double>(u.size());
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suu = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suv += (u[i] - mu) * (v[i] - mv);
    }
    if (!(suu > 0.0)) throw std::invalid_argument("decay fit: abscissae are all equal");
    LineFit fit;
    fit.slope = suv / suu;
    fit.intercept = mv - fit.slope * mu;
    double sse = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = v[i] - (fit.intercept + fit.slope * u[i]);
        sse += r * r;
    }
    fit.residual = std::sqrt(sse / n);
    return fit;
}

}  // namespace

const char* to_string(DecayModel m) noexcept {
    return m == DecayModel::exponential ? "exponential" : "powerlaw";
}

std::vector<WindowMetrics> window_metrics(std::span<const double> x, std::span<const double> signal,
                                          std::size_t window_len, std::size_t hop) {
    if (x.size() != signal.size()) throw std::invalid_argument("window_metrics: x/signal size mismatch");
    if (!is_power_of_two(window_len) || window_len < 64)
        throw std::invalid_argument("window length must be a power of two >= 64");
    if (window_len > signal.size())
        throw std::invalid_argument("window length " + std::to_string(window_len) +
                                    " exceeds sample count " + std::to_string(signal.size()));
    if (hop < 1) throw std::invalid_argument("hop must be >= 1");

    std::vector<WindowMetrics> out;
    for (std::size_t start = 0; start + window_len <= signal.size(); start += hop)
        out.push_back(measure_window(x.subspan(start, window_len), signal.subspan(start, window_len)));
    return out;
}

std::vector<WindowMetrics> window_metrics(const SeriesGrid& series, std::size_t window_len,
                                          std::size_t hop) {
    std::vector<double> re(series.samples());
    for (std::size_t n = 0; n < re.size(); ++n) re[n] = series.cy[n].real();
    return window_metrics(series.x, re, window_len, hop);
}

std::optional<double> detect_transition(std::span<const WindowMetrics> windows, double tau,
                                        std::size_t persistence) {
    if (persistence < 1) throw std::invalid_argument("persistence must be >= 1");
    std::size_t run = 0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        run = windows[i].spectral_flatness < tau ? run + 1 : 0;
        if (run == persistence) return windows[i + 1 - persistence].x_center;
    }
    return std::nullopt;
}

FrequencyTrend frequency_trend(std::span<const WindowMetrics> windows, double from_x) {
    FrequencyTrend trend;
    for (const auto& w : windows) {
        if (w.x_center >= from_x) {
            trend.x_center.push_back(w.x_center);
            trend.values.push_back(w.crossing_frequency);
        }
    }
    if (trend.values.size() < 3)
        throw std::invalid_argument("frequency trend needs at least 3 windows past from_x");
    std::size_t non_increasing = 0;
    // Equal crossing counts over spans that differ in the last bits are ties.
    for (std::size_t i = 1; i < trend.values.size(); ++i)
        if (trend.values[i] <= trend.values[i - 1] * (1.0 + 1e-9)) ++non_increasing;
    trend.monotone_fraction =
        static_cast<double>(non_increasing) / static_cast<double>(trend.values.size() - 1);
    return trend;
}

DecayFits fit_decay(std::span<const WindowMetrics> windows, double from_x) {
    std::vector<double> xs, log_x, log_env;
    for (const auto& w : windows) {
        if (w.x_center >= from_x && std::isfinite(w.envelope) && w.envelope > 0.0) {
            xs.push_back(w.x_center);
            log_x.push_back(std::log(w.x_center));
            log_env.push_back(std::log(w.envelope));
        }
    }
    if (xs.size() < 8)
        throw std::invalid_argument("decay fit needs at least 8 windows with envelope > 0, got " +
                                    std::to_string(xs.size()));
    DecayFits fits;
    fits.exponential = least_squares(xs, log_env);
    fits.powerlaw = least_squares(log_x, log_env);
    fits.preferred = fits.exponential.residual < fits.powerlaw.residual ? DecayModel::exponential
                                                                          : DecayModel::powerlaw;
    fits.windows_used = xs.size();
    return fits;
}

std::vector<std::pair<double, double>> phase_portrait(const SeriesGrid& series, bool mean_removed) {
    double mean_re = 0.0, mean_im = 0.0;
    if (mean_removed) {
        double sr = 0.0, si = 0.0;
        std::size_t n = 0;
        for (const auto& c : series.cy) {
            if (!is_saturated(c)) {
                sr += c.real();
                si += c.imag();
                ++n;
            }
        }
        if (n > 0) {
            mean_re = sr / static_cast<double>(n);
            mean_im = si / static_cast<double>(n);
        }
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(series.samples());
    for (const auto& c : series.cy) out.emplace_back(c.real() - mean_re, c.imag() - mean_im);
    return out;
}

void AnalysisConfig::validate() const {
    if (!is_power_of_two(window_len) || window_len < 64)
        throw std::invalid_argument("window length must be a power of two >= 64");
    if (hop < 1) throw std::invalid_argument("hop must be >= 1");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
    if (persistence < 1) throw std::invalid_argument("persistence must be >= 1");
}

AnalysisReport analyze(const SeriesGrid& series, const AnalysisConfig& cfg) {
    cfg.validate();
    AnalysisReport report;
    report.windows = window_metrics(series, cfg.window_len, cfg.hop);
    report.transition_x = detect_transition(report.windows, cfg.tau, cfg.persistence);
    if (report.transition_x) {
        try {
            report.trend = frequency_trend(report.windows, *report.transition_x);
        } catch (const std::invalid_argument&) {
        }
        try {
            report.decay = fit_decay(report.windows, *report.transition_x);
        } catch (const std::invalid_argument&) {
        }
    }
    return report;
}

void write_report_csv(const AnalysisReport& report, std::ostream& out) {
    out << kReportCsvHeader << '\n';
    for (const auto& w : report.windows) {
        put(out, w.x_center);
        out << ',';
        put(out, w.spectral_flatness);
        out << ',';
        put(out, w.crossing_frequency);
        out << ',';
        put(out, w.envelope);
        out << '\n';
    }
}

void write_summary(const AnalysisReport& report, std::ostream& out) {
    std::size_t degenerate = 0, saturated = 0;
    for (const auto& w : report.windows) {
        degenerate += w.degenerate ? 1 : 0;
        saturated += w.saturated ? 1 : 0;
    }
    out << "[summary]\n";
    out << "windows: " << report.windows.size() << " (degenerate " << degenerate << ", saturated "
        << saturated << ")\n";
    out << "transition: ";
    if (report.transition_x)
        put(out, *report.transition_x);
    else
        out << "none";
    out << '\n';
    out << "frequency_monotone_fraction: ";
    if (report.trend)
        put(out, report.trend->monotone_fraction);
    else
        out << "n/a";
    out << '\n';
    if (report.decay) {
        const auto& d = *report.decay;
        out << "decay_exponential: rate=";
        put(out, d.exponential.slope);
        out << " residual=";
        put(out, d.exponential.residual);
        out << "\ndecay_powerlaw: exponent=";
        put(out, d.powerlaw.slope);
        out << " residual=";
        put(out, d.powerlaw.residual);
        out << "\npreferred_decay: " << to_string(d.preferred) << '\n';
    } else {
        out << "decay_exponential: n/a\ndecay_powerlaw: n/a\npreferred_decay: n/a\n";
    }
}

}  // namespace zeta_osc
