#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zeta_osc/series_eval.hpp"

namespace zeta_osc {

/// Metrics of one analysis window of Re[cos y], after subtracting the
/// window mean.
struct WindowMetrics {
    double x_center = 0.0;
    /// Geometric / arithmetic mean of the non-DC power spectrum, in [0, 1].
    double spectral_flatness = 0.0;
    /// Sign changes / (2 * window span in x).
    double crossing_frequency = 0.0;
    /// max |detrended signal|.
    double envelope = 0.0;
    std::size_t crossings = 0;
    double span = 0.0;
    /// All non-DC power below 1e-30: flatness and crossings forced to 0.
    bool degenerate = false;
    /// Window holds overflowed samples: flatness 1, crossings 0, envelope inf.
    bool saturated = false;
};

/// Windows start at 0, hop, 2*hop, ... while fully inside the signal.
/// window_len must be a power of two >= 64 and no larger than the signal.
std::vector<WindowMetrics> window_metrics(std::span<const double> x, std::span<const double> signal,
                                          std::size_t window_len, std::size_t hop);
std::vector<WindowMetrics> window_metrics(const SeriesGrid& series, std::size_t window_len,
                                          std::size_t hop);

/// Smallest x_center starting a run of `persistence` consecutive windows
/// with flatness < tau.
std::optional<double> detect_transition(std::span<const WindowMetrics> windows, double tau,
                                        std::size_t persistence);

struct FrequencyTrend {
    std::vector<double> x_center;
    std::vector<double> values;
    /// Fraction of consecutive pairs with values[i+1] <= values[i] (ties,
    /// up to a relative 1e-9, count as non-increasing).
    double monotone_fraction = 0.0;
};

FrequencyTrend frequency_trend(std::span<const WindowMetrics> windows, double from_x);

enum class DecayModel { exponential, powerlaw };

/// ln(envelope) = intercept + slope * u, u = x (exponential) or ln x (power
/// law). Residual is the RMS fit error in log space.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

struct DecayFits {
    LineFit exponential;  ///< slope is the rate (negative for decay)
    LineFit powerlaw;     ///< slope is the exponent
    DecayModel preferred = DecayModel::powerlaw;
    std::size_t windows_used = 0;
};

/// Uses windows with x_center >= from_x and finite envelope > 0; needs 8.
DecayFits fit_decay(std::span<const WindowMetrics> windows, double from_x);

/// (Re cy, Im cy) per sample; with mean_removed the global mean of the
/// finite samples is subtracted first. Overflowed samples pass through.
std::vector<std::pair<double, double>> phase_portrait(const SeriesGrid& series, bool mean_removed);

struct AnalysisConfig {
    std::size_t window_len = 1024;
    std::size_t hop = 512;
    double tau = 0.1;
    std::size_t persistence = 3;

    void validate() const;
};

struct AnalysisReport {
    std::vector<WindowMetrics> windows;
    std::optional<double> transition_x;
    /// Both computed from transition_x onward when there are enough windows.
    std::optional<FrequencyTrend> trend;
    std::optional<DecayFits> decay;
};

AnalysisReport analyze(const SeriesGrid& series, const AnalysisConfig& cfg = {});

inline constexpr const char* kReportCsvHeader = "x_center,flatness,crossing_freq,envelope";
void write_report_csv(const AnalysisReport& report, std::ostream& out);
void write_summary(const AnalysisReport& report, std::ostream& out);

const char* to_string(DecayModel m) noexcept;

}  // namespace zeta_osc
