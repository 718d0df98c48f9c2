#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "zeta_osc/phase_map.hpp"

namespace zeta_osc {

/// Uniform sample grid on [x_start, x_end], x_start > 0.
struct Grid {
    double x_start = 1.0;
    double x_end = 2.0;
    std::size_t samples = 2;

    /// Validating constructor: std::domain_error if x_start <= 0,
    /// std::invalid_argument if x_end <= x_start or samples < 2.
    static Grid make(double x_start, double x_end, std::size_t samples);
    void validate() const;

    double spacing() const noexcept { return (x_end - x_start) / static_cast<double>(samples - 1); }
    /// Sample n; exact at both endpoints.
    double x(std::size_t n) const noexcept;
};

/// y(x) = (1/x) sum_j exp(i x omega_j) and cos(y(x)) sampled on a grid.
/// Samples where cos(y) overflowed are flagged in `saturated`.
struct SeriesGrid {
    Grid grid;
    std::vector<double> x;
    std::vector<std::complex<double>> y;
    std::vector<std::complex<double>> cy;
    std::vector<std::uint8_t> saturated;
    /// Number of zeros summed; 0 when unknown (e.g. read back from CSV).
    std::size_t k = 0;

    std::size_t samples() const noexcept { return x.size(); }
    std::size_t saturated_count() const noexcept;
};

std::complex<double> eval_y_naive(const PhaseTable& phases, double x);

/// cos(a + ib) = cos a cosh b - i sin a sinh b. Overflow of cosh/sinh
/// yields signed infinities, never NaN, for finite y.
std::complex<double> eval_cos(std::complex<double> y);
inline bool is_saturated(std::complex<double> cy) {
    return !std::isfinite(cy.real()) || !std::isfinite(cy.imag());
}

/// Reference evaluator: eval_y_naive per sample, then eval_cos.
SeriesGrid eval_grid_naive(const PhaseTable& phases, const Grid& grid, unsigned workers = 1);

/// Non-uniform abscissae go through the reference evaluator.
SeriesGrid eval_points(const PhaseTable& phases, std::span<const double> xs);

struct FastEvalOptions {
    /// 0 selects default_worker_count(). Output bytes do not depend on it.
    unsigned workers = 0;
    /// Rotor states are re-seeded from exp(i omega x) every this many samples.
    std::size_t renorm_interval = 1024;
    /// Zeros per compensated partial sum; partials combine in ascending order.
    std::size_t chunk_size = 4096;
};

/// Rotation-recurrence evaluator: z_j(x + dx) = z_j(x) * exp(i omega_j dx),
/// one complex multiply per zero per sample. Bit-reproducible for any
/// worker count.
SeriesGrid eval_grid_fast(const PhaseTable& phases, const Grid& grid,
                          const FastEvalOptions& opts = {});

inline constexpr std::string_view kSeriesCsvHeader = "x,re_y,im_y,re_cos_y,im_cos_y";

/// Shortest round-trip decimals; overflowed values print as inf / -inf.
void write_series_csv(const SeriesGrid& series, std::ostream& out);
/// Throws std::runtime_error naming the expected header on mismatch, or
/// ParseError for a malformed row.
SeriesGrid read_series_csv(std::istream& in);

}  // namespace zeta_osc
