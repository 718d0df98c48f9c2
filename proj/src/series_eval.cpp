#include "zeta_osc/series_eval.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "zeta_osc/error.hpp"
#include "zeta_osc/parallel.hpp"

namespace zeta_osc {

namespace {

// Kahan-Babuska (Neumaier) compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) noexcept {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const noexcept { return sum + comp; }
};

void finish_sample(SeriesGrid& s, std::size_t n, std::complex<double> y) {
    s.y[n] = y;
    s.cy[n] = eval_cos(y);
    s.saturated[n] = is_saturated(s.cy[n]) ? 1 : 0;
}

SeriesGrid allocate(const Grid& grid, std::size_t k) {
    SeriesGrid s;
    s.grid = grid;
    s.k = k;
    s.x.resize(grid.samples);
    for (std::size_t n = 0; n < grid.samples; ++n) s.x[n] = grid.x(n);
    s.y.resize(grid.samples);
    s.cy.resize(grid.samples);
    s.saturated.assign(grid.samples, 0);
    return s;
}

// Signed product that treats 0 * inf as 0 (exact zero factor wins).
double scaled(double f, double h) { return f == 0.0 ? 0.0 * std::copysign(1.0, h) : f * h; }

void put(std::ostream& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

Grid Grid::make(double x_start, double x_end, std::size_t samples) {
    Grid g{x_start, x_end, samples};
    g.validate();
    return g;
}

void Grid::validate() const {
    if (!(x_start > 0.0) || !std::isfinite(x_start))
        throw std::domain_error("grid requires x > 0 (x_start = " + std::to_string(x_start) + ")");
    if (!(x_end > x_start) || !std::isfinite(x_end))
        throw std::invalid_argument("grid requires x_end > x_start");
    if (samples < 2) throw std::invalid_argument("grid requires at least 2 samples");
}

double Grid::x(std::size_t n) const noexcept {
    if (n + 1 == samples) return x_end;
    return std::lerp(x_start, x_end, static_cast<double>(n) / static_cast<double>(samples - 1));
}

std::size_t SeriesGrid::saturated_count() const noexcept {
    return static_cast<std::size_t>(std::count(saturated.begin(), saturated.end(), 1));
}

std::complex<double> eval_y_naive(const PhaseTable& phases, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("y(x) requires x > 0 (x = " + std::to_string(x) + ")");
    CompensatedSum re, im;
    for (double w : phases.omega) {
        const double arg = w * x;
        re.add(std::cos(arg));
        im.add(std::sin(arg));
    }
    return {re.value() / x, im.value() / x};
}

std::complex<double> eval_cos(std::complex<double> y) {
    const double a = y.real();
    const double b = y.imag();
    return {scaled(std::cos(a), std::cosh(b)), -scaled(std::sin(a), std::sinh(b))};
}

SeriesGrid eval_grid_naive(const PhaseTable& phases, const Grid& grid, unsigned workers) {
    grid.validate();
    SeriesGrid s = allocate(grid, phases.count());
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (grid.samples + kBlock - 1) / kBlock;
    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::size_t end = std::min(grid.samples, (b + 1) * kBlock);
        for (std::size_t n = b * kBlock; n < end; ++n) finish_sample(s, n, eval_y_naive(phases, s.x[n]));
    });
    return s;
}

SeriesGrid eval_points(const PhaseTable& phases, std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("eval_points: need at least 2 abscissae");
    SeriesGrid s;
    s.grid = Grid{xs.front(), xs.back(), xs.size()};
    s.k = phases.count();
    s.x.assign(xs.begin(), xs.end());
    s.y.resize(xs.size());
    s.cy.resize(xs.size());
    s.saturated.assign(xs.size(), 0);
    for (std::size_t n = 0; n < xs.size(); ++n) finish_sample(s, n, eval_y_naive(phases, xs[n]));
    return s;
}

SeriesGrid eval_grid_fast(const PhaseTable& phases, const Grid& grid, const FastEvalOptions& opts) {
    grid.validate();
    if (opts.renorm_interval < 1) throw std::invalid_argument("renorm_interval must be >= 1");
    if (opts.chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");

    const std::size_t k = phases.count();
    const std::size_t samples = grid.samples;
    const double dx = grid.spacing();
    SeriesGrid s = allocate(grid, k);

    std::vector<double> rotor_re(k), rotor_im(k);
    for (std::size_t j = 0; j < k; ++j) {
        rotor_re[j] = std::cos(phases.omega[j] * dx);
        rotor_im[j] = std::sin(phases.omega[j] * dx);
    }

    const std::size_t block_len = opts.renorm_interval;
    const std::size_t blocks = (samples + block_len - 1) / block_len;
    const unsigned workers = opts.workers == 0 ? default_worker_count() : opts.workers;

    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::size_t n0 = b * block_len;
        const std::size_t len = std::min(block_len, samples - n0);
        const double x0 = s.x[n0];

        std::vector<CompensatedSum> total_re(len), total_im(len);
        // Kahan state for the current chunk.
        std::vector<double> sum_re(len), sum_im(len), c_re(len), c_im(len);

        for (std::size_t c0 = 0; c0 < k; c0 += opts.chunk_size) {
            const std::size_t c1 = std::min(k, c0 + opts.chunk_size);
            std::fill(sum_re.begin(), sum_re.end(), 0.0);
            std::fill(sum_im.begin(), sum_im.end(), 0.0);
            std::fill(c_re.begin(), c_re.end(), 0.0);
            std::fill(c_im.begin(), c_im.end(), 0.0);

            for (std::size_t j = c0; j < c1; ++j) {
                const double arg = phases.omega[j] * x0;
                double zr = std::cos(arg);
                double zi = std::sin(arg);
                const double rr = rotor_re[j];
                const double ri = rotor_im[j];
                for (std::size_t i = 0; i < len; ++i) {
                    const double yr = zr - c_re[i];
                    const double tr = sum_re[i] + yr;
                    c_re[i] = (tr - sum_re[i]) - yr;
                    sum_re[i] = tr;

                    const double yi = zi - c_im[i];
                    const double ti = sum_im[i] + yi;
                    c_im[i] = (ti - sum_im[i]) - yi;
                    sum_im[i] = ti;

                    const double nr = zr * rr - zi * ri;
                    zi = zr * ri + zi * rr;
                    zr = nr;
                }
            }
            for (std::size_t i = 0; i < len; ++i) {
                total_re[i].add(sum_re[i] - c_re[i]);
                total_im[i].add(sum_im[i] - c_im[i]);
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            const double x = s.x[n0 + i];
            finish_sample(s, n0 + i, {total_re[i].value() / x, total_im[i].value() / x});
        }
    });
    return s;
}

void write_series_csv(const SeriesGrid& series, std::ostream& out) {
    out << kSeriesCsvHeader << '\n';
    for (std::size_t n = 0; n < series.samples(); ++n) {
        put(out, series.x[n]);
        out << ',';
        put(out, series.y[n].real());
        out << ',';
        put(out, series.y[n].imag());
        out << ',';
        put(out, series.cy[n].real());
        out << ',';
        put(out, series.cy[n].imag());
        out << '\n';
    }
}

SeriesGrid read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty series CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSeriesCsvHeader)
        throw std::runtime_error("malformed series CSV: expected header '" +
                                 std::string(kSeriesCsvHeader) + "'");

    SeriesGrid s;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v[5];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int f = 0; f < 5; ++f) {
            auto [ptr, ec] = std::from_chars(p, end, v[f]);
            if (ec != std::errc{}) throw ParseError(line_no, "malformed number in series CSV");
            p = ptr;
            if (f < 4) {
                if (p == end || *p != ',') throw ParseError(line_no, "expected 5 fields");
                ++p;
            }
        }
        if (p != end) throw ParseError(line_no, "trailing characters");
        s.x.push_back(v[0]);
        s.y.emplace_back(v[1], v[2]);
        s.cy.emplace_back(v[3], v[4]);
        s.saturated.push_back(is_saturated(s.cy.back()) ? 1 : 0);
    }
    if (s.x.size() < 2) throw std::runtime_error("series CSV needs at least 2 rows");
    for (std::size_t n = 1; n < s.x.size(); ++n)
        if (!(s.x[n] > s.x[n - 1])) throw ParseError(n + 2, "x values must be increasing");
    s.grid = Grid{s.x.front(), s.x.back(), s.x.size()};
    return s;
}

}  // namespace zeta_osc
