// Acceptance checks, one line per criterion.
//
// The desk-scale run (criteria 6, 7, 8, 10) uses 10,000 computed zeros by
// default. Set ZETA_OSC_ACCEPTANCE_ZEROS to a text table or binary cache to
// use another table, or ZETA_OSC_ACCEPTANCE_COUNT to compute a different
// number of zeros.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "zeta_osc/analysis.hpp"
#include "zeta_osc/error.hpp"
#include "zeta_osc/phase_map.hpp"
#include "zeta_osc/series_eval.hpp"
#include "zeta_osc/zeros_compute.hpp"
#include "zeta_osc/zeros_ingest.hpp"

using namespace zeta_osc;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail, double seconds) {
    std::printf("[%s] C%d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <class F>
void criterion(int id, const std::string& what, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, pass, what, detail, s);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const ZeroTable& reference_100() {
    static const ZeroTable t =
        parse_zeros_file(std::filesystem::path(ZETA_OSC_TEST_DATA_DIR) / "zeros_100.txt");
    return t;
}

ZeroTable desk_table() {
    if (const char* path = std::getenv("ZETA_OSC_ACCEPTANCE_ZEROS"); path && *path) {
        try {
            return load_cache(path);
        } catch (const CacheError& e) {
            if (e.kind() != CacheErrorKind::bad_magic) throw;
            return parse_zeros_file(path);
        }
    }
    std::size_t count = 10000;
    if (const char* n = std::getenv("ZETA_OSC_ACCEPTANCE_COUNT"); n && *n) count = std::stoul(n);
    return compute_first_n_zeros(count);
}

double max_abs_diff(const SeriesGrid& a, const SeriesGrid& b) {
    double worst = 0.0;
    for (std::size_t n = 0; n < a.samples(); ++n) worst = std::max(worst, std::abs(a.y[n] - b.y[n]));
    return worst;
}

struct DeskRun {
    std::string series_csv;
    std::string report_csv;
    AnalysisReport report;
};

DeskRun desk_run(const ZeroTable& zeros) {
    const auto series = eval_grid_fast(build_phase_table(zeros), Grid::make(1.0, 1e4, 100000));
    DeskRun run;
    std::ostringstream s, r;
    write_series_csv(series, s);
    run.series_csv = s.str();
    // Analyse the series as written to disk, as the command line does.
    std::istringstream in(run.series_csv);
    run.report = analyze(read_series_csv(in), AnalysisConfig{1024, 512, 0.1, 3});
    write_report_csv(run.report, r);
    run.report_csv = r.str();
    return run;
}

}  // namespace

int main() {
    criterion(1, "phase-map identity on 100 reference zeros", [](std::string& d) {
        const auto& z = reference_100();
        const auto p = build_phase_table(z);
        double worst = 0.0;
        for (std::size_t j = 0; j < z.count(); ++j) {
            const std::complex<double> s(0.5, z.values[j]);
            worst = std::max(worst, std::abs(std::polar(1.0, p.theta[j]) - std::conj(s) / s));
        }
        d = "max error " + fmt("%.3g", worst) + " < 1e-12 over " + std::to_string(z.count()) + " zeros";
        return z.count() == 100 && worst < 1e-12;
    });

    criterion(2, "theta form equivalence on 1000 sampled b", [](std::string& d) {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> log_b(std::log(14.5), std::log(1e6));
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double b = std::exp(log_b(rng));
            worst = std::max(worst, std::abs(theta_of(b) - theta_literal_form(b)));
        }
        d = "max difference " + fmt("%.3g", worst) + " < 1e-12";
        return worst < 1e-12;
    });

    criterion(3, "first 10 computed zeros match the reference table", [](std::string& d) {
        const auto z = compute_first_n_zeros(10);
        double worst = 0.0;
        for (std::size_t j = 0; j < 10; ++j)
            worst = std::max(worst, std::abs(z.values[j] - reference_100().values[j]));
        d = "b_1 = " + fmt("%.9f", z.values[0]) + ", max error " + fmt("%.3g", worst) + " < 1e-6";
        return z.count() == 10 && worst < 1e-6;
    });

    bool bound_ok = true;
    double bound_ratio = 0.0;
    criterion(4, "fast and naive evaluators agree, workers do not change output", [&](std::string& d) {
        const auto p = build_phase_table(compute_first_n_zeros(1000));
        const double k = 1000.0;
        bool ok = true;
        std::string parts;
        for (auto [a, b] : {std::pair{1.0, 500.0}, std::pair{1e3, 1e4}}) {
            const auto grid = Grid::make(a, b, 5000);
            const auto naive = eval_grid_naive(p, grid);
            const auto f1 = eval_grid_fast(p, grid, {.workers = 1});
            const auto f2 = eval_grid_fast(p, grid, {.workers = 2});
            const auto f8 = eval_grid_fast(p, grid, {.workers = 8});
            const double diff = max_abs_diff(naive, f1);
            const bool same = f1.y == f2.y && f1.y == f8.y && f1.cy == f2.cy && f1.cy == f8.cy;
            ok = ok && diff <= 1e-10 * k && same;
            parts += "[" + fmt("%g", a) + ", " + fmt("%g", b) + "] max diff " + fmt("%.3g", diff) +
                     (same ? ", bit-identical; " : ", NOT bit-identical; ");
            for (const auto* s : {&naive, &f1, &f2, &f8})
                for (std::size_t n = 0; n < s->samples(); ++n) {
                    const double r = std::abs(s->y[n]) * s->x[n] / k;
                    bound_ratio = std::max(bound_ratio, r);
                    if (r > 1.0) bound_ok = false;
                }
        }
        d = parts + "limit 1e-7";
        return ok;
    });

    criterion(5, "bound |y(x)| <= k/x on every sample of C4", [&](std::string& d) {
        d = "max |y| x / k = " + fmt("%.6f", bound_ratio);
        return bound_ok && bound_ratio > 0.0;
    });

    ZeroTable desk;
    DeskRun first;
    bool have_run = false;
    criterion(6, "transition at desk scale lies in [300, 2000]", [&](std::string& d) {
        desk = desk_table();
        first = desk_run(desk);
        have_run = true;
        const auto& t = first.report.transition_x;
        d = "k = " + std::to_string(desk.count()) + ", " + std::to_string(first.report.windows.size()) +
            " windows, transition_x = " + (t ? fmt("%.2f", *t) : std::string("none"));
        return t && *t >= 300.0 && *t <= 2000.0;
    });

    criterion(7, "crossing frequency decreases over the harmonic region", [&](std::string& d) {
        if (!have_run) throw std::runtime_error("desk-scale run unavailable");
        const auto& tr = first.report.trend;
        d = tr ? "monotone_fraction " + fmt("%.4f", tr->monotone_fraction) + " >= 0.9 from x = " +
                     fmt("%.2f", *first.report.transition_x)
               : std::string("no harmonic region detected");
        return tr && tr->monotone_fraction >= 0.9;
    });

    criterion(8, "envelope decay prefers the power law", [&](std::string& d) {
        if (!have_run) throw std::runtime_error("desk-scale run unavailable");
        const auto& f = first.report.decay;
        if (!f) {
            d = "no decay fit (no harmonic region or too few windows)";
            return false;
        }
        d = "residual powerlaw " + fmt("%.4f", f->powerlaw.residual) + " (exponent " +
            fmt("%.3f", f->powerlaw.slope) + ") vs exponential " + fmt("%.4f", f->exponential.residual) +
            ", " + std::to_string(f->windows_used) + " windows";
        return f->preferred == DecayModel::powerlaw;
    });

    criterion(9, "synthetic analysis oracles", [](std::string& d) {
        constexpr double pi = std::numbers::pi;
        const std::size_t n = 1024;
        std::vector<double> x(n), s(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 2.0 * double(i) / double(n - 1);
            s[i] = std::sin(2 * pi * 10.0 * x[i] + 0.4);  // 20 cycles per window
        }
        const auto tone = window_metrics(x, s, n, n).front();
        const double freq_err = std::abs(tone.crossing_frequency - 10.0) / 10.0;

        std::mt19937_64 rng(9);
        std::normal_distribution<double> g;
        std::vector<double> flat;
        for (int t = 0; t < 31; ++t) {
            for (auto& v : s) v = g(rng);
            flat.push_back(window_metrics(x, s, n, n).front().spectral_flatness);
        }
        std::nth_element(flat.begin(), flat.begin() + 15, flat.end());
        const double median = flat[15];

        std::vector<WindowMetrics> ex(40), pl(40);
        for (int i = 0; i < 40; ++i) {
            ex[i].x_center = 10.0 + 5.0 * i;
            ex[i].envelope = 1.5 * std::exp(-0.01 * ex[i].x_center);
            pl[i].x_center = 10.0 * std::pow(1.1, i);
            pl[i].envelope = 4.0 / pl[i].x_center;
        }
        const auto fe = fit_decay(ex, 0.0);
        const auto fp = fit_decay(pl, 0.0);
        const double rate_err = std::abs(-fe.exponential.slope - 0.01) / 0.01;
        const double c_fit = std::exp(fp.powerlaw.intercept);
        const double c_err = std::max(std::abs(c_fit - 4.0) / 4.0, std::abs(fp.powerlaw.slope + 1.0));

        d = "tone flatness " + fmt("%.3g", tone.spectral_flatness) + ", freq error " + fmt("%.3g", freq_err) +
            "; noise median flatness " + fmt("%.3f", median) + "; rate error " + fmt("%.3g", rate_err) +
            ", c/x error " + fmt("%.3g", c_err);
        return tone.spectral_flatness < 0.05 && freq_err < 0.05 && median > 0.5 && rate_err < 0.05 &&
               c_err < 0.05;
    });

    criterion(10, "desk-scale pipeline is byte-identical when repeated", [&](std::string& d) {
        if (!have_run) throw std::runtime_error("desk-scale run unavailable");
        const auto again = desk_run(desk);
        const bool same_series = again.series_csv == first.series_csv;
        const bool same_report = again.report_csv == first.report_csv;
        d = std::string("series ") + (same_series ? "identical" : "DIFFERENT") + " (" +
            std::to_string(first.series_csv.size()) + " bytes), report " +
            (same_report ? "identical" : "DIFFERENT");
        return same_series && same_report;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
