#include "zeta_osc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "zeta_osc/analysis.hpp"
#include "zeta_osc/atomic_file.hpp"
#include "zeta_osc/error.hpp"
#include "zeta_osc/parallel.hpp"
#include "zeta_osc/phase_map.hpp"
#include "zeta_osc/series_eval.hpp"
#include "zeta_osc/svg_plot.hpp"
#include "zeta_osc/zeros_compute.hpp"
#include "zeta_osc/zeros_ingest.hpp"

namespace zeta_osc::cli {

namespace {

// Bad flags or values the user can fix by changing the command line.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

SeriesGrid load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("file not found: " + path);
    return read_series_csv(in);
}

struct ZerosParseArgs {
    std::string input;
    std::string out;
};
struct ZerosComputeArgs {
    std::size_t count = 0;
    std::string out;
    RSConfig rs;
};
struct EvalArgs {
    std::string zeros;
    double x_start = 0.0;
    double x_end = 0.0;
    std::size_t samples = 100000;
    std::string method = "fast";
    std::string out;
};
struct AnalyzeArgs {
    std::string input;
    AnalysisConfig cfg;
    std::string out;
};
struct PlotArgs {
    std::string input;
    std::string kind;
    std::string out;
};

void print_table_summary(const ZeroTable& t, std::ostream& out) {
    out << t.count() << " zeros, b in [" << fixed6(t.front()) << ", " << fixed6(t.back()) << "]\n";
}

void cmd_zeros_parse(const ZerosParseArgs& a, std::ostream& out) {
    auto table = parse_zeros_file(a.input);
    if (a.out.empty()) throw UsageError("zeros parse: --out is required");
    if (table.count() == 0) throw ValidationError("no zeros in " + a.input);
    save_cache(table, a.out);
    print_table_summary(table, out);
}

void cmd_zeros_compute(const ZerosComputeArgs& a, std::ostream& out) {
    if (a.count < 1) throw UsageError("zeros compute: --count must be >= 1");
    auto table = compute_first_n_zeros(a.count, a.rs);
    save_cache(table, a.out);
    print_table_summary(table, out);
}

void cmd_eval(const EvalArgs& a, std::ostream& out) {
    Grid grid;
    try {
        grid = Grid::make(a.x_start, a.x_end, a.samples);
    } catch (const std::logic_error& e) {
        throw UsageError(std::string("invalid grid: ") + e.what());
    }
    const auto zeros = load_cache(a.zeros);
    const auto phases = build_phase_table(zeros);
    const unsigned workers = default_worker_count();
    const SeriesGrid series = a.method == "naive"
                                  ? eval_grid_naive(phases, grid, workers)
                                  : eval_grid_fast(phases, grid, FastEvalOptions{.workers = workers});
    write_file_atomically(a.out, [&](std::ostream& os) { write_series_csv(series, os); });
    out << series.samples() << " samples, k = " << series.k << ", method " << a.method;
    if (auto sat = series.saturated_count()) out << ", " << sat << " saturated";
    out << '\n';
}

void cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    try {
        a.cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto series = load_series(a.input);
    if (series.samples() < a.cfg.window_len)
        throw std::invalid_argument("series has " + std::to_string(series.samples()) +
                                    " samples, fewer than the window length " +
                                    std::to_string(a.cfg.window_len));
    const auto report = analyze(series, a.cfg);
    write_file_atomically(a.out, [&](std::ostream& os) { write_report_csv(report, os); });
    write_summary(report, out);
}

void cmd_plot(const PlotArgs& a, std::ostream& out) {
    const auto series = load_series(a.input);
    std::vector<double> values(series.samples());
    auto write = [&](const std::function<void(std::ostream&)>& fn) { write_file_atomically(a.out, fn); };

    if (a.kind == "time-re" || a.kind == "time-im") {
        const bool re = a.kind == "time-re";
        for (std::size_t n = 0; n < values.size(); ++n)
            values[n] = re ? series.cy[n].real() : series.cy[n].imag();
        const PlotLabels labels{re ? "Re cos(y) versus x" : "Im cos(y) versus x", "x",
                                re ? "Re cos(y)" : "Im cos(y)"};
        write([&](std::ostream& os) { write_svg_line_plot(series.x, values, labels, os); });
    } else if (a.kind == "phase" || a.kind == "phase-detrended") {
        const bool detrended = a.kind == "phase-detrended";
        const auto pts = phase_portrait(series, detrended);
        const PlotLabels labels{detrended ? "Phase portrait of cos(y), mean removed"
                                          : "Phase portrait of cos(y)",
                                "Re cos(y)", "Im cos(y)"};
        write([&](std::ostream& os) { write_svg_scatter(pts, labels, os); });
    } else if (a.kind == "traj3d-csv") {
        write([&](std::ostream& os) { write_traj3d_csv(series, os); });
    } else {
        throw UsageError("unknown plot kind '" + a.kind +
                         "' (expected time-re, time-im, phase, phase-detrended, traj3d-csv)");
    }
    out << "wrote " << a.out << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Oscillatory series built from non-trivial zeta zeros", "zeta_osc"};
    app.require_subcommand(1);

    auto* zeros = app.add_subcommand("zeros", "Build a binary zero cache");
    zeros->require_subcommand(1);

    ZerosParseArgs zp;
    auto* zparse = zeros->add_subcommand("parse", "Parse a text table of zeros");
    zparse->add_option("file", zp.input, "Text table ('<b>' or '<index> <b>' per line)")->required();
    zparse->add_option("--out", zp.out, "Output cache path");

    ZerosComputeArgs zc;
    auto* zcompute = zeros->add_subcommand("compute", "Compute the first N zeros (Riemann-Siegel)");
    zcompute->add_option("--count", zc.count, "Number of zeros")->required();
    zcompute->add_option("--out", zc.out, "Output cache path")->required();
    zcompute->add_option("--tolerance", zc.rs.refine_tolerance, "Bisection tolerance on b_j")
        ->capture_default_str();
    zcompute->add_option("--scan-points", zc.rs.scan_points_per_gram_interval,
                         "Scan points per Gram interval")
        ->capture_default_str();

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate y(x) and cos(y(x)) on a uniform grid");
    eval->add_option("--zeros", ev.zeros, "Zero cache")->required();
    eval->add_option("--x-start", ev.x_start, "First sample (x > 0)")->required();
    eval->add_option("--x-end", ev.x_end, "Last sample")->required();
    eval->add_option("--samples", ev.samples, "Number of samples")->capture_default_str();
    eval->add_option("--method", ev.method, "Evaluator")
        ->check(CLI::IsMember({"naive", "fast"}))
        ->capture_default_str();
    eval->add_option("--out", ev.out, "Series CSV path")->required();

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Windowed analysis of a series CSV");
    analyze_cmd->add_option("series", an.input, "Series CSV")->required();
    analyze_cmd->add_option("--window", an.cfg.window_len, "Window length (power of two)")
        ->capture_default_str();
    analyze_cmd->add_option("--hop", an.cfg.hop, "Hop between windows")->capture_default_str();
    analyze_cmd->add_option("--tau", an.cfg.tau, "Flatness threshold")->capture_default_str();
    analyze_cmd->add_option("--persistence", an.cfg.persistence, "Windows below tau")
        ->capture_default_str();
    analyze_cmd->add_option("--out", an.out, "Report CSV path")->required();

    PlotArgs pl;
    auto* plot = app.add_subcommand("plot", "Render a series CSV");
    plot->add_option("series", pl.input, "Series CSV")->required();
    plot->add_option("--kind", pl.kind, "time-re | time-im | phase | phase-detrended | traj3d-csv")
        ->required();
    plot->add_option("--out", pl.out, "Output path")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("zeta_osc");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (zparse->parsed()) cmd_zeros_parse(zp, out);
        else if (zcompute->parsed()) cmd_zeros_compute(zc, out);
        else if (eval->parsed()) cmd_eval(ev, out);
        else if (analyze_cmd->parsed()) cmd_analyze(an, out);
        else if (plot->parsed()) cmd_plot(pl, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace zeta_osc::cli
