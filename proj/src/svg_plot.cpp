#include "zeta_osc/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

namespace zeta_osc {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo))) {
            const double pad = std::max(0.5, 0.5 * std::abs(lo));
            lo -= pad;
            hi += pad;
        }
    }
};

class Canvas {
public:
    Canvas(Range xr, Range yr) : xr_(xr), yr_(yr) {}

    double px(double x) const { return kLeft + (x - xr_.lo) / (xr_.hi - xr_.lo) * (kWidth - kLeft - kRight); }
    double py(double y) const {
        return kHeight - kBottom - (y - yr_.lo) / (yr_.hi - yr_.lo) * (kHeight - kTop - kBottom);
    }
    const Range& xr() const { return xr_; }
    const Range& yr() const { return yr_; }

private:
    Range xr_;
    Range yr_;
};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
    return ticks;
}

void header(std::ostream& out, const Canvas& c, const PlotLabels& labels) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kWidth / 2) << "\" y=\"" << coord(kTop / 2 + 6)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << escape(labels.title) << "</text>\n";

    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(x1) << "\" y2=\""
        << coord(y0) << "\"/>\n";
    out << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(x0) << "\" y2=\""
        << coord(y1) << "\"/>\n";
    for (double t : nice_ticks(c.xr().lo, c.xr().hi)) {
        const double p = c.px(t);
        out << "<line x1=\"" << coord(p) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(p)
            << "\" y2=\"" << coord(y0 + 6) << "\"/>\n";
    }
    for (double t : nice_ticks(c.yr().lo, c.yr().hi)) {
        const double p = c.py(t);
        out << "<line x1=\"" << coord(x0 - 6) << "\" y1=\"" << coord(p) << "\" x2=\"" << coord(x0)
            << "\" y2=\"" << coord(p) << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double t : nice_ticks(c.xr().lo, c.xr().hi))
        out << "<text x=\"" << coord(c.px(t)) << "\" y=\"" << coord(y0 + 20)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    for (double t : nice_ticks(c.yr().lo, c.yr().hi))
        out << "<text x=\"" << coord(x0 - 10) << "\" y=\"" << coord(c.py(t) + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    out << "<text x=\"" << coord((x0 + x1) / 2) << "\" y=\"" << coord(kHeight - 20)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(labels.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << coord((y0 + y1) / 2) << "\" text-anchor=\"middle\" font-size=\"14\" "
        << "transform=\"rotate(-90 20 " << coord((y0 + y1) / 2) << ")\">" << escape(labels.y_label)
        << "</text>\n</g>\n";
}

}  // namespace

void write_svg_line_plot(std::span<const double> x, std::span<const double> y,
                         const PlotLabels& labels, std::ostream& out) {
    Range xr, yr;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (std::isfinite(x[i]) && std::isfinite(y[i])) {
            xr.include(x[i]);
            yr.include(y[i]);
        }
    }
    xr.finalize();
    yr.finalize();
    const Canvas c(xr, yr);
    header(out, c, labels);

    bool open = false;
    auto close = [&] {
        if (open) out << "\"/>\n";
        open = false;
    };
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            close();
            continue;
        }
        if (!open) {
            out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.8\" points=\"";
            open = true;
        } else {
            out << ' ';
        }
        out << coord(c.px(x[i])) << ',' << coord(c.py(y[i]));
    }
    close();
    out << "</svg>\n";
}

void write_svg_scatter(std::span<const std::pair<double, double>> points, const PlotLabels& labels,
                       std::ostream& out) {
    Range xr, yr;
    for (const auto& [a, b] : points) {
        if (std::isfinite(a) && std::isfinite(b)) {
            xr.include(a);
            yr.include(b);
        }
    }
    xr.finalize();
    yr.finalize();
    const Canvas c(xr, yr);
    header(out, c, labels);
    out << "<g fill=\"#1f4e9c\" fill-opacity=\"0.6\">\n";
    for (const auto& [a, b] : points) {
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        out << "<circle cx=\"" << coord(c.px(a)) << "\" cy=\"" << coord(c.py(b)) << "\" r=\"1.2\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

void write_traj3d_csv(const SeriesGrid& series, std::ostream& out) {
    auto put = [&out](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, res.ptr - buf);
    };
    out << "x,re,im\n";
    for (std::size_t n = 0; n < series.samples(); ++n) {
        put(series.x[n]);
        out << ',';
        put(series.cy[n].real());
        out << ',';
        put(series.cy[n].imag());
        out << '\n';
    }
}

}  // namespace zeta_osc
