#include "zeta_osc/phase_map.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace zeta_osc {

namespace {

void require_zero_height(double b) {
    if (!(b > kMinZeroHeight))
        throw std::domain_error("phase map requires b > 14.0, got " + std::to_string(b));
}

void put(std::ostream& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

double theta_of(double b) {
    require_zero_height(b);
    return -2.0 * std::atan(2.0 * b);
}

double omega_of(double b) {
    require_zero_height(b);
    return 2.0 * std::atan(0.5 / b);
}

double theta_literal_form(double b) {
    return -std::numbers::pi + std::atan(-b / (0.25 - b * b));
}

PhaseTable build_phase_table(std::span<const double> zeros) {
    PhaseTable table;
    table.theta.resize(zeros.size());
    table.omega.resize(zeros.size());
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        try {
            table.theta[j] = theta_of(zeros[j]);
            table.omega[j] = omega_of(zeros[j]);
        } catch (const std::domain_error& e) {
            throw std::domain_error("zero index " + std::to_string(j) + ": " + e.what());
        }
    }
    return table;
}

void write_phase_csv(const ZeroTable& zeros, const PhaseTable& phases, std::ostream& out) {
    if (zeros.count() != phases.count())
        throw std::invalid_argument("write_phase_csv: zero and phase counts differ");
    out << "j,b,theta,omega\n";
    for (std::size_t j = 0; j < phases.count(); ++j) {
        out << (j + 1) << ',';
        put(out, zeros.values[j]);
        out << ',';
        put(out, phases.theta[j]);
        out << ',';
        put(out, phases.omega[j]);
        out << '\n';
    }
}

}  // namespace zeta_osc
