#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "zeta_osc/zeros_ingest.hpp"

namespace zeta_osc {

/// Phases theta_j = arg(conj(s_j) / s_j) and angular frequencies
/// omega_j = pi + theta_j, stored as parallel arrays for streaming.
struct PhaseTable {
    std::vector<double> theta;
    std::vector<double> omega;

    std::size_t count() const noexcept { return omega.size(); }
};

/// theta = -2 atan(2b), in (-pi, -pi/2). Throws std::domain_error for b <= 14.
double theta_of(double b);

/// omega = pi + theta_of(b), evaluated as 2 atan(1 / (2b)) to keep full
/// relative precision for large b.
double omega_of(double b);

/// The single-argument form -pi + atan(-b / (1/4 - b^2)). Only correct
/// because 1/4 - b^2 < 0 for every zero; kept to cross-check theta_of.
double theta_literal_form(double b);

PhaseTable build_phase_table(std::span<const double> zeros);
inline PhaseTable build_phase_table(const ZeroTable& zeros) { return build_phase_table(zeros.values); }

/// "j,b,theta,omega" with 1-based j.
void write_phase_csv(const ZeroTable& zeros, const PhaseTable& phases, std::ostream& out);

}  // namespace zeta_osc
