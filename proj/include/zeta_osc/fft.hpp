#pragma once

#include <complex>
#include <span>
#include <vector>

namespace zeta_osc {

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 decimation-in-time DFT,
/// X_m = sum_n x_n exp(-2 pi i m n / N). N must be a power of two.
void fft_radix2(std::span<std::complex<double>> data);

/// |X_m|^2 for m = 1 .. N/2 (DC excluded, Nyquist included) of a real signal.
std::vector<double> power_spectrum_no_dc(std::span<const double> signal);

}  // namespace zeta_osc
