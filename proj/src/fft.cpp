#include "zeta_osc/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace zeta_osc {

void fft_radix2(std::span<std::complex<double>> data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const double step = -2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t k = 0; k < half; ++k) {
            // Twiddles from the angle directly; no recurrence drift.
            const std::complex<double> w(std::cos(step * k), std::sin(step * k));
            for (std::size_t start = 0; start < n; start += len) {
                auto& a = data[start + k];
                auto& b = data[start + k + half];
                const std::complex<double> t(w.real() * b.real() - w.imag() * b.imag(),
                                             w.real() * b.imag() + w.imag() * b.real());
                b = a - t;
                a += t;
            }
        }
    }
}

std::vector<double> power_spectrum_no_dc(std::span<const double> signal) {
    std::vector<std::complex<double>> buf(signal.begin(), signal.end());
    fft_radix2(buf);
    std::vector<double> power(buf.size() / 2);
    for (std::size_t m = 1; m <= buf.size() / 2; ++m) power[m - 1] = std::norm(buf[m]);
    return power;
}

}  // namespace zeta_osc
