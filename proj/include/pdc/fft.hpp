#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pdc::fft {

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

/// In-place DFT (FFTW), X_k = sum_j x_j exp(sign * 2 pi i jk/N).
/// `sign` is -1 (forward) or +1 (unnormalized inverse). Safe to call from several threads.
void transform(std::span<std::complex<double>> data, int sign = -1);

/// Swap the two halves so index N/2 moves to 0 and vice versa.
template <typename T>
void shift(std::vector<T>& v) {
    const std::size_t half = v.size() / 2;
    std::vector<T> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[(k + half) % v.size()] = v[k];
    v.swap(out);
}

}  // namespace pdc::fft
