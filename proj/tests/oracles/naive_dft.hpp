#pragma once
// O(N^2) DFT in long double.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x, int sign = -1) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<long double> acc = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const long double arg = sign * 2.0L * std::numbers::pi_v<long double> *
                                    static_cast<long double>((j * k) % n) / static_cast<long double>(n);
            acc += std::complex<long double>(x[j].real(), x[j].imag()) *
                   std::complex<long double>(std::cos(arg), std::sin(arg));
        }
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

}  // namespace oracle
