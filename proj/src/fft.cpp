#include "pdc/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace pdc::fft {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex planner_mutex;
}  // namespace

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::span<std::complex<double>> data, int sign) {
    if (data.empty()) throw std::invalid_argument("fft of an empty sequence");
    if (sign != -1 && sign != 1) throw std::invalid_argument("fft sign must be -1 or +1");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw planning failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace pdc::fft
