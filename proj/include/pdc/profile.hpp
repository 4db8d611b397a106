#pragma once

#include <cstddef>
#include <span>

namespace pdc {

/// Half-maximum crossings of a sampled single-peaked profile, found by linear
/// interpolation walking outward from the global maximum.
struct HalfMaxCrossings {
    double left = 0.0;
    double right = 0.0;
    std::size_t peak_index = 0;
    double width() const { return right - left; }
};

/// Throws DegenerateError when the profile has no positive maximum or the half-maximum
/// level is not crossed on both sides inside the sampled range.
HalfMaxCrossings half_max_crossings(std::span<const double> x, std::span<const double> y);

inline double fwhm_direct(std::span<const double> x, std::span<const double> y) {
    return half_max_crossings(x, y).width();
}

}  // namespace pdc
