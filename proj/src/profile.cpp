#include "pdc/profile.hpp"

#include <algorithm>

#include "pdc/errors.hpp"

namespace pdc {

HalfMaxCrossings half_max_crossings(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw InputError("profile needs >= 3 matching samples");
    const auto peak_it = std::max_element(y.begin(), y.end());
    const double peak = *peak_it;
    if (!(peak > 0.0)) throw DegenerateError("profile has no positive maximum");
    const double half = 0.5 * peak;
    const auto p = static_cast<std::size_t>(peak_it - y.begin());

    HalfMaxCrossings out;
    out.peak_index = p;

    std::size_t l = p;
    while (l > 0 && y[l - 1] >= half) --l;
    if (l == 0) throw DegenerateError("profile does not fall to half maximum on the left");
    out.left = x[l - 1] + (half - y[l - 1]) * (x[l] - x[l - 1]) / (y[l] - y[l - 1]);

    std::size_t r = p;
    while (r + 1 < y.size() && y[r + 1] >= half) ++r;
    if (r + 1 == y.size()) throw DegenerateError("profile does not fall to half maximum on the right");
    out.right = x[r] + (half - y[r]) * (x[r + 1] - x[r]) / (y[r + 1] - y[r]);
    return out;
}

}  // namespace pdc
