#include "piezoharvest/waveform.hpp"

#include <algorithm>
#include <cmath>

namespace piezoharvest {

double Waveform::peak_to_peak(std::size_t from) const noexcept {
    if (from >= samples.size()) return 0.0;
    const auto [lo, hi] = std::minmax_element(samples.begin() + static_cast<std::ptrdiff_t>(from),
                                              samples.end());
    return *hi - *lo;
}

double Waveform::max_abs(std::size_t from) const noexcept {
    double m = 0.0;
    for (std::size_t i = from; i < samples.size(); ++i) m = std::max(m, std::abs(samples[i]));
    return m;
}

}  // namespace piezoharvest
