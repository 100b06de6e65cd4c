#pragma once

#include <cstddef>
#include <vector>

namespace piezoharvest {

/// Uniformly sampled signal starting at t = 0.
struct Waveform {
    double dt = 0.0;
    std::vector<double> samples;

    double duration() const noexcept { return dt * static_cast<double>(samples.size()); }

    /// max - min over samples[from, end). Zero for an empty range.
    double peak_to_peak(std::size_t from = 0) const noexcept;
    double max_abs(std::size_t from = 0) const noexcept;
};

}  // namespace piezoharvest
