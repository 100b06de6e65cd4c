#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "piezoharvest/scenario.hpp"

namespace piezoharvest {

struct SweepRow {
    double value = 0.0;
    ChargeSummary summary;
};

/// One independent run per value of the parameter at `path` (see
/// io::with_parameter). Rows come back in input order. Runs execute on up to
/// `max_threads` threads (0: hardware concurrency).
std::vector<SweepRow> sweep(const Scenario& base, std::string_view path, std::span<const double> values,
                            unsigned max_threads = 0);

}  // namespace piezoharvest
