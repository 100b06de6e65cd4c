#include "piezoharvest/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "piezoharvest/scenario_io.hpp"

namespace piezoharvest {

std::vector<SweepRow> sweep(const Scenario& base, std::string_view path, std::span<const double> values,
                            unsigned max_threads) {
    // Build every variant first so a bad path or value fails before any run.
    std::vector<Scenario> variants;
    variants.reserve(values.size());
    for (double v : values) variants.push_back(io::with_parameter(base, path, v));

    std::vector<SweepRow> rows(values.size());
    if (values.empty()) return rows;

    unsigned workers = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t k = next++; k < variants.size(); k = next++) {
            try {
                rows[k] = {values[k], run(variants[k]).summary};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace piezoharvest
