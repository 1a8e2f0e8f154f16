#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace fricke::detail {

// Runs fn(i) for i in [0, n), split into contiguous chunks over the available
// hardware threads. Exceptions propagate from the first failing chunk.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn, bool enabled = true)
{
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = enabled ? std::min(hw, n) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t lo = 0; lo < n; lo += chunk) {
        const std::size_t hi = std::min(n, lo + chunk);
        jobs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
}

} // namespace fricke::detail
