#pragma once

// Deterministic parallel map over sweep points. Workers pull indices from an
// atomic counter and write results into a preallocated slot per input, so the
// output order is a pure function of the input vector no matter how the
// scheduler interleaves threads. First exception wins and is rethrown on the
// caller thread.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "params.hpp"

namespace nhkitaev {

inline int default_workers() {
    if (const char* env = std::getenv("NHKITAEV_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // fall through to hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

template <class In, class F>
auto indexed_parallel_map(const std::vector<In>& inputs, F&& fn, int workers = 0)
    -> std::vector<decltype(fn(inputs.front()))> {
    using Out = decltype(fn(inputs.front()));
    if (workers <= 0) workers = default_workers();
    std::vector<Out> out(inputs.size());
    if (inputs.empty()) return out;

    if (workers == 1 || inputs.size() == 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) out[i] = fn(inputs[i]);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mtx;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= inputs.size()) return;
            try {
                out[i] = fn(inputs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mtx);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = int(std::min(std::size_t(workers), inputs.size()));
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace nhkitaev
