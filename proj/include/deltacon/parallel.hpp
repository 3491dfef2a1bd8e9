#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace deltacon {

/// Worker count: DELTACON_THREADS if set (>=1), else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("DELTACON_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [begin, end) across workers. Work items must be
/// independent; results may not depend on the schedule.
inline void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int count = end - begin;
    if (count <= 0) return;
    const int workers = std::min(worker_count(), count);
    if (workers == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](int lo, int hi) {
        try {
            for (int i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        int lo = begin + w * chunk;
        int hi = std::min(end, lo + chunk);
        if (lo < hi) pool.emplace_back(run_chunk, lo, hi);
    }
    run_chunk(begin, std::min(end, begin + chunk));
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace deltacon
