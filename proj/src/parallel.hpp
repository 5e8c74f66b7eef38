#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fockrad::detail {

// Thread cap for internal sweeps. FOCK_RADIAL_THREADS overrides; the default
// is the hardware concurrency, clamped to [1, 16].
inline unsigned thread_budget() {
    static const unsigned budget = [] {
        if (const char* env = std::getenv("FOCK_RADIAL_THREADS")) {
            const long requested = std::strtol(env, nullptr, 10);
            if (requested >= 1) {
                return static_cast<unsigned>(std::min(requested, 256L));
            }
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return std::clamp(hw, 1u, 16u);
    }();
    return budget;
}

// Runs fn(i) for i in [begin, end), sharded over the thread budget. Results
// must be written to caller-owned slots indexed by i, which keeps output
// deterministic regardless of the schedule. The first exception wins and is
// rethrown on the calling thread.
template <class Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn) {
    const std::int64_t count = end - begin;
    if (count <= 0) {
        return;
    }
    const std::int64_t threads =
        std::min<std::int64_t>(static_cast<std::int64_t>(thread_budget()), count);
    if (threads <= 1 || count < 4) {
        for (std::int64_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::int64_t chunk = (count + threads - 1) / threads;
    for (std::int64_t t = 0; t < threads; ++t) {
        const std::int64_t lo = begin + t * chunk;
        const std::int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& worker : pool) {
        worker.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace fockrad::detail
