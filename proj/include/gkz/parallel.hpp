#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace gkz
{

// Thread count from GKZ_THREADS, else 1.
inline unsigned default_thread_count()
{
    if (const char *env = std::getenv("GKZ_THREADS")) {
        try {
            long n = std::stol(env);
            if (n > 0) {
                return static_cast<unsigned>(std::min<long>(n, 256));
            }
        } catch (const std::exception &) {
        }
    }
    return 1;
}

// Runs body(i) for i in [0, n) over contiguous chunks. Results must be written to
// per-index slots so the outcome does not depend on the thread count. The
// exception from the lowest failing chunk is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body &&body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2 * threads) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                const std::size_t lo = t * chunk;
                const std::size_t hi = std::min(n, lo + chunk);
                try {
                    for (std::size_t i = lo; i < hi; ++i) {
                        body(i);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace gkz
