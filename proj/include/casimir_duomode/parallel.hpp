#pragma once
// Index-parallel map over a fixed number of worker threads. Results are
// assembled by index, so output does not depend on scheduling.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

namespace casimir_duomode {

/// Worker count: CASIMIR_DUOMODE_THREADS if set to a positive integer, else
/// hardware concurrency (at least 1).
inline unsigned worker_count_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CASIMIR_DUOMODE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), 1024u);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

template <class F>
auto parallel_map(std::size_t count, F&& fn, unsigned workers = worker_count_from_env())
    -> std::vector<decltype(fn(std::size_t{}))> {
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(count);
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));

    std::exception_ptr failure;
    std::mutex failure_lock;
    std::stop_source stop;
    auto body = [&](unsigned w) {
        for (std::size_t i = w; i < count; i += workers) {
            if (stop.stop_requested()) return;
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lk(failure_lock);
                if (!failure) failure = std::current_exception();
                stop.request_stop();
                return;
            }
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace casimir_duomode
