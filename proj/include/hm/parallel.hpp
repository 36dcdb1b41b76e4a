#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hm {

// Width used when a caller passes 0.
inline unsigned default_parallelism() {
    if (const char* env = std::getenv("HM_PARALLELISM")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [begin, end). Each index is handled exactly once; callers
// write into per-index slots, so results do not depend on the width.
template <class F>
void parallel_for(long begin, long end, unsigned width, F&& body) {
    if (end <= begin) return;
    if (width == 0) width = default_parallelism();
    long n = end - begin;
    width = static_cast<unsigned>(std::min<long>(width, n));
    if (width <= 1) {
        for (long i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<long> next{begin};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= end) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace hm
