#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zaremba {

// Runs f(begin, end) over contiguous chunks of [0, count). Results must not depend on
// the thread count, so callers write into disjoint slots.
template <class F>
void parallel_for(int count, int threads, int chunk, F&& f) {
    if (count <= 0) return;
    chunk = std::max(1, chunk);
    const int nchunks = (count + chunk - 1) / chunk;
    threads = std::clamp(threads, 1, nchunks);
    if (threads == 1) {
        for (int c = 0; c < nchunks; ++c) f(c * chunk, std::min(count, (c + 1) * chunk));
        return;
    }
    std::mutex m;
    int next = 0;
    std::exception_ptr err;
    auto worker = [&]() {
        for (;;) {
            int c;
            {
                std::lock_guard<std::mutex> lk(m);
                if (next >= nchunks || err) return;
                c = next++;
            }
            try {
                f(c * chunk, std::min(count, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace zaremba
