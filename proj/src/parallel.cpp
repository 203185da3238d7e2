#include "todaspec/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace todaspec {

int max_threads() {
    static const int cached = [] {
        const char* env = std::getenv("TODA_SPECTRA_THREADS");
        if (env) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) return int(v);
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return hc > 0 ? int(hc) : 1;
    }();
    return cached;
}

namespace {
thread_local bool inside_parallel = false;
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int count = end - begin;
    if (count <= 0) return;
    const int nthreads = std::min(max_threads(), count);
    if (nthreads <= 1 || inside_parallel || count == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<int> next(begin);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        inside_parallel = true;
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= end) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
        inside_parallel = false;
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nthreads - 1));
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace todaspec
