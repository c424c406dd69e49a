#include "calabikit/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace calabikit {

int thread_count() {
    static const int count = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("CALABI_KIT_THREADS")) {
            const int requested = std::atoi(env);
            if (requested >= 1) return std::min(requested, hw);
        }
        return hw;
    }();
    return count;
}

namespace detail {

void parallel_run(int n, const std::function<void(int)>& body) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (std::thread& t : pool) t.join();
}

}  // namespace detail

}  // namespace calabikit
