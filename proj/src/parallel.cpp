#include "extremal_sl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace extremal_sl {

std::size_t thread_budget(std::size_t njobs) {
    std::size_t budget = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EXTREMAL_SL_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                budget = std::min(budget, static_cast<std::size_t>(v));
            else
                budget = 1;
        } catch (const std::exception&) {
            // Unparsable value: ignore and keep the hardware default.
        }
    }
    return std::max<std::size_t>(1, std::min(budget, njobs));
}

void parallel_for(std::size_t njobs, const std::function<void(std::size_t)>& fn) {
    if (njobs == 0)
        return;
    const std::size_t workers = thread_budget(njobs);
    if (workers == 1) {
        for (std::size_t i = 0; i < njobs; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= njobs)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(work);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace extremal_sl
