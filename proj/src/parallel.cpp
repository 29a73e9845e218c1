#include "rfde/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace rfde {

int thread_limit() {
    if (const char* env = std::getenv("RFDE_THREADS")) {
        try {
            const int value = std::stoi(env);
            if (value > 0) return value;
        } catch (const std::exception&) {
        }
    }
    return omp_get_num_procs();
}

void for_each_index(std::ptrdiff_t count, ExecutionPolicy policy, const std::function<void(std::ptrdiff_t)>& body) {
    if (policy == ExecutionPolicy::Serial || count < 2) {
        for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace rfde
