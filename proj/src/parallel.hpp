#pragma once

#include <exception>
#include <vector>

#include "lgs/common.hpp"

namespace lgs::detail {

/// Runs fn(k) for k in [0, n); the exception of the lowest failing k is rethrown after the loop.
template <class Fn>
void parallel_for(long n, Exec exec, Fn&& fn) {
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
    for (long k = 0; k < n; ++k) {
        try {
            fn(k);
        } catch (...) {
            errors[static_cast<size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace lgs::detail
