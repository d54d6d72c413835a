#pragma once

#include <cstddef>

namespace whitney {

/// Execution policy for the data-parallel kernels. The serial path is the
/// reference implementation; in exact arithmetic both paths must produce
/// identical values (per-item work is independent, reductions are rescanned
/// serially), which the test suite asserts.
enum class Exec { serial, parallel };

namespace detail {

/// Runs body(i) for i in [0, count). Items must not share mutable state.
template <class Body>
void for_each_index(Exec exec, std::size_t count, const Body& body) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) body(i);
    }
}

} // namespace detail

} // namespace whitney
