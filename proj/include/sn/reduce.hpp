#pragma once

#include <complex>
#include <cstddef>
#include <type_traits>

namespace sn {

// Pairwise (cascade) summation with a fixed recursion tree. All quadratures
// and diagnostics reductions go through this so results do not depend on
// accumulation order and are bitwise reproducible run to run.
template <typename F, typename T = std::invoke_result_t<F&, std::size_t>>
T pairwise_map_sum(std::size_t lo, std::size_t hi, F&& f) {
    const std::size_t n = hi - lo;
    if (n <= 32) {
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        return acc;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_map_sum(lo, mid, f) + pairwise_map_sum(mid, hi, f);
}

template <typename T>
T pairwise_sum(const T* p, std::size_t n) {
    return pairwise_map_sum(0, n, [p](std::size_t i) { return p[i]; });
}

} // namespace sn
