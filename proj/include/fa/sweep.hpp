#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <type_traits>
#include <vector>

/// Independent-run sweeps. Every kernel has a serial reference and an OpenMP
/// version; both produce identical results because each index owns its state
/// and all randomness is drawn before the loop.
namespace fa::sweep {

template <class F>
auto map_serial(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    std::vector<std::invoke_result_t<F&, std::size_t>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

/// OpenMP map. Exceptions thrown by `f` are caught per index and the one with
/// the lowest index is rethrown after the loop.
template <class F>
auto map_parallel(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    static_assert(std::is_default_constructible_v<R>, "parallel map needs default-constructible results");
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

template <class F>
auto map(std::size_t n, F&& f, bool parallel) {
    return parallel ? map_parallel(n, std::forward<F>(f)) : map_serial(n, std::forward<F>(f));
}

/// One random initialization of the two-layer flow, run to t_end.
struct ScalarRunSummary {
    double theta1_0 = 0.0;
    double theta2_0 = 0.0;
    double k_drift = 0.0;      // max |K_t − K_0|
    double final_error = 0.0;  // |θ₂θ₁ − λ| at t_end
    bool diverged = false;
};

struct ScalarSweepConfig {
    double d = 2.0;
    double lambda = 3.0;
    double box = 5.0;  // inits drawn from U([−box, box]²)
    std::size_t runs = 100;
    double t_end = 50.0;
    double dt = 1e-3;
    std::uint64_t seed = 0;
};

std::vector<ScalarRunSummary> scalar_random_sweep(const ScalarSweepConfig& cfg, bool parallel);

}  // namespace fa::sweep
