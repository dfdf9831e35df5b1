#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "liegen/discretize.hpp"

namespace liegen {

enum class InitMode { Ones, RandomSeeded };

struct DescentConfig {
    std::size_t max_iters = 20000;
    /// Stop when ||d_k||_inf <= stop_grad * ||g_k||_inf, or when the iterate has
    /// collapsed to ||g_k||_inf <= stop_grad * ||g_0||_inf.
    double stop_grad = 1e-12;
    InitMode init = InitMode::Ones;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument.
    void validate() const;
};

/// Starting iterate g_0 for the given config: all ones, or uniform [0, 1) draws.
GridFunction initial_iterate(const Grid& grid, const DescentConfig& cfg);

enum class StopReason { MaxIters, GradientTolerance, Collapsed, Stagnation };

const char* to_string(StopReason reason);

struct DescentTrace {
    /// phi(g_0), phi(g_1), ..., phi(g_K).
    std::vector<double> phi;
    /// Step sizes s_0 .. s_{K-1}.
    std::vector<double> steps;
    GridFunction final_iterate;
    double initial_norm = 0.0;
    double final_norm = 0.0;
    /// ||R g_K||_2 / ||g_K||_2; empty when g_K = 0.
    std::optional<double> rel_residual;
    std::size_t iterations = 0;
    StopReason stop = StopReason::MaxIters;

    double norm_ratio() const { return initial_norm > 0.0 ? final_norm / initial_norm : 0.0; }
};

struct StepResult {
    double step = 0.0;
    bool stagnated = false;
};

/// Exact minimizer of s -> phi(g - s*d): <Rg, Rd> / <Rd, Rd>. Flags
/// stagnation (and returns 0) when Rd = 0.
StepResult optimal_step(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g,
                        const GridFunction& d);

/// Preconditioned steepest descent g_{k+1} = g_k - s_k Q^{-1} R^t R g_k with
/// optimal s_k, starting from initial_iterate(grid, cfg).
DescentTrace run_descent(const DiscreteGenerator& gen, const Grid& grid, const DescentConfig& cfg);

/// Same, from an explicit starting iterate.
DescentTrace run_descent(const DiscreteGenerator& gen, const Grid& grid, const DescentConfig& cfg,
                         GridFunction start);

}  // namespace liegen
