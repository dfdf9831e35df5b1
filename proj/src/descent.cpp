#include "liegen/descent.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace liegen {

void DescentConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(stop_grad > 0.0) || !std::isfinite(stop_grad)) throw std::invalid_argument("stop_grad must be positive");
}

GridFunction initial_iterate(const Grid& grid, const DescentConfig& cfg) {
    if (cfg.init == InitMode::Ones) return GridFunction(grid.size(), 1.0);
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> values(grid.size());
    // Raw draws mapped by hand: uniform_real_distribution differs across standard libraries.
    for (double& value : values) value = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return GridFunction(std::move(values));
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::MaxIters: return "max_iters";
        case StopReason::GradientTolerance: return "gradient_tolerance";
        case StopReason::Collapsed: return "collapsed";
        case StopReason::Stagnation: return "stagnation";
    }
    return "?";
}

namespace {

StepResult step_from(const GridFunction& rg, const GridFunction& rd) {
    const double den = dot(rd, rd);
    if (den == 0.0) return {0.0, true};
    return {dot(rg, rd) / den, false};
}

}  // namespace

StepResult optimal_step(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g,
                        const GridFunction& d) {
    return step_from(residual(gen, grid, g), residual(gen, grid, d));
}

DescentTrace run_descent(const DiscreteGenerator& gen, const Grid& grid, const DescentConfig& cfg) {
    return run_descent(gen, grid, cfg, initial_iterate(grid, cfg));
}

DescentTrace run_descent(const DiscreteGenerator& gen, const Grid& grid, const DescentConfig& cfg,
                         GridFunction start) {
    cfg.validate();
    if (start.size() != grid.size()) throw std::invalid_argument("run_descent: starting iterate size mismatch");

    const Preconditioner q = build_preconditioner(gen, grid);
    DescentTrace trace;
    trace.initial_norm = max_norm(start);
    trace.phi.reserve(std::min<std::size_t>(cfg.max_iters + 1, 1u << 16));

    GridFunction g = std::move(start);
    GridFunction r = residual(gen, grid, g);
    double phi = 0.5 * dot(r, r);
    trace.phi.push_back(phi);

    for (;;) {
        const double g_norm = max_norm(g);
        if (g_norm <= cfg.stop_grad * trace.initial_norm) {
            trace.stop = StopReason::Collapsed;
            break;
        }
        if (trace.iterations >= cfg.max_iters) {
            trace.stop = StopReason::MaxIters;
            break;
        }

        const GridFunction d = q.solve(apply_residual_transpose(gen, grid, r));
        if (max_norm(d) <= cfg.stop_grad * g_norm) {
            trace.stop = StopReason::GradientTolerance;
            break;
        }
        const GridFunction rd = residual(gen, grid, d);
        const StepResult step = step_from(r, rd);
        if (step.stagnated) {
            trace.stop = StopReason::Stagnation;
            break;
        }

        GridFunction next(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) next[j] = g[j] - step.step * d[j];
        GridFunction r_next = residual(gen, grid, next);
        const double phi_next = 0.5 * dot(r_next, r_next);
        if (phi_next > phi) {
            // Rounding floor reached; keep the last accepted iterate.
            trace.stop = StopReason::Stagnation;
            break;
        }

        g = std::move(next);
        r = std::move(r_next);
        phi = phi_next;
        trace.phi.push_back(phi);
        trace.steps.push_back(step.step);
        ++trace.iterations;
    }

    trace.final_norm = max_norm(g);
    const double g_l2 = l2_norm(g);
    if (g_l2 > 0.0) trace.rel_residual = l2_norm(r) / g_l2;
    trace.final_iterate = std::move(g);
    return trace;
}

}  // namespace liegen
