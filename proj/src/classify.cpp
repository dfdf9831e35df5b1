#include "liegen/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liegen {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Local: return "LOCAL";
        case Verdict::Global: return "GLOBAL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

void SweepPlan::validate() const {
    if (n_values.empty() || z_values.empty() || lambda_values.empty())
        throw std::invalid_argument("sweep plan lists must be nonempty");
    for (std::size_t n : n_values)
        if (n < 2) throw std::invalid_argument("sweep n values must be >= 2");
    for (double z : z_values)
        if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("sweep z values must be positive");
    for (double lambda : lambda_values)
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("sweep lambda values must be positive");
    if (!(thresholds.theta_global < thresholds.theta_local))
        throw std::invalid_argument("theta_global must be below theta_local");
    if (!(thresholds.theta_global > 0.0) || !(thresholds.rho_max > 0.0))
        throw std::invalid_argument("thresholds must be positive");
    descent.validate();
}

std::vector<SweepPoint> SweepPlan::points() const {
    std::vector<SweepPoint> out;
    for (std::size_t n : n_values)
        for (double z : z_values)
            for (double lambda : lambda_values) out.push_back({n, z, lambda});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

Verdict grade(double norm_ratio, const std::optional<double>& rel_residual, const Thresholds& t) {
    if (norm_ratio >= t.theta_local && rel_residual && *rel_residual <= t.rho_max) return Verdict::Local;
    if (norm_ratio <= t.theta_global) return Verdict::Global;
    return Verdict::Inconclusive;
}

OnceResult run_point(const FieldExpr& field, const SweepPoint& point, const SweepPlan& plan) {
    OnceResult out;
    out.evidence.point = point;
    try {
        return classify_once(field, Grid(point.z, point.n), point.lambda, plan.descent, plan.thresholds,
                             plan.scheme);
    } catch (const std::exception& e) {
        out.evidence.verdict = Verdict::Inconclusive;
        out.evidence.error = e.what();
    }
    return out;
}

Classification aggregate(std::vector<OnceResult> results) {
    Classification out;
    bool all_local = !results.empty();
    bool all_global = !results.empty();
    for (const OnceResult& r : results) {
        all_local = all_local && r.evidence.verdict == Verdict::Local;
        all_global = all_global && r.evidence.verdict == Verdict::Global;
        out.evidence.push_back(r.evidence);
    }
    out.verdict = all_local ? Verdict::Local : all_global ? Verdict::Global : Verdict::Inconclusive;

    // Results arrive sorted by (n, z, lambda).
    const OnceResult* pick = nullptr;
    for (const OnceResult& r : results) {
        if (!r.grid) continue;
        if (!pick) {
            pick = &r;
            continue;
        }
        const SweepPoint& a = r.evidence.point;
        const SweepPoint& b = pick->evidence.point;
        if (a.n != b.n) {
            if (a.n > b.n) pick = &r;
        } else if (a.z != b.z) {
            if (a.z < b.z) pick = &r;
        } else if (std::fabs(a.lambda - 1.0) < std::fabs(b.lambda - 1.0)) {
            pick = &r;
        }
    }
    if (!pick) {
        if (!results.empty()) out.reported = results.front().evidence.point;
        return out;
    }

    out.reported = pick->evidence.point;
    out.norm_ratio = pick->evidence.norm_ratio;
    out.rel_residual = pick->evidence.rel_residual;
    out.grid = pick->grid;
    out.profile = pick->final_iterate;
    if (out.verdict == Verdict::Local) {
        const GridFunction& g = pick->final_iterate;
        std::size_t peak = 0;
        for (std::size_t j = 1; j < g.size(); ++j)
            if (std::fabs(g[j]) > std::fabs(g[peak])) peak = j;
        std::vector<double> scaled(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) scaled[j] = g[j] / g[peak];
        out.eigenfunction = GridFunction(std::move(scaled));
    }
    return out;
}

}  // namespace

OnceResult classify_once(const FieldExpr& field, const Grid& grid, double lambda, const DescentConfig& cfg,
                         const Thresholds& thresholds, Scheme scheme) {
    return classify_once(field, grid, lambda, cfg, thresholds, scheme, initial_iterate(grid, cfg));
}

OnceResult classify_once(const FieldExpr& field, const Grid& grid, double lambda, const DescentConfig& cfg,
                         const Thresholds& thresholds, Scheme scheme, GridFunction start) {
    const DiscreteGenerator gen = make_generator(field, grid, lambda, scheme);
    DescentTrace trace = run_descent(gen, grid, cfg, std::move(start));

    OnceResult out;
    out.evidence.point = {grid.n(), grid.z(), lambda};
    out.evidence.norm_ratio = trace.norm_ratio();
    out.evidence.rel_residual = trace.rel_residual;
    out.evidence.iterations = trace.iterations;
    out.evidence.stop = trace.stop;
    out.evidence.verdict = grade(out.evidence.norm_ratio, out.evidence.rel_residual, thresholds);
    out.grid = grid;
    out.final_iterate = std::move(trace.final_iterate);
    return out;
}

Classification classify_sweep(const FieldExpr& field, const SweepPlan& plan) {
    plan.validate();
    const std::vector<SweepPoint> points = plan.points();
    std::vector<OnceResult> results(points.size());
    const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) results[i] = run_point(field, points[i], plan);
    return aggregate(std::move(results));
}

Classification classify_sweep_serial(const FieldExpr& field, const SweepPlan& plan) {
    plan.validate();
    std::vector<OnceResult> results;
    for (const SweepPoint& point : plan.points()) results.push_back(run_point(field, point, plan));
    return aggregate(std::move(results));
}

CrossValidation cross_validate(const FieldExpr& field, const Classification& classification,
                               const CrossValidationOptions& options) {
    CrossValidation out;
    const double z = classification.grid ? classification.grid->z() : classification.reported.z;

    EscapeOptions escape;
    escape.horizon = options.horizon;
    escape.cap = options.cap;

    bool any_blew_up = false;
    out.probes.resize(options.probe_count);
    for (std::size_t i = 0; i < options.probe_count; ++i) {
        const double frac = static_cast<double>(i + 1) / static_cast<double>(options.probe_count);
        ProbeResult& probe = out.probes[i];
        probe.x = z * frac * frac;
        try {
            probe.estimate = estimate_escape_time(field, probe.x, escape);
            any_blew_up = any_blew_up || probe.estimate.status == EscapeStatus::BlewUp;
        } catch (const std::exception& e) {
            probe.error = e.what();
        }
    }

    switch (classification.verdict) {
        case Verdict::Local: out.agreement = any_blew_up; break;
        case Verdict::Global: out.agreement = !any_blew_up; break;
        case Verdict::Inconclusive: out.agreement = false; break;
    }

    if (classification.verdict != Verdict::Local || !classification.eigenfunction || !classification.grid)
        return out;

    const Grid& grid = *classification.grid;
    const GridFunction& g = *classification.eigenfunction;
    const double lambda = classification.reported.lambda;
    std::vector<double> oracle(grid.size(), 0.0);
    std::vector<char> failed(grid.size(), 0);
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        try {
            oracle[j] = estimate_escape_time(field, grid.node(j), escape).m_hat.decay(lambda);
        } catch (const std::exception&) {
            failed[j] = 1;
        }
    }
    double peak = 0.0;
    for (double value : oracle) peak = std::max(peak, value);
    if (peak <= 0.0) return out;

    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (failed[j]) continue;
        const double o = oracle[j] / peak;
        if (o > options.profile_floor && g[j] > options.profile_floor) {
            worst = std::max(worst, std::fabs(g[j] - o) / o);
            ++out.compared_nodes;
        }
    }
    if (out.compared_nodes > 0) out.profile_deviation = worst;
    return out;
}

}  // namespace liegen
