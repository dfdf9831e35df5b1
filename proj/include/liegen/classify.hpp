#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liegen/descent.hpp"
#include "liegen/discretize.hpp"
#include "liegen/expr.hpp"
#include "liegen/flow_oracle.hpp"

namespace liegen {

enum class Verdict { Local, Global, Inconclusive };

const char* to_string(Verdict verdict);

struct Thresholds {
    double theta_local = 0.1;
    double theta_global = 1e-4;
    double rho_max = 1e-2;
};

struct SweepPoint {
    std::size_t n = 400;
    double z = 10.0;
    double lambda = 1.0;

    auto operator<=>(const SweepPoint&) const = default;
};

/// Outcome of one descent at one (n, z, lambda).
struct Evidence {
    SweepPoint point;
    Verdict verdict = Verdict::Inconclusive;
    double norm_ratio = 0.0;
    std::optional<double> rel_residual;
    std::size_t iterations = 0;
    StopReason stop = StopReason::MaxIters;
    /// Set when the point failed (e.g. field undefined at a node).
    std::optional<std::string> error;
};

struct SweepPlan {
    std::vector<std::size_t> n_values{200, 400, 800};
    std::vector<double> z_values{10.0, 20.0, 40.0};
    std::vector<double> lambda_values{0.5, 1.0, 2.0};
    Thresholds thresholds;
    DescentConfig descent;
    Scheme scheme = Scheme::Upwind;

    /// Throws std::invalid_argument.
    void validate() const;
    /// All (n, z, lambda) combinations, sorted.
    std::vector<SweepPoint> points() const;
};

struct OnceResult {
    Evidence evidence;
    std::optional<Grid> grid;
    GridFunction final_iterate;
};

/// Runs one descent and grades it: Local if norm_ratio >= theta_local and the
/// relative residual <= rho_max, Global if norm_ratio <= theta_global.
OnceResult classify_once(const FieldExpr& field, const Grid& grid, double lambda, const DescentConfig& cfg,
                         const Thresholds& thresholds = {}, Scheme scheme = Scheme::Upwind);

/// Same as above from an explicit starting iterate.
OnceResult classify_once(const FieldExpr& field, const Grid& grid, double lambda, const DescentConfig& cfg,
                         const Thresholds& thresholds, Scheme scheme, GridFunction start);

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    /// The point whose iterate is reported: largest n, then smallest z, then
    /// lambda closest to 1.
    SweepPoint reported;
    double norm_ratio = 0.0;
    std::optional<double> rel_residual;
    std::optional<Grid> grid;
    /// Raw final iterate at the reported point.
    GridFunction profile;
    /// Reported iterate scaled to ||.||_inf = 1, present iff Local.
    std::optional<GridFunction> eigenfunction;
    /// Sorted by (n, z, lambda).
    std::vector<Evidence> evidence;
};

/// Unanimity over every plan point. Points run concurrently (OpenMP).
Classification classify_sweep(const FieldExpr& field, const SweepPlan& plan);

/// Single-threaded reference for classify_sweep; results are identical.
Classification classify_sweep_serial(const FieldExpr& field, const SweepPlan& plan);

struct ProbeResult {
    double x = 0.0;
    EscapeEstimate estimate;
    std::optional<std::string> error;
};

struct CrossValidation {
    bool agreement = false;
    std::vector<ProbeResult> probes;
    /// Local only: max |g - o| / o over nodes where both normalized profiles exceed 0.05.
    std::optional<double> profile_deviation;
    std::size_t compared_nodes = 0;
};

struct CrossValidationOptions {
    std::size_t probe_count = 8;
    double horizon = 50.0;
    double cap = 1e8;
    double profile_floor = 0.05;
};

/// Checks a classification against numerically integrated escape times.
CrossValidation cross_validate(const FieldExpr& field, const Classification& classification,
                               const CrossValidationOptions& options = {});

}  // namespace liegen
