#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "liegen/classify.hpp"

namespace liegen {

struct EmitFlags {
    bool csv = true;
    bool json = true;
    bool svg = true;
    bool history = false;
};

struct RunConfig {
    std::string field;
    double z = 10.0;
    std::size_t n = 400;
    std::vector<double> lambdas{1.0};
    /// Expands to n in {n/2, n, 2n} and z in {z, 2z, 4z}.
    bool sweep = false;
    InitMode init = InitMode::Ones;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::Upwind;
    std::size_t max_iters = 20000;
    double stop_grad = 1e-12;
    std::filesystem::path out_dir = ".";
    EmitFlags emit;
    bool cross_validate = true;

    /// Throws std::invalid_argument.
    void validate() const;
    SweepPlan plan() const;
};

/// Exit codes: 0 Local/Global, 2 Inconclusive, 1 usage or numeric error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string report_json(const RunConfig& cfg, const FieldExpr& field, const Classification& result,
                        const CrossValidation* validation);

}  // namespace liegen
