#include "liegen/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "liegen/report.hpp"

namespace liegen {

namespace {

using nlohmann::json;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw std::invalid_argument("empty item in list '" + text + "'");
        out.push_back(item.substr(first, last - first + 1));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<double> parse_lambdas(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split_list(text)) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw std::invalid_argument("bad lambda value '" + item + "'");
        out.push_back(value);
    }
    return out;
}

EmitFlags parse_emit(const std::string& text) {
    EmitFlags flags{false, false, false, false};
    if (text == "none") return flags;
    for (const std::string& item : split_list(text)) {
        if (item == "csv")
            flags.csv = true;
        else if (item == "json")
            flags.json = true;
        else if (item == "svg")
            flags.svg = true;
        else if (item == "history")
            flags.history = true;
        else
            throw std::invalid_argument("unknown --emit item '" + item + "'");
    }
    return flags;
}

json optional_number(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

json point_json(const SweepPoint& p) { return {{"n", p.n}, {"z", p.z}, {"lambda", p.lambda}}; }

json evidence_json(const Evidence& e) {
    json j = point_json(e.point);
    j["verdict"] = to_string(e.verdict);
    j["norm_ratio"] = e.norm_ratio;
    j["rel_residual"] = optional_number(e.rel_residual);
    j["iterations"] = e.iterations;
    j["stop"] = to_string(e.stop);
    j["error"] = e.error ? json(*e.error) : json(nullptr);
    return j;
}

json validation_json(const CrossValidation& v) {
    json probes = json::array();
    for (const ProbeResult& p : v.probes) {
        probes.push_back({
            {"x", p.x},
            {"status", p.estimate.status == EscapeStatus::BlewUp ? "blew_up" : "survived_horizon"},
            {"m_hat", p.estimate.m_hat.is_finite() ? json(p.estimate.m_hat.value()) : json(nullptr)},
            {"steps", p.estimate.steps},
            {"error", p.error ? json(*p.error) : json(nullptr)},
        });
    }
    return {{"agreement", v.agreement},
            {"probes", probes},
            {"profile_deviation", optional_number(v.profile_deviation)},
            {"compared_nodes", v.compared_nodes}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os.flush()) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void RunConfig::validate() const {
    if (field.empty()) throw std::invalid_argument("--field is required");
    plan().validate();
}

SweepPlan RunConfig::plan() const {
    SweepPlan p;
    if (sweep) {
        p.n_values = {n / 2, n, 2 * n};
        p.z_values = {z, 2.0 * z, 4.0 * z};
    } else {
        p.n_values = {n};
        p.z_values = {z};
    }
    p.lambda_values = lambdas;
    p.scheme = scheme;
    p.descent.max_iters = max_iters;
    p.descent.stop_grad = stop_grad;
    p.descent.init = init;
    p.descent.seed = seed;
    return p;
}

std::string report_json(const RunConfig& cfg, const FieldExpr& field, const Classification& result,
                        const CrossValidation* validation) {
    const SweepPlan plan = cfg.plan();
    json config = {
        {"z", cfg.z},
        {"n", cfg.n},
        {"lambda", cfg.lambdas},
        {"sweep", cfg.sweep},
        {"init", cfg.init == InitMode::Ones ? "ones" : "random"},
        {"seed", cfg.seed},
        {"scheme", to_string(cfg.scheme)},
        {"max_iters", cfg.max_iters},
        {"stop_grad", cfg.stop_grad},
        {"thresholds",
         {{"theta_local", plan.thresholds.theta_local},
          {"theta_global", plan.thresholds.theta_global},
          {"rho_max", plan.thresholds.rho_max}}},
    };
    json evidence = json::array();
    for (const Evidence& e : result.evidence) evidence.push_back(evidence_json(e));

    json report = {
        {"schema", 1},
        {"field", cfg.field},
        {"field_canonical", field.to_string()},
        {"verdict", to_string(result.verdict)},
        {"norm_ratio", result.norm_ratio},
        {"rel_residual", optional_number(result.rel_residual)},
        {"reported_point", point_json(result.reported)},
        {"config", config},
        {"evidence", evidence},
        {"cross_validation", validation ? validation_json(*validation) : json(nullptr)},
    };
    return report.dump(2) + "\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classify the flow of u' = B(u) on [0, z] as a global or local semigroup", "liegen"};
    app.set_config("--config", "", "Flat 'key = value' file using the flag names as keys; flags win");

    RunConfig cfg;
    std::string lambda_text = "1";
    std::string emit_text = "csv,json,svg";
    std::string init_text = "ones";
    std::string scheme_text = "upwind";
    std::string out_text = ".";
    bool no_validate = false;

    app.add_option("--field", cfg.field, "Vector field B(x), e.g. \"x^2\"")->required();
    app.add_option("--z", cfg.z, "Truncation length of [0, z]")->capture_default_str();
    app.add_option("--n", cfg.n, "Number of grid subdivisions")->capture_default_str();
    app.add_option("--lambda", lambda_text, "Comma-separated eigenvalue parameters")->capture_default_str();
    app.add_flag("--sweep", cfg.sweep, "Refinement sweep over n/2, n, 2n and z, 2z, 4z");
    app.add_option("--init", init_text, "Initial iterate: ones | random")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for --init random")->capture_default_str();
    app.add_option("--scheme", scheme_text, "Difference stencil: upwind | forward")->capture_default_str();
    app.add_option("--max-iters", cfg.max_iters, "Descent iteration cap")->capture_default_str();
    app.add_option("--stop-grad", cfg.stop_grad, "Relative gradient stopping tolerance")->capture_default_str();
    app.add_option("--out", out_text, "Output directory")->capture_default_str();
    app.add_option("--emit", emit_text, "Comma list of csv,json,svg,history or 'none'")->capture_default_str();
    app.add_flag("--no-cross-validate", no_validate, "Skip the escape-time cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    FieldExpr field = FieldExpr::parse("0");
    try {
        cfg.lambdas = parse_lambdas(lambda_text);
        cfg.emit = parse_emit(emit_text);
        if (init_text == "ones")
            cfg.init = InitMode::Ones;
        else if (init_text == "random")
            cfg.init = InitMode::RandomSeeded;
        else
            throw std::invalid_argument("--init must be 'ones' or 'random'");
        if (scheme_text == "upwind")
            cfg.scheme = Scheme::Upwind;
        else if (scheme_text == "forward")
            cfg.scheme = Scheme::ForwardThenBackward;
        else
            throw std::invalid_argument("--scheme must be 'upwind' or 'forward'");
        cfg.out_dir = out_text;
        cfg.cross_validate = !no_validate;
        cfg.validate();
        field = FieldExpr::parse(cfg.field);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        const Classification result = classify_sweep(field, cfg.plan());
        std::optional<CrossValidation> validation;
        if (cfg.cross_validate) validation = cross_validate(field, result);

        out << to_string(result.verdict) << '\n';
        out << "norm_ratio = " << result.norm_ratio << '\n';
        if (result.rel_residual) out << "rel_residual = " << *result.rel_residual << '\n';
        if (validation) {
            out << "cross_validation = " << (validation->agreement ? "agree" : "disagree") << '\n';
            if (validation->profile_deviation)
                out << "profile_deviation = " << *validation->profile_deviation << '\n';
        }
        for (const Evidence& e : result.evidence)
            if (e.error) err << "warning: point n=" << e.point.n << " z=" << e.point.z << " lambda=" << e.point.lambda
                             << " failed: " << *e.error << '\n';

        std::filesystem::create_directories(cfg.out_dir);
        if (result.grid) {
            const GridFunction& plotted = result.eigenfunction ? *result.eigenfunction : result.profile;
            if (cfg.emit.csv) emit_csv(cfg.out_dir / "eigenfunction.csv", *result.grid, plotted);
            if (cfg.emit.svg) emit_svg(cfg.out_dir / "figure.svg", *result.grid, plotted, "u' = " + cfg.field);
            if (cfg.emit.history) {
                // Replays the reported point; descent is deterministic.
                const DiscreteGenerator gen =
                    make_generator(field, *result.grid, result.reported.lambda, cfg.scheme);
                const DescentTrace trace = run_descent(gen, *result.grid, cfg.plan().descent);
                std::vector<double> k(trace.phi.size());
                for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i);
                std::ofstream os(cfg.out_dir / "phi_history.csv", std::ios::binary | std::ios::trunc);
                write_series_csv(os, "iteration", "phi", k, trace.phi);
                if (!os.flush()) throw std::runtime_error("failed writing phi_history.csv");
            }
        }
        if (cfg.emit.json)
            write_text(cfg.out_dir / "report.json",
                       report_json(cfg, field, result, validation ? &*validation : nullptr));

        return result.verdict == Verdict::Inconclusive ? 2 : 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace liegen
