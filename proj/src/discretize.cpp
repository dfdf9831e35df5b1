#include "liegen/discretize.hpp"

#include <cmath>
#include <string>

namespace liegen {

namespace {

void require_size(const Grid& grid, const GridFunction& g, const char* what) {
    if (g.size() != grid.size())
        throw std::invalid_argument(std::string(what) + ": grid function has " + std::to_string(g.size()) +
                                    " entries, grid has " + std::to_string(grid.size()) + " nodes");
}

}  // namespace

Grid::Grid(double z, std::size_t n) : z_(z), n_(n) {
    if (!(std::isfinite(z) && z > 0.0)) throw std::invalid_argument("grid length z must be positive and finite");
    if (n < 2) throw std::invalid_argument("grid needs n >= 2 subdivisions");
}

std::vector<double> Grid::nodes() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = node(j);
    return out;
}

GridFunction::GridFunction(std::size_t size, double fill) : values_(size, fill) {
    if (!std::isfinite(fill)) throw std::invalid_argument("grid function fill value must be finite");
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t j = 0; j < values_.size(); ++j)
        if (!std::isfinite(values_[j]))
            throw std::invalid_argument("grid function entry " + std::to_string(j) + " is not finite");
}

double max_norm(const GridFunction& g) {
    double m = 0.0;
    for (double value : g) m = std::max(m, std::fabs(value));
    return m;
}

double dot(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double l2_norm(const GridFunction& g) { return std::sqrt(dot(g, g)); }

FieldSampleError::FieldSampleError(std::size_t node, double x, const std::string& what)
    : DomainError("field undefined at node " + std::to_string(node) + " (x = " + std::to_string(x) +
                  "): " + what),
      node_(node) {}

GridFunction sample_field(const FieldExpr& field, const Grid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = grid.node(j);
        try {
            v[j] = field.eval(x);
        } catch (const DomainError& e) {
            throw FieldSampleError(j, x, e.what());
        }
    }
    return GridFunction(std::move(v));
}

GridFunction apply_difference(const Grid& grid, const GridFunction& g) {
    require_size(grid, g, "apply_difference");
    const std::size_t n = grid.n();
    const double h = grid.h();
    GridFunction out(grid.size());
    for (std::size_t j = 0; j < n; ++j) out[j] = (g[j + 1] - g[j]) / h;
    out[n] = (g[n] - g[n - 1]) / h;
    return out;
}

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::ForwardThenBackward: return "forward";
        case Scheme::Upwind: return "upwind";
    }
    return "?";
}

DiscreteGenerator::DiscreteGenerator(const Grid& grid, GridFunction v, double lambda, Scheme scheme)
    : v_(std::move(v)), lambda_(lambda), scheme_(scheme), lo_(v_.size()) {
    require_size(grid, v_, "DiscreteGenerator");
    if (!(std::isfinite(lambda) && lambda > 0.0))
        throw std::invalid_argument("eigenvalue parameter lambda must be positive and finite");
    const std::size_t n = grid.n();
    for (std::size_t j = 0; j <= n; ++j) {
        bool forward = j < n;
        if (scheme == Scheme::Upwind && v_[j] < 0.0) forward = (j == 0);
        lo_[j] = forward ? j : j - 1;
    }
}

DiscreteGenerator make_generator(const FieldExpr& field, const Grid& grid, double lambda, Scheme scheme) {
    return DiscreteGenerator(grid, sample_field(field, grid), lambda, scheme);
}

GridFunction apply_generator(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g) {
    require_size(grid, g, "apply_generator");
    const double h = grid.h();
    GridFunction out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const std::size_t lo = gen.lo(j);
        out[j] = gen.v()[j] * ((g[lo + 1] - g[lo]) / h);
    }
    return out;
}

GridFunction residual(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g) {
    require_size(grid, g, "residual");
    const double h = grid.h();
    const double lambda = gen.lambda();
    GridFunction out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const std::size_t lo = gen.lo(j);
        out[j] = lambda * g[j] - gen.v()[j] * ((g[lo + 1] - g[lo]) / h);
    }
    return out;
}

GridFunction apply_residual_transpose(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& r) {
    require_size(grid, r, "apply_residual_transpose");
    const double h = grid.h();
    const double lambda = gen.lambda();
    GridFunction out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = lambda * r[j];
    // Row j of v∘D is (v_j/h) * (e_{lo+1} - e_lo).
    for (std::size_t j = 0; j < r.size(); ++j) {
        const std::size_t lo = gen.lo(j);
        const double c = gen.v()[j] * r[j] / h;
        out[lo + 1] -= c;
        out[lo] += c;
    }
    return out;
}

double objective(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g) {
    const GridFunction r = residual(gen, grid, g);
    return 0.5 * dot(r, r);
}

GridFunction ordinary_gradient(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g) {
    return apply_residual_transpose(gen, grid, residual(gen, grid, g));
}

Preconditioner::Preconditioner(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    const std::size_t m = diag_.size();
    if (m == 0 || offdiag_.size() + 1 != m) throw std::invalid_argument("preconditioner band sizes mismatch");

    pivots_.resize(m);
    multipliers_.assign(m, 0.0);
    pivots_[0] = diag_[0];
    for (std::size_t i = 1; i <= m; ++i) {
        if (!(pivots_[i - 1] > 0.0) || !std::isfinite(pivots_[i - 1]))
            throw FactorizationError("LDL^t pivot " + std::to_string(i - 1) + " is not positive");
        if (i == m) break;
        multipliers_[i] = offdiag_[i - 1] / pivots_[i - 1];
        pivots_[i] = diag_[i] - multipliers_[i] * offdiag_[i - 1];
    }
}

GridFunction Preconditioner::solve(const GridFunction& r) const {
    const std::size_t m = size();
    if (r.size() != m) throw std::invalid_argument("precond_solve: size mismatch");
    std::vector<double> s(r.begin(), r.end());
    for (std::size_t i = 1; i < m; ++i) s[i] -= multipliers_[i] * s[i - 1];
    for (std::size_t i = 0; i < m; ++i) s[i] /= pivots_[i];
    for (std::size_t i = m - 1; i-- > 0;) s[i] -= multipliers_[i + 1] * s[i + 1];
    return GridFunction(std::move(s));
}

GridFunction Preconditioner::apply(const GridFunction& g) const {
    const std::size_t m = size();
    if (g.size() != m) throw std::invalid_argument("Preconditioner::apply: size mismatch");
    GridFunction out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag_[i] * g[i];
        if (i > 0) s += offdiag_[i - 1] * g[i - 1];
        if (i + 1 < m) s += offdiag_[i] * g[i + 1];
        out[i] = s;
    }
    return out;
}

Preconditioner build_preconditioner(const DiscreteGenerator& gen, const Grid& grid) {
    const std::size_t m = gen.size();
    if (m != grid.size()) throw std::invalid_argument("build_preconditioner: size mismatch");
    const double h = grid.h();
    std::vector<double> diag(m, 1.0);
    std::vector<double> off(m - 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lo = gen.lo(j);
        const double c = gen.v()[j] / h;
        const double c2 = c * c;
        diag[lo] += c2;
        diag[lo + 1] += c2;
        off[lo] -= c2;
    }
    return Preconditioner(std::move(diag), std::move(off));
}

}  // namespace liegen
