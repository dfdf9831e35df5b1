#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "liegen/expr.hpp"

namespace liegen {

/// Uniform grid on [0, z] with n subdivisions: nodes x_j = z*j/n, j = 0..n.
class Grid {
public:
    /// Throws std::invalid_argument unless z > 0 (finite) and n >= 2.
    Grid(double z, std::size_t n);

    double z() const noexcept { return z_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ + 1; }
    double h() const noexcept { return z_ / static_cast<double>(n_); }
    double node(std::size_t j) const noexcept {
        return z_ * static_cast<double>(j) / static_cast<double>(n_);
    }
    std::vector<double> nodes() const;

    bool operator==(const Grid&) const = default;

private:
    double z_;
    std::size_t n_;
};

inline Grid build_grid(double z, std::size_t n) { return Grid(z, n); }

/// One finite real value per grid node.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::size_t size, double fill = 0.0);
    /// Throws std::invalid_argument if any entry is non-finite.
    explicit GridFunction(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double& operator[](std::size_t j) noexcept { return values_[j]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool operator==(const GridFunction&) const = default;

private:
    std::vector<double> values_;
};

double max_norm(const GridFunction& g);
double l2_norm(const GridFunction& g);
double dot(const GridFunction& a, const GridFunction& b);

/// Node-wise samples of a callable over the grid.
template <class F>
GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f(grid.node(j));
    return GridFunction(std::move(values));
}

class FieldSampleError : public DomainError {
public:
    FieldSampleError(std::size_t node, double x, const std::string& what);
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// v(j) = B(x_j). A domain error at a node is rethrown as FieldSampleError.
GridFunction sample_field(const FieldExpr& field, const Grid& grid);

/// (Dg)(j) = (g(j+1) - g(j))/h for j < n, (g(n) - g(n-1))/h at j = n.
GridFunction apply_difference(const Grid& grid, const GridFunction& g);

/// Choice of first-difference stencil for row j of v∘D.
///  ForwardThenBackward: forward at j < n, backward at j = n.
///  Upwind: forward where v(j) >= 0, backward where v(j) < 0, falling back
///          to the available side at the two boundary nodes.
enum class Scheme { ForwardThenBackward, Upwind };

const char* to_string(Scheme scheme);

/// Discrete Lie generator A_n g = v ∘ D g with eigenvalue parameter lambda.
/// Row j of D is (g(hi_j) - g(lo_j))/h with hi_j = lo_j + 1.
class DiscreteGenerator {
public:
    DiscreteGenerator(const Grid& grid, GridFunction v, double lambda, Scheme scheme = Scheme::Upwind);

    const GridFunction& v() const noexcept { return v_; }
    double lambda() const noexcept { return lambda_; }
    Scheme scheme() const noexcept { return scheme_; }
    std::size_t size() const noexcept { return v_.size(); }
    /// Lower node of the difference taken in row j.
    std::size_t lo(std::size_t j) const noexcept { return lo_[j]; }

private:
    GridFunction v_;
    double lambda_;
    Scheme scheme_;
    std::vector<std::size_t> lo_;
};

DiscreteGenerator make_generator(const FieldExpr& field, const Grid& grid, double lambda,
                                 Scheme scheme = Scheme::Upwind);

/// (A_n g)(j) = v(j) * (Dg)(j).
GridFunction apply_generator(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g);

/// r = lambda*g - A_n g, i.e. R g.
GridFunction residual(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g);

/// R^t r, matrix-free via the transpose stencil.
GridFunction apply_residual_transpose(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& r);

/// phi(g) = 1/2 * sum_j r(j)^2.
double objective(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g);

/// alpha(g) = R^t R g, the Euclidean gradient of phi.
GridFunction ordinary_gradient(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g);

/// Q = I + (v∘D)^t (v∘D), symmetric tridiagonal, held with its LDL^t factors.
class Preconditioner {
public:
    Preconditioner(std::vector<double> diag, std::vector<double> offdiag);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    /// offdiag()[i] = Q(i, i+1) = Q(i+1, i).
    std::span<const double> offdiag() const noexcept { return offdiag_; }

    /// s with Q s = r.
    GridFunction solve(const GridFunction& r) const;
    /// Q g.
    GridFunction apply(const GridFunction& g) const;

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
    std::vector<double> pivots_;       // D of LDL^t
    std::vector<double> multipliers_;  // subdiagonal of L
};

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Preconditioner build_preconditioner(const DiscreteGenerator& gen, const Grid& grid);

inline GridFunction precond_solve(const Preconditioner& q, const GridFunction& r) { return q.solve(r); }

}  // namespace liegen
