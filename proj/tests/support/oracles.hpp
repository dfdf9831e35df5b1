#pragma once

// Test-only reference computations, independent of the matrix-free kernels.

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liegen/descent.hpp"
#include "liegen/discretize.hpp"

namespace liegen::testing {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t m) { return Dense(m, std::vector<double>(m, 0.0)); }

inline Dense identity(std::size_t m) {
    Dense a = zeros(m);
    for (std::size_t i = 0; i < m; ++i) a[i][i] = 1.0;
    return a;
}

inline Dense transpose(const Dense& a) {
    Dense t = zeros(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Dense multiply(const Dense& a, const Dense& b) {
    const std::size_t m = a.size();
    Dense c = zeros(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline std::vector<double> multiply(const Dense& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

/// Dense D with the stencil chosen row by row: forward where `forward[j]`.
inline Dense difference_matrix(const Grid& grid, const std::vector<bool>& forward) {
    const std::size_t m = grid.size();
    const double h = grid.h();
    Dense d = zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lo = forward[j] ? j : j - 1;
        d[j][lo] = -1.0 / h;
        d[j][lo + 1] = 1.0 / h;
    }
    return d;
}

/// Stencil directions for the two schemes, spelled out independently.
inline std::vector<bool> stencil_directions(const GridFunction& v, Scheme scheme) {
    const std::size_t n = v.size() - 1;
    std::vector<bool> forward(v.size());
    for (std::size_t j = 0; j <= n; ++j) {
        if (j == n)
            forward[j] = false;
        else if (j == 0)
            forward[j] = true;
        else
            forward[j] = scheme == Scheme::ForwardThenBackward || v[j] >= 0.0;
    }
    return forward;
}

/// diag(v) * D.
inline Dense transport_matrix(const Grid& grid, const GridFunction& v, Scheme scheme) {
    Dense m = difference_matrix(grid, stencil_directions(v, scheme));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (double& entry : m[i]) entry *= v[i];
    return m;
}

/// R = lambda I - diag(v) D.
inline Dense residual_matrix(const Grid& grid, const GridFunction& v, double lambda, Scheme scheme) {
    Dense r = transport_matrix(grid, v, scheme);
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (double& entry : r[i]) entry = -entry;
        r[i][i] += lambda;
    }
    return r;
}

inline Dense preconditioner_matrix(const Grid& grid, const GridFunction& v, Scheme scheme) {
    const Dense m = transport_matrix(grid, v, scheme);
    Dense q = multiply(transpose(m), m);
    for (std::size_t i = 0; i < q.size(); ++i) q[i][i] += 1.0;
    return q;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> lu_solve(Dense a, std::vector<double> b) {
    const std::size_t m = a.size();
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
        if (a[p][k] == 0.0) throw std::runtime_error("singular matrix");
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < m; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < m; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Central finite differences of phi, step 1e-6 * (1 + ||g||_inf).
inline std::vector<double> fd_gradient(const DiscreteGenerator& gen, const Grid& grid, const GridFunction& g) {
    const double step = 1e-6 * (1.0 + max_norm(g));
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        GridFunction plus = g;
        GridFunction minus = g;
        plus[j] += step;
        minus[j] -= step;
        out[j] = (objective(gen, grid, plus) - objective(gen, grid, minus)) / (2.0 * step);
    }
    return out;
}

inline GridFunction random_function(std::size_t size, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(size);
    for (double& value : values) value = dist(rng);
    return GridFunction(std::move(values));
}

}  // namespace liegen::testing
