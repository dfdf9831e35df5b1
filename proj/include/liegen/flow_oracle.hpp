#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "liegen/discretize.hpp"
#include "liegen/expr.hpp"

namespace liegen {

/// Escape (blow-up) time of a trajectory: either a finite positive time or
/// the explicit "never escapes" sentinel. Infinity never enters arithmetic.
class EscapeTime {
public:
    static EscapeTime finite(double t);
    static EscapeTime never() { return EscapeTime(); }

    bool is_finite() const noexcept { return finite_; }
    /// Throws std::logic_error for the sentinel.
    double value() const;
    /// exp(-lambda * m), exactly 0 for the sentinel.
    double decay(double lambda) const;

private:
    EscapeTime() = default;
    bool finite_ = false;
    double value_ = 0.0;
};

enum class FlowId { Sq, Logistic, NegSq };

std::string_view to_string(FlowId id);

/// The closed-form flows of u' = x^2, u' = x(x-1) and u' = -x^2 on [0, inf).
class ClosedFormFlow {
public:
    explicit ClosedFormFlow(FlowId id) : id_(id) {}

    FlowId id() const noexcept { return id_; }
    /// Field text, e.g. "x^2".
    std::string_view field() const;

    /// T(t)x. Requires 0 <= t < escape_time(x); throws std::domain_error otherwise.
    double apply(double t, double x) const;
    EscapeTime escape_time(double x) const;
    /// exp(-lambda * m(x)), an eigenfunction of the Lie generator with eigenvalue lambda.
    double eigenfunction(double lambda, double x) const;

private:
    FlowId id_;
};

ClosedFormFlow closed_form(FlowId id);

enum class EscapeStatus { BlewUp, SurvivedHorizon };

struct EscapeEstimate {
    EscapeTime m_hat = EscapeTime::never();
    EscapeStatus status = EscapeStatus::SurvivedHorizon;
    std::size_t steps = 0;
};

struct EscapeOptions {
    double horizon = 10.0;
    double cap = 1e8;
    double h0 = 1e-3;
    double rel_tol = 1e-10;
};

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrates u' = B(u), u(0) = x0 with step-doubling RK4 until |u| >= cap
/// (BlewUp, crossing time extrapolated over the last step) or t = horizon.
/// If the step size underflows while the trajectory is running outward, the
/// remaining time to the cap is the quadrature of du / B(u) instead.
EscapeEstimate estimate_escape_time(const FieldExpr& field, double x0, const EscapeOptions& options = {});

GridFunction sample_eigenfunction(const ClosedFormFlow& flow, double lambda, const Grid& grid);

}  // namespace liegen
