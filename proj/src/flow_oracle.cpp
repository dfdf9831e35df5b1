#include "liegen/flow_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace liegen {

EscapeTime EscapeTime::finite(double t) {
    if (!(std::isfinite(t) && t > 0.0)) throw std::invalid_argument("escape time must be positive and finite");
    EscapeTime m;
    m.finite_ = true;
    m.value_ = t;
    return m;
}

double EscapeTime::value() const {
    if (!finite_) throw std::logic_error("escape time is infinite");
    return value_;
}

double EscapeTime::decay(double lambda) const { return finite_ ? std::exp(-lambda * value_) : 0.0; }

std::string_view to_string(FlowId id) {
    switch (id) {
        case FlowId::Sq: return "sq";
        case FlowId::Logistic: return "logistic";
        case FlowId::NegSq: return "negsq";
    }
    return "?";
}

std::string_view ClosedFormFlow::field() const {
    switch (id_) {
        case FlowId::Sq: return "x^2";
        case FlowId::Logistic: return "x*(x-1)";
        case FlowId::NegSq: return "-x^2";
    }
    return "";
}

double ClosedFormFlow::apply(double t, double x) const {
    if (!(t >= 0.0) || !(x >= 0.0)) throw std::domain_error("flow requires t >= 0 and x >= 0");
    const EscapeTime m = escape_time(x);
    if (m.is_finite() && t >= m.value()) throw std::domain_error("t is past the escape time");
    switch (id_) {
        case FlowId::Sq: return x / (1.0 - t * x);
        case FlowId::Logistic: return x / (x + std::exp(t) * (1.0 - x));
        case FlowId::NegSq: return x / (1.0 + t * x);
    }
    return x;
}

EscapeTime ClosedFormFlow::escape_time(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("escape time requires x >= 0");
    switch (id_) {
        case FlowId::Sq:
            return x > 0.0 ? EscapeTime::finite(1.0 / x) : EscapeTime::never();
        case FlowId::Logistic:
            return x > 1.0 ? EscapeTime::finite(std::log(x / (x - 1.0))) : EscapeTime::never();
        case FlowId::NegSq:
            return EscapeTime::never();
    }
    return EscapeTime::never();
}

double ClosedFormFlow::eigenfunction(double lambda, double x) const {
    if (!(lambda > 0.0)) throw std::domain_error("eigenvalue must be positive");
    return escape_time(x).decay(lambda);
}

ClosedFormFlow closed_form(FlowId id) { return ClosedFormFlow(id); }

namespace {

struct StepFailure {};

// One classical RK4 step. Stage failures beyond k1 (overflow from an
// oversized step) are reported as StepFailure so the caller can shrink h.
double rk4_step(const FieldExpr& field, double u, double k1, double h) {
    try {
        const double k2 = field.eval(u + 0.5 * h * k1);
        const double k3 = field.eval(u + 0.5 * h * k2);
        const double k4 = field.eval(u + h * k3);
        const double next = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) throw StepFailure{};
        return next;
    } catch (const DomainError&) {
        throw StepFailure{};
    }
}

double crossing_time(const FieldExpr& field, double u_prev, double u_next, double h, double cap) {
    const double target = std::copysign(cap, u_next);
    double dt = -1.0;
    try {
        const double b_prev = field.eval(u_prev);
        const double b_cap = field.eval(target);
        if (b_prev != 0.0 && b_cap != 0.0) dt = (target - u_prev) * 0.5 * (1.0 / b_prev + 1.0 / b_cap);
    } catch (const DomainError&) {
    }
    if (!(dt >= 0.0 && dt <= h)) dt = h * (target - u_prev) / (u_next - u_prev);
    return dt;
}

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Time for a trajectory at u (moving outward) to reach |u| = cap, as the
// integral of du / B(u) taken in s = ln|u| so the integrand stays bounded.
double tail_time(const FieldExpr& field, double u, double cap, double rel_tol) {
    const double sign = u > 0.0 ? 1.0 : -1.0;
    auto integrand = [&](double s) {
        const double w = std::exp(s);
        const double b = field.eval(sign * w) * sign;
        if (!(b > 0.0)) throw IntegrationError("field changes sign on the way to the blow-up cap");
        return w / b;
    };
    const double a = std::log(std::fabs(u));
    const double b = std::log(cap);
    if (b <= a) return 0.0;
    const double fa = integrand(a);
    const double fm = integrand(0.5 * (a + b));
    const double fb = integrand(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson(integrand, a, b, fa, fm, fb, whole, rel_tol * std::fabs(whole), 40);
}

}  // namespace

EscapeEstimate estimate_escape_time(const FieldExpr& field, double x0, const EscapeOptions& options) {
    if (!(x0 >= 0.0) || !std::isfinite(x0)) throw std::invalid_argument("initial state must be finite and >= 0");
    if (!(options.horizon > 0.0) || !(options.cap > 0.0) || !(options.h0 > 0.0) || !(options.rel_tol > 0.0))
        throw std::invalid_argument("escape-time options must be positive");

    const double h_min = 1e-14 * options.horizon;
    EscapeEstimate out;
    double t = 0.0;
    double u = x0;
    double h = std::min(options.h0, options.horizon);

    if (std::fabs(u) >= options.cap) throw std::invalid_argument("initial state already beyond the blow-up cap");

    while (t < options.horizon) {
        h = std::min(h, options.horizon - t);
        const double k1 = field.eval(u);  // genuine domain errors propagate from here

        double full = 0.0;
        double half = 0.0;
        bool ok = true;
        try {
            full = rk4_step(field, u, k1, h);
            const double mid = rk4_step(field, u, k1, 0.5 * h);
            half = rk4_step(field, mid, field.eval(mid), 0.5 * h);
        } catch (const StepFailure&) {
            ok = false;
        } catch (const DomainError&) {
            ok = false;
        }
        const double err = ok ? std::fabs(half - full) : 0.0;
        if (!ok || err > options.rel_tol * std::max(std::fabs(half), std::numeric_limits<double>::min())) {
            h *= 0.5;
            if (h < h_min) {
                if (!ok) field.eval(u + h * k1);  // surfaces the underlying domain error, if any
                if (k1 * u > 0.0 && std::fabs(u) > 1.0) {
                    // Time steps can no longer resolve the approach to the cap.
                    out.m_hat = EscapeTime::finite(t + tail_time(field, u, options.cap, options.rel_tol));
                    out.status = EscapeStatus::BlewUp;
                    return out;
                }
                throw IntegrationError("step size underflow at t = " + std::to_string(t) +
                                       ", u = " + std::to_string(u));
            }
            continue;
        }

        ++out.steps;
        if (std::fabs(half) >= options.cap) {
            const double m = t + crossing_time(field, u, half, h, options.cap);
            out.m_hat = EscapeTime::finite(m);
            out.status = EscapeStatus::BlewUp;
            return out;
        }
        t += h;
        u = half;
        if (err <= options.rel_tol / 64.0 * std::fabs(half)) h *= 2.0;
    }
    out.status = EscapeStatus::SurvivedHorizon;
    out.m_hat = EscapeTime::never();
    return out;
}

GridFunction sample_eigenfunction(const ClosedFormFlow& flow, double lambda, const Grid& grid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("eigenvalue must be positive");
    return sample(grid, [&](double x) { return flow.eigenfunction(lambda, x); });
}

}  // namespace liegen
