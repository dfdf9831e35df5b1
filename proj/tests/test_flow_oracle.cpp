#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liegen/flow_oracle.hpp"

using namespace liegen;

TEST(ClosedForm, ReferenceValues) {
    EXPECT_DOUBLE_EQ(closed_form(FlowId::Sq).apply(0.25, 2.0), 4.0);
    EXPECT_NEAR(closed_form(FlowId::Logistic).escape_time(2.0).value(), 0.693147, 1e-6);
    EXPECT_DOUBLE_EQ(closed_form(FlowId::NegSq).apply(1.0, 1.0), 0.5);
}

TEST(ClosedForm, EscapeTimes) {
    EXPECT_DOUBLE_EQ(closed_form(FlowId::Sq).escape_time(4.0).value(), 0.25);
    EXPECT_FALSE(closed_form(FlowId::Sq).escape_time(0.0).is_finite());
    EXPECT_FALSE(closed_form(FlowId::Logistic).escape_time(1.0).is_finite());
    EXPECT_FALSE(closed_form(FlowId::Logistic).escape_time(0.3).is_finite());
    EXPECT_FALSE(closed_form(FlowId::NegSq).escape_time(7.0).is_finite());
    EXPECT_THROW(closed_form(FlowId::Sq).apply(0.5, 2.0), std::domain_error);
    EXPECT_THROW(EscapeTime::never().value(), std::logic_error);
    EXPECT_EQ(EscapeTime::never().decay(3.0), 0.0);
}

TEST(ClosedForm, IdentityAtTimeZero) {
    for (FlowId id : {FlowId::Sq, FlowId::Logistic, FlowId::NegSq})
        for (double x : {0.0, 0.5, 1.0, 2.0, 9.5}) EXPECT_EQ(closed_form(id).apply(0.0, x), x);
}

TEST(ClosedForm, SemigroupLaw) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (FlowId id : {FlowId::Sq, FlowId::Logistic, FlowId::NegSq}) {
        const ClosedFormFlow flow = closed_form(id);
        for (int i = 0; i < 1000; ++i) {
            const double x = 10.0 * unit(rng);
            const EscapeTime m = flow.escape_time(x);
            const double budget = m.is_finite() ? 0.99 * m.value() : 10.0;
            const double total = budget * unit(rng);
            const double s = total * unit(rng);
            const double t = total - s;
            const double direct = flow.apply(t + s, x);
            const double composed = flow.apply(t, flow.apply(s, x));
            EXPECT_LE(std::fabs(composed - direct), 1e-9 * (1.0 + std::fabs(direct)))
                << to_string(id) << " x=" << x << " s=" << s << " t=" << t;
        }
    }
}

TEST(ClosedForm, EscapeTimeCocycle) {
    const ClosedFormFlow sq = closed_form(FlowId::Sq);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double x = 0.1 + 9.9 * unit(rng);
        const double m = sq.escape_time(x).value();
        const double t = 0.9 * m * unit(rng);
        EXPECT_NEAR(sq.escape_time(sq.apply(t, x)).value(), m - t, 1e-9 * m);
    }
}

TEST(ClosedForm, EigenfunctionSamples) {
    const Grid grid(10.0, 5);  // nodes 0, 2, ..., 10
    const GridFunction sq = sample_eigenfunction(closed_form(FlowId::Sq), 1.0, grid);
    EXPECT_EQ(sq[0], 0.0);
    EXPECT_NEAR(sq[1], 0.606531, 1e-6);

    const GridFunction logistic = sample_eigenfunction(closed_form(FlowId::Logistic), 1.0, grid);
    EXPECT_NEAR(logistic[1], 0.5, 1e-15);
    EXPECT_NEAR(logistic[5], 0.9, 1e-15);

    const Grid fine(1.0, 10);
    for (double value : sample_eigenfunction(closed_form(FlowId::Logistic), 1.0, fine)) EXPECT_EQ(value, 0.0);
    for (double value : sample_eigenfunction(closed_form(FlowId::NegSq), 2.0, grid)) EXPECT_EQ(value, 0.0);
}

TEST(EscapeEstimate, KnownBlowUps) {
    EscapeOptions opt;
    opt.horizon = 10.0;
    const EscapeEstimate sq = estimate_escape_time(parse("x^2"), 2.0, opt);
    ASSERT_EQ(sq.status, EscapeStatus::BlewUp);
    EXPECT_NEAR(sq.m_hat.value(), 0.5, 1e-3);

    const EscapeEstimate negsq = estimate_escape_time(parse("-x^2"), 2.0, opt);
    EXPECT_EQ(negsq.status, EscapeStatus::SurvivedHorizon);
    EXPECT_FALSE(negsq.m_hat.is_finite());

    // m(x) = 1/(2 x^2) for u' = u^3, checked independently by quadrature of du/u^3.
    const EscapeEstimate cube = estimate_escape_time(parse("x^3"), 1.0, opt);
    ASSERT_EQ(cube.status, EscapeStatus::BlewUp);
    EXPECT_NEAR(cube.m_hat.value(), 0.5, 1e-3);
}

TEST(EscapeEstimate, MatchesClosedForms) {
    const FieldExpr sq = parse("x^2");
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
        const double m = 1.0 / x;
        EXPECT_LE(std::fabs(estimate_escape_time(sq, x).m_hat.value() - m), 1e-3 * m) << x;
    }
    const FieldExpr logistic = parse("x*(x-1)");
    for (double x : {1.5, 2.0, 5.0}) {
        const double m = std::log(x / (x - 1.0));
        EXPECT_LE(std::fabs(estimate_escape_time(logistic, x).m_hat.value() - m), 1e-3 * m) << x;
    }
    EscapeOptions long_run;
    long_run.horizon = 50.0;
    for (double x : {0.0, 0.5, 1.0})
        EXPECT_EQ(estimate_escape_time(logistic, x, long_run).status, EscapeStatus::SurvivedHorizon) << x;
}

TEST(EscapeEstimate, MonotoneInInitialState) {
    const FieldExpr sq = parse("x^2");
    for (double x : {0.3, 1.0, 2.5}) {
        const double near = estimate_escape_time(sq, x).m_hat.value();
        const double far = estimate_escape_time(sq, 2.0 * x).m_hat.value();
        EXPECT_LT(far, near);
    }
}

TEST(EscapeEstimate, Errors) {
    EXPECT_THROW(estimate_escape_time(parse("x^2"), -1.0), std::invalid_argument);
    EscapeOptions bad;
    bad.horizon = 0.0;
    EXPECT_THROW(estimate_escape_time(parse("x^2"), 1.0, bad), std::invalid_argument);
    // u' = ln(u) from 0.5 runs into u = 0 in finite time, where the field is undefined.
    EXPECT_THROW(estimate_escape_time(parse("ln(x)"), 0.5), std::runtime_error);
    EXPECT_THROW(estimate_escape_time(parse("1/x"), 0.0), DomainError);
}
