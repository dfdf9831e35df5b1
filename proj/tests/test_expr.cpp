#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liegen/expr.hpp"

using liegen::DomainError;
using liegen::FieldExpr;
using liegen::ParseError;
using liegen::eval;
using liegen::parse;

TEST(ExprParse, ExampleFieldsEvaluate) {
    EXPECT_EQ(eval(parse("x^2"), 3.0), 9.0);
    EXPECT_EQ(eval(parse("x*(x-1)"), 2.0), 2.0);
    EXPECT_EQ(eval(parse("-x^2"), 3.0), -9.0);

    EXPECT_EQ(eval(parse("x^2"), 0.0), 0.0);
    EXPECT_EQ(eval(parse("x*(x-1)"), 1.0), 0.0);
    EXPECT_EQ(eval(parse("-x^2"), 2.0), -4.0);
}

TEST(ExprParse, CanonicalForm) {
    EXPECT_EQ(parse("x^2").to_string(), "(x ^ 2)");
    EXPECT_EQ(parse("-x^2").to_string(), "(-(x ^ 2))");
    EXPECT_EQ(parse("1-2-3").to_string(), "((1 - 2) - 3)");
    EXPECT_EQ(parse("2^3^2").to_string(), "(2 ^ (3 ^ 2))");
}

TEST(ExprParse, PrecedenceAndAssociativity) {
    EXPECT_EQ(eval(parse("1-2-3"), 0.0), -4.0);
    EXPECT_EQ(eval(parse("8/4/2"), 0.0), 1.0);
    EXPECT_EQ(eval(parse("2^3^2"), 0.0), 512.0);
    EXPECT_EQ(eval(parse("2^-1"), 0.0), 0.5);
    EXPECT_EQ(eval(parse("-2^2"), 0.0), -4.0);
    EXPECT_EQ(eval(parse("(-2)^2"), 0.0), 4.0);
    EXPECT_EQ(eval(parse("3*-x"), 2.0), -6.0);
    EXPECT_EQ(eval(parse("--x"), 2.0), 2.0);
    EXPECT_EQ(eval(parse(" 1.5e1 + x "), 1.0), 16.0);
}

TEST(ExprParse, Functions) {
    EXPECT_EQ(eval(parse("exp(x)"), 1.0), std::exp(1.0));
    EXPECT_EQ(eval(parse("ln(x)"), 2.0), std::log(2.0));
    EXPECT_EQ(eval(parse("sin(x)+cos(x)"), 0.5), std::sin(0.5) + std::cos(0.5));
}

TEST(ExprParse, SyntaxErrorsCarryOffsets) {
    try {
        parse("x*(x");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos);
    }
    try {
        parse("x + y");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("unknown identifier 'y'"), std::string::npos);
    }
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("   "), ParseError);
    EXPECT_THROW(parse("x x"), ParseError);
    EXPECT_THROW(parse("2 +"), ParseError);
    EXPECT_THROW(parse("sqrt(x)"), ParseError);
    EXPECT_THROW(parse("exp x"), ParseError);
    EXPECT_THROW(parse("1e999"), ParseError);
    EXPECT_THROW(parse(")"), ParseError);
}

TEST(ExprEval, DomainErrors) {
    EXPECT_THROW(eval(parse("ln(x)"), 0.0), DomainError);
    EXPECT_THROW(eval(parse("ln(x)"), -1.0), DomainError);
    EXPECT_THROW(eval(parse("1/x"), 0.0), DomainError);
    EXPECT_THROW(eval(parse("x^0.5"), -4.0), DomainError);
    EXPECT_THROW(eval(parse("x^-1"), 0.0), DomainError);
    EXPECT_THROW(eval(parse("exp(x)"), 1000.0), DomainError);
    EXPECT_THROW(eval(parse("x*x"), 1e200), DomainError);
    EXPECT_THROW(eval(parse("x"), std::nan("")), DomainError);
}

TEST(ExprEval, NegativeBaseIntegerExponent) {
    EXPECT_EQ(eval(parse("x^3"), -2.0), -8.0);
    EXPECT_EQ(eval(parse("x^-2"), -2.0), 0.25);
    EXPECT_EQ(eval(parse("x^0"), -2.0), 1.0);
    EXPECT_EQ(eval(parse("x^0.5"), 4.0), 2.0);
}

TEST(ExprProperty, SumOfProductPrecedence) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        const double a = dist(rng), b = dist(rng), c = dist(rng);
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.17g+%.17g*%.17g", std::fabs(a), std::fabs(b), std::fabs(c));
        EXPECT_EQ(eval(parse(buf), 0.0), std::fabs(a) + (std::fabs(b) * std::fabs(c))) << buf;
    }
}

TEST(ExprProperty, PrintParseRoundTrip) {
    const char* sources[] = {"x^2",        "x*(x-1)",          "-x^2",           "x^3 - 2*x + 0.1",
                             "exp(-x)/(1+x^2)", "sin(x)*cos(2*x) - ln(1+x)", "2^-x", "x^1.5 - -x/3"};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (const char* src : sources) {
        const FieldExpr original = parse(src);
        const FieldExpr reparsed = parse(original.to_string());
        EXPECT_EQ(reparsed.to_string(), original.to_string());
        for (int i = 0; i < 100; ++i) {
            const double x = dist(rng);
            EXPECT_EQ(reparsed(x), original(x)) << src << " at " << x;
        }
    }
}

TEST(ExprProperty, ExampleFieldsMatchClosures) {
    const FieldExpr sq = parse("x^2");
    const FieldExpr logistic = parse("x*(x-1)");
    const FieldExpr negsq = parse("-x^2");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        EXPECT_EQ(sq(x), x * x);
        EXPECT_EQ(logistic(x), x * (x - 1.0));
        EXPECT_EQ(negsq(x), -(x * x));
    }
}
