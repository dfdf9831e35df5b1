#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liegen {

/// Raised by parse() for malformed text or unknown identifiers. offset() is
/// the byte position in the input where the problem was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Raised by evaluation when the expression is undefined at the requested
/// point or would produce a non-finite value.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parsed scalar expression in the single variable x.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | 'x' | func '(' sum ')' | '(' sum ')'
///   func    := exp | ln | sin | cos
///
/// Immutable after construction; copies share the tree.
class FieldExpr {
public:
    struct Node;

    static FieldExpr parse(std::string_view text);

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    /// Fully parenthesized canonical form; parses back to an equivalent tree.
    std::string to_string() const;

private:
    explicit FieldExpr(std::shared_ptr<const Node> root);
    std::shared_ptr<const Node> root_;
};

inline FieldExpr parse(std::string_view text) { return FieldExpr::parse(text); }
inline double eval(const FieldExpr& f, double x) { return f.eval(x); }

}  // namespace liegen
