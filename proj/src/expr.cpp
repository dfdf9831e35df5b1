#include "liegen/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace liegen {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos };

struct FieldExpr::Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const FieldExpr::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    return std::make_shared<const FieldExpr::Node>(FieldExpr::Node{op, value, std::move(lhs), std::move(rhs)});
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size())
                throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = make_node(Op::Add, lhs, parse_product());
            else if (accept('-'))
                lhs = make_node(Op::Sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_node(Op::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make_node(Op::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_node(Op::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make_node(Op::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        };
        digits();
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            digits();
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < text_.size() && (text_[exp_end] == '+' || text_[exp_end] == '-')) ++exp_end;
            if (exp_end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp_end]))) {
                end = exp_end;
                digits();
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (ec != std::errc() || ptr != text_.data() + end || !std::isfinite(value))
            throw ParseError("malformed number", start);
        pos_ = end;
        return make_node(Op::Const, nullptr, nullptr, value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make_node(Op::Var);

        Op fn;
        if (name == "exp")
            fn = Op::Exp;
        else if (name == "ln")
            fn = Op::Ln;
        else if (name == "sin")
            fn = Op::Sin;
        else if (name == "cos")
            fn = Op::Cos;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        expect('(');
        NodePtr arg = parse_sum();
        expect(')');
        return make_node(fn, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double checked(double value, const char* what) {
    if (!std::isfinite(value)) throw DomainError(std::string("non-finite result in ") + what);
    return value;
}

double power(double base, double exponent) {
    double whole = 0.0;
    if (std::modf(exponent, &whole) == 0.0 && std::fabs(whole) <= 64.0) {
        const int count = static_cast<int>(std::fabs(whole));
        double acc = 1.0;
        if (count > 0) {
            acc = base;
            for (int i = 1; i < count; ++i) acc *= base;
        }
        if (whole < 0.0) {
            if (acc == 0.0) throw DomainError("zero raised to a negative power");
            acc = 1.0 / acc;
        }
        return checked(acc, "^");
    }
    if (base < 0.0) throw DomainError("negative base with non-integer exponent");
    if (base == 0.0 && exponent < 0.0) throw DomainError("zero raised to a negative power");
    return checked(std::pow(base, exponent), "^");
}

double eval_node(const FieldExpr::Node& node, double x) {
    switch (node.op) {
        case Op::Const:
            return node.value;
        case Op::Var:
            return x;
        case Op::Neg:
            return -eval_node(*node.lhs, x);
        case Op::Add:
            return checked(eval_node(*node.lhs, x) + eval_node(*node.rhs, x), "+");
        case Op::Sub:
            return checked(eval_node(*node.lhs, x) - eval_node(*node.rhs, x), "-");
        case Op::Mul:
            return checked(eval_node(*node.lhs, x) * eval_node(*node.rhs, x), "*");
        case Op::Div: {
            const double num = eval_node(*node.lhs, x);
            const double den = eval_node(*node.rhs, x);
            if (den == 0.0) throw DomainError("division by zero");
            return checked(num / den, "/");
        }
        case Op::Pow:
            return power(eval_node(*node.lhs, x), eval_node(*node.rhs, x));
        case Op::Exp:
            return checked(std::exp(eval_node(*node.lhs, x)), "exp");
        case Op::Ln: {
            const double arg = eval_node(*node.lhs, x);
            if (arg <= 0.0) throw DomainError("ln of non-positive argument");
            return checked(std::log(arg), "ln");
        }
        case Op::Sin:
            return checked(std::sin(eval_node(*node.lhs, x)), "sin");
        case Op::Cos:
            return checked(std::cos(eval_node(*node.lhs, x)), "cos");
    }
    throw DomainError("corrupt expression tree");
}

void print_node(const FieldExpr::Node& node, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print_node(*node.lhs, out);
        out += op;
        print_node(*node.rhs, out);
        out += ')';
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        print_node(*node.lhs, out);
        out += ')';
    };
    switch (node.op) {
        case Op::Const: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", node.value);
            out += buf;
            return;
        }
        case Op::Var: out += 'x'; return;
        case Op::Neg:
            out += "(-";
            print_node(*node.lhs, out);
            out += ')';
            return;
        case Op::Add: binary(" + "); return;
        case Op::Sub: binary(" - "); return;
        case Op::Mul: binary(" * "); return;
        case Op::Div: binary(" / "); return;
        case Op::Pow: binary(" ^ "); return;
        case Op::Exp: call("exp"); return;
        case Op::Ln: call("ln"); return;
        case Op::Sin: call("sin"); return;
        case Op::Cos: call("cos"); return;
    }
}

}  // namespace

FieldExpr::FieldExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

FieldExpr FieldExpr::parse(std::string_view text) { return FieldExpr(Parser(text).parse_all()); }

double FieldExpr::eval(double x) const {
    if (!std::isfinite(x)) throw DomainError("evaluation at a non-finite point");
    return eval_node(*root_, x);
}

std::string FieldExpr::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

}  // namespace liegen
