#include "slantsurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "slantsurf/error.hpp"

namespace slantsurf {

namespace detail {

enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Call1, Call2 };

struct ExprNode {
    Op op;
    double number = 0.0;
    Jet (*fn1)(const Jet&) = nullptr;
    Jet (*fn2)(const Jet&, const Jet&) = nullptr;
    std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

Jet eval_node(const ExprNode& n, const Jet& x) {
    switch (n.op) {
        case Op::Num:   return Jet::constant(n.number);
        case Op::Var:   return x;
        case Op::Neg:   return -eval_node(*n.lhs, x);
        case Op::Add:   return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Op::Sub:   return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Op::Mul:   return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Op::Div:   return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
        case Op::Call1: return n.fn1(eval_node(*n.lhs, x));
        case Op::Call2: return n.fn2(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    }
    throw Error(Errc::InvalidArgument, "corrupt expression tree");
}

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_num(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Num;
    n->number = v;
    return n;
}

struct Parser {
    std::string_view text;
    std::string_view var;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Errc::ParseError,
                    "col " + std::to_string(pos + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) {
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Add;
                n->lhs = lhs;
                n->rhs = parse_term();
                lhs = n;
            } else if (eat('-')) {
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Sub;
                n->lhs = lhs;
                n->rhs = parse_term();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (eat('*')) {
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Mul;
                n->lhs = lhs;
                n->rhs = parse_factor();
                lhs = n;
            } else if (eat('/')) {
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Div;
                n->lhs = lhs;
                n->rhs = parse_factor();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (eat('-')) {
            auto n = std::make_shared<ExprNode>();
            n->op = Op::Neg;
            n->lhs = parse_factor();
            return n;
        }
        if (eat('+')) return parse_factor();
        return parse_primary();
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = text.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos += static_cast<std::size_t>(end - begin);
        return make_num(v);
    }

    NodePtr parse_ident() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        const std::string_view name = text.substr(start, pos - start);

        if (peek() == '(') return parse_call(name);

        if (name == var) {
            auto n = std::make_shared<ExprNode>();
            n->op = Op::Var;
            return n;
        }
        if (name == "pi") return make_num(3.14159265358979323846);
        if (name == "e") return make_num(2.71828182845904523536);
        pos = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }

    NodePtr parse_call(std::string_view name) {
        static const std::pair<std::string_view, Jet (*)(const Jet&)> unary[] = {
            {"sin", &slantsurf::sin},   {"cos", &slantsurf::cos},
            {"sinh", &slantsurf::sinh}, {"cosh", &slantsurf::cosh},
            {"tanh", &slantsurf::tanh}, {"exp", &slantsurf::exp},
            {"log", &slantsurf::log},   {"sqrt", &slantsurf::sqrt},
            {"abs", &slantsurf::abs},
        };
        if (!eat('(')) fail("expected '('");
        std::vector<NodePtr> args;
        if (peek() != ')') {
            args.push_back(parse_expr());
            while (eat(',')) args.push_back(parse_expr());
        }
        if (!eat(')')) fail("expected ')'");

        if (name == "pow") {
            if (args.size() != 2) fail("pow expects 2 arguments");
            auto n = std::make_shared<ExprNode>();
            n->op = Op::Call2;
            n->fn2 = &slantsurf::pow;
            n->lhs = args[0];
            n->rhs = args[1];
            return n;
        }
        for (const auto& [fname, fn] : unary) {
            if (name == fname) {
                if (args.size() != 1)
                    fail(std::string(name) + " expects 1 argument");
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Call1;
                n->fn1 = fn;
                n->lhs = args[0];
                return n;
            }
        }
        fail("unknown function '" + std::string(name) + "'");
    }
};

}  // namespace
}  // namespace detail

Expr Expr::parse(std::string_view text, std::string_view variable) {
    detail::Parser p{text, variable};
    Expr e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    e.text_ = std::string(text);
    return e;
}

Jet Expr::eval(const Jet& x) const {
    if (!root_) throw Error(Errc::InvalidArgument, "evaluating empty expression");
    return detail::eval_node(*root_, x);
}

}  // namespace slantsurf
