#pragma once

// Small arithmetic grammar for closed-form curve and profile input:
// operators + - * /, unary minus, parentheses, one free variable, and the
// functions sin cos sinh cosh tanh exp log sqrt abs pow(x,y). Expressions
// evaluate on Jet values, so derivatives to order 4 come out of the same
// tree that produced the value.

#include <memory>
#include <string>
#include <string_view>

#include "slantsurf/jet.hpp"

namespace slantsurf {

namespace detail {
struct ExprNode;
}

class Expr {
public:
    Expr() = default;

    // Throws Error(ParseError) with a "col N" location on bad input.
    static Expr parse(std::string_view text, std::string_view variable);

    bool valid() const { return root_ != nullptr; }
    Jet eval(const Jet& x) const;
    double operator()(double x) const { return eval(Jet::constant(x)).value(); }
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const detail::ExprNode> root_;
    std::string text_;
};

}  // namespace slantsurf
