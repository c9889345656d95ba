#ifndef DGWB_EXPR_PARSER_HPP
#define DGWB_EXPR_PARSER_HPP

#include <cctype>
#include <cstdint>
#include <string>

#include "dgwb/numeric.hpp"

namespace dgwb {

/// Shared recursive-descent core for the expression grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := number | name | '(' expr ')'
/// Numbers are integers or rationals a/b; juxtaposition is not multiplication.
/// Ops<V> supplies: V from_rational(Rational), V lookup(name, line, col),
/// V add(V,V), V sub(V,V), V neg(V), V mul(V,V), V pow(V, unsigned, line, col).
template <typename Ops>
class ExprParser {
public:
    using Value = typename Ops::Value;

    ExprParser(std::string text, Ops ops) : text_(std::move(text)), ops_(std::move(ops)) {}

    Value parse() {
        skip_ws();
        Value v = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line_, col_); }

    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    Value expr() {
        skip_ws();
        bool negate = false;
        while (eat('-')) negate = !negate;
        Value v = term();
        if (negate) v = ops_.neg(std::move(v));
        for (;;) {
            skip_ws();
            if (eat('+')) {
                v = ops_.add(std::move(v), term());
            } else if (eat('-')) {
                v = ops_.sub(std::move(v), term());
            } else {
                return v;
            }
        }
    }

    Value term() {
        Value v = factor();
        while (eat('*')) v = ops_.mul(std::move(v), factor());
        return v;
    }

    Value factor() {
        Value v = atom();
        skip_ws();
        if (eat('^')) {
            int l = line_, c = col_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a nonnegative integer");
            unsigned long e = std::stoul(integer_text());
            v = ops_.pow(std::move(v), static_cast<unsigned>(e), l, c);
        }
        return v;
    }

    std::string integer_text() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        return digits;
    }

    Value atom() {
        skip_ws();
        int l = line_, c = col_;
        char ch = peek();
        if (ch == '(') {
            advance();
            Value v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num = integer_text();
            if (peek() == '/') {
                advance();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator digits");
                num += "/" + integer_text();
            }
            return ops_.from_rational(parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                name += peek();
                advance();
            }
            return ops_.lookup(name, l, c);
        }
        if (ch == '\0') fail("unexpected end of expression");
        fail(std::string("unexpected character '") + ch + "'");
    }

    std::string text_;
    Ops ops_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace dgwb

#endif
