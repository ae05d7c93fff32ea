#ifndef FRACVEL_PARSE_HPP
#define FRACVEL_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fracvel/errors.hpp"
#include "fracvel/expr.hpp"

namespace fracvel {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;  // byte offset into the source
};

namespace detail {

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {TokenKind::End, "", start};

        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {TokenKind::Plus, "+", start};
            case '-': ++pos_; return {TokenKind::Minus, "-", start};
            case '*': ++pos_; return {TokenKind::Star, "*", start};
            case '/': ++pos_; return {TokenKind::Slash, "/", start};
            case '^': ++pos_; return {TokenKind::Caret, "^", start};
            case '(': ++pos_; return {TokenKind::LParen, "(", start};
            case ')': ++pos_; return {TokenKind::RParen, ")", start};
            case ',': ++pos_; return {TokenKind::Comma, ",", start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            return {TokenKind::Ident, std::string(src_.substr(start, pos_ - start)), start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

  private:
    Token lex_number(std::size_t start) {
        bool seen_digit = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, seen_digit = true;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_, seen_digit = true;
        }
        if (!seen_digit) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                pos_ = mark;  // 'e' belongs to a following identifier, not this number
            } else {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        return {TokenKind::Number, std::string(src_.substr(start, pos_ - start)), start};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src), current_(lexer_.next()) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        if (current_.kind != TokenKind::End) throw ParseError("unexpected trailing input", current_.position);
        return e;
    }

  private:
    void advance() { current_ = lexer_.next(); }

    bool accept(TokenKind k) {
        if (current_.kind != k) return false;
        advance();
        return true;
    }

    void expect(TokenKind k, const std::string& what) {
        if (current_.kind != k) throw ParseError("expected " + what, current_.position);
        advance();
    }

    ExprPtr parse_expr() {
        ExprPtr node = parse_term();
        while (true) {
            if (accept(TokenKind::Plus))
                node = Expr::add(node, parse_term());
            else if (accept(TokenKind::Minus))
                node = Expr::sub(node, parse_term());
            else
                return node;
        }
    }

    ExprPtr parse_term() {
        ExprPtr node = parse_factor();
        while (true) {
            if (accept(TokenKind::Star))
                node = Expr::mul(node, parse_factor());
            else if (accept(TokenKind::Slash))
                node = Expr::div(node, parse_factor());
            else
                return node;
        }
    }

    // Unary minus binds looser than '^': "-x^2" parses as -(x^2).
    ExprPtr parse_factor() {
        if (accept(TokenKind::Minus)) {
            ExprPtr operand = parse_factor();
            if (operand->kind == ExprKind::Const) return Expr::constant(-operand->value);
            return Expr::neg(operand);
        }
        ExprPtr node = parse_primary();
        if (accept(TokenKind::Caret)) {
            const std::size_t expo_pos = current_.position;
            ExprPtr rhs = parse_factor();
            node = Expr::pow(node, fold_constant(rhs, expo_pos, "non-constant exponent"));
        }
        return node;
    }

    ExprPtr parse_primary() {
        if (current_.kind == TokenKind::Number) {
            const Token tok = current_;
            advance();
            try {
                return Expr::constant(Scalar{std::stod(tok.lexeme)});
            } catch (const std::exception&) {
                throw ParseError("number out of range", tok.position);
            }
        }
        if (current_.kind == TokenKind::Ident) {
            const Token tok = current_;
            advance();
            if (tok.lexeme == "x") return Expr::var();
            return parse_call(tok);
        }
        if (accept(TokenKind::LParen)) {
            ExprPtr e = parse_expr();
            expect(TokenKind::RParen, "')'");
            return e;
        }
        throw ParseError("expected a number, 'x', a function call, or '('", current_.position);
    }

    ExprPtr parse_call(const Token& name) {
        expect(TokenKind::LParen, "'(' after function name '" + name.lexeme + "'");
        std::vector<ExprPtr> args;
        std::vector<std::size_t> arg_pos;
        if (current_.kind != TokenKind::RParen) {
            do {
                arg_pos.push_back(current_.position);
                args.push_back(parse_expr());
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RParen, "')'");

        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                throw ParseError(name.lexeme + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") +
                                     ", got " + std::to_string(args.size()),
                                 name.position);
        };

        if (name.lexeme == "sqrt") { arity(1); return Expr::sqrt(args[0]); }
        if (name.lexeme == "cbrt") { arity(1); return Expr::cbrt(args[0]); }
        if (name.lexeme == "abs") { arity(1); return Expr::abs(args[0]); }
        if (name.lexeme == "sin") { arity(1); return Expr::sin(args[0]); }
        if (name.lexeme == "cos") { arity(1); return Expr::cos(args[0]); }
        if (name.lexeme == "pow") {
            arity(2);
            return Expr::pow(args[0], fold_constant(args[1], arg_pos[1], "non-constant exponent"));
        }
        if (name.lexeme == "cusp") {
            arity(2);
            const double alpha = fold_constant(args[0], arg_pos[0], "non-constant argument");
            const double center = fold_constant(args[1], arg_pos[1], "non-constant argument");
            try {
                return make_cusp(alpha, center);
            } catch (const ParameterError& e) {
                throw ParseError(e.what(), arg_pos[0]);
            }
        }
        if (name.lexeme == "weierstrass") {
            arity(3);
            const double a = fold_constant(args[0], arg_pos[0], "non-constant argument");
            const double b = fold_constant(args[1], arg_pos[1], "non-constant argument");
            const double n = fold_constant(args[2], arg_pos[2], "non-constant argument");
            if (n != static_cast<double>(static_cast<int>(n)) || n < 1)
                throw ParseError("weierstrass term count must be a positive integer", arg_pos[2]);
            try {
                return Expr::weierstrass(a, b, static_cast<int>(n));
            } catch (const ParameterError& e) {
                throw ParseError(e.what(), arg_pos[0]);
            }
        }
        throw ParseError("unknown function '" + name.lexeme + "'", name.position);
    }

    static bool contains_var(const ExprPtr& e) {
        if (e->kind == ExprKind::Var) return true;
        if (e->lhs && contains_var(e->lhs)) return true;
        return e->rhs && contains_var(e->rhs);
    }

    static double fold_constant(const ExprPtr& e, std::size_t pos, const std::string& what) {
        if (contains_var(e)) throw ParseError(what, pos);
        try {
            const Scalar v = eval(e, Scalar{0.0});
            if (!v.is_real()) throw ParseError(what + " (complex value)", pos);
            return v.re;
        } catch (const ParseError&) {
            throw;
        } catch (const Error& err) {
            throw ParseError(std::string(err.what()), pos);
        }
    }

    Lexer lexer_;
    Token current_;
};

}  // namespace detail

/// Parses the expression mini-language into a tree.
///
/// Grammar:  expr   := term (('+'|'-') term)*
///           term   := factor (('*'|'/') factor)*
///           factor := '-' factor | primary ('^' factor)?   ('^' needs a constant exponent)
///           primary:= number | 'x' | func '(' args ')' | '(' expr ')'
/// with funcs sqrt, cbrt, abs, sin, cos, pow(e, c), cusp(alpha, center),
/// weierstrass(a, b, n). Throws ParseError with a byte position otherwise.
inline ExprPtr parse(std::string_view src) {
    if (src.empty()) throw ParseError("empty expression", 0);
    return detail::Parser(src).parse();
}

}  // namespace fracvel

#endif  // FRACVEL_PARSE_HPP
