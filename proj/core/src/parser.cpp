#include "frobop/parser.hpp"

#include <cctype>

#include "frobop/diffop.hpp"

namespace frobop {
namespace {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) { advance(); }

    const Token& peek() const { return tok_; }

    // one token past peek(); the lexer state is value-copied, not advanced
    Token peek_second() const {
        Lexer copy = *this;
        copy.advance();
        return copy.tok_;
    }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= input_.size()) {
            tok_ = {Tok::end, {}, start};
            return;
        }
        char c = input_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < input_.size() && std::isdigit(static_cast<unsigned char>(input_[pos_])))
                ++pos_;
            tok_ = {Tok::number, input_.substr(start, pos_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < input_.size() &&
                   (std::isalnum(static_cast<unsigned char>(input_[pos_])) || input_[pos_] == '_'))
                ++pos_;
            tok_ = {Tok::ident, input_.substr(start, pos_ - start), start};
            return;
        }
        ++pos_;
        Tok kind;
        switch (c) {
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '[': kind = Tok::lbracket; break;
        case ']': kind = Tok::rbracket; break;
        case ',': kind = Tok::comma; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        tok_ = {kind, input_.substr(start, 1), start};
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    Token tok_{Tok::end, {}, 0};
};

std::uint64_t parse_nat(const Token& t, std::uint64_t bound, const char* what) {
    std::uint64_t v = 0;
    for (char c : t.text) {
        auto digit = static_cast<std::uint64_t>(c - '0');
        if (v > (bound - digit) / 10)
            throw ParseError(std::string(what) + " too large", t.pos);
        v = v * 10 + digit;
    }
    return v;
}

Poly poly_expr(Lexer& lex, const ContextPtr& ctx);

Poly poly_base(Lexer& lex, const ContextPtr& ctx) {
    Token t = lex.next();
    switch (t.kind) {
    case Tok::number: {
        // reduce digit by digit so arbitrarily long literals stay exact
        FieldScalar v = 0;
        const auto& field = ctx->field();
        for (char c : t.text)
            v = field.add(field.mul(v, 10), field.reduce(static_cast<std::uint64_t>(c - '0')));
        return Poly::constant(ctx, v);
    }
    case Tok::ident: {
        auto idx = ctx->var_index(t.text);
        if (!idx)
            throw ParseError("unknown variable '" + std::string(t.text) + "'", t.pos);
        return Poly::variable(ctx, *idx);
    }
    case Tok::lparen: {
        Poly inner = poly_expr(lex, ctx);
        Token close = lex.next();
        if (close.kind != Tok::rparen)
            throw ParseError("expected ')'", close.pos);
        return inner;
    }
    case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
    default:
        throw ParseError("unexpected token '" + std::string(t.text) + "'", t.pos);
    }
}

Poly poly_factor(Lexer& lex, const ContextPtr& ctx) {
    Poly b = poly_base(lex, ctx);
    if (lex.peek().kind == Tok::caret) {
        lex.next();
        Token e = lex.next();
        if (e.kind != Tok::number)
            throw ParseError("expected exponent after '^'", e.pos);
        return poly_pow(b, parse_nat(e, max_exponent, "exponent"));
    }
    return b;
}

Poly poly_term(Lexer& lex, const ContextPtr& ctx) {
    Poly acc = poly_factor(lex, ctx);
    for (;;) {
        Tok k = lex.peek().kind;
        if (k == Tok::star) {
            lex.next();
            acc = acc * poly_factor(lex, ctx);
        } else if (k == Tok::ident || k == Tok::lparen) {
            // juxtaposition: allowed before a variable or '('
            acc = acc * poly_factor(lex, ctx);
        } else {
            break;
        }
    }
    return acc;
}

Poly poly_expr(Lexer& lex, const ContextPtr& ctx) {
    bool negate = false;
    if (lex.peek().kind == Tok::minus) {
        lex.next();
        negate = true;
    }
    Poly acc = poly_term(lex, ctx);
    if (negate)
        acc = -acc;
    while (lex.peek().kind == Tok::plus || lex.peek().kind == Tok::minus) {
        bool minus = lex.next().kind == Tok::minus;
        Poly t = poly_term(lex, ctx);
        acc = minus ? acc - t : acc + t;
    }
    return acc;
}

void expect_end(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.kind != Tok::end)
        throw ParseError("trailing input '" + std::string(t.text) + "'", t.pos);
}

} // namespace

Poly parse_poly(std::string_view text, const ContextPtr& ctx) {
    Lexer lex(text);
    Poly f = poly_expr(lex, ctx);
    expect_end(lex);
    return f;
}

namespace {

// Operator texts reuse the polynomial grammar for coefficients and add the
// atom D[b1,...,bd], which closes its term.  'D' is an atom head only when
// '[' follows, so a context variable named D still parses.
class OperatorParser {
public:
    OperatorParser(std::string_view text, const ContextPtr& ctx) : lex_(text), ctx_(ctx) {}

    DiffOperator run_normal_form() {
        DiffOperator op = sum();
        expect_end(lex_);
        return op;
    }

    OperatorExpr run_expr() {
        OperatorExpr e = expr();
        expect_end(lex_);
        return e;
    }

private:
    bool head_is(std::string_view keyword) const {
        return lex_.peek().kind == Tok::ident && lex_.peek().text == keyword &&
               lex_.peek_second().kind == Tok::lparen;
    }

    OperatorExpr expr() {
        if (head_is("twist")) {
            lex_.next();
            expect(Tok::lparen, "expected '(' after twist");
            OperatorExpr inner = expr();
            expect(Tok::rparen, "expected ')'");
            return OperatorExpr::twist(std::move(inner));
        }
        if (head_is("compose")) {
            lex_.next();
            expect(Tok::lparen, "expected '(' after compose");
            OperatorExpr outer = expr();
            expect(Tok::comma, "expected ',' between compose arguments");
            OperatorExpr inner = expr();
            expect(Tok::rparen, "expected ')'");
            return OperatorExpr::compose(std::move(outer), std::move(inner));
        }
        return OperatorExpr::leaf(sum());
    }

    DiffOperator sum() {
        std::map<ExpVec, Poly> acc;
        bool negate = false;
        if (lex_.peek().kind == Tok::minus) {
            lex_.next();
            negate = true;
        }
        add_term(acc, negate);
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            bool minus = lex_.next().kind == Tok::minus;
            add_term(acc, minus);
        }
        return DiffOperator::make(ctx_, std::move(acc));
    }

    bool at_datom() const {
        return lex_.peek().kind == Tok::ident && lex_.peek().text == "D" &&
               lex_.peek_second().kind == Tok::lbracket;
    }

    void add_term(std::map<ExpVec, Poly>& acc, bool negate) {
        Poly coeff = Poly::constant(ctx_, 1);
        std::optional<ExpVec> b;
        if (at_datom()) {
            b = datom();
        } else {
            coeff = poly_factor(lex_, ctx_);
            for (;;) {
                if (at_datom()) {
                    b = datom();
                    break;
                }
                Tok k = lex_.peek().kind;
                if (k == Tok::star) {
                    lex_.next();
                    if (at_datom()) {
                        b = datom();
                        break;
                    }
                    coeff = coeff * poly_factor(lex_, ctx_);
                } else if (k == Tok::ident || k == Tok::lparen) {
                    coeff = coeff * poly_factor(lex_, ctx_);
                } else {
                    break;
                }
            }
        }
        if (negate)
            coeff = -coeff;
        if (coeff.is_zero())
            return;
        ExpVec key = b ? std::move(*b) : ExpVec(ctx_->nvars(), 0);
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(std::move(key), std::move(coeff));
        } else {
            it->second = it->second + coeff;
            if (it->second.is_zero())
                acc.erase(it);
        }
    }

    ExpVec datom() {
        lex_.next(); // 'D'
        expect(Tok::lbracket, "expected '[' after D");
        ExpVec b;
        for (;;) {
            Token t = lex_.next();
            if (t.kind != Tok::number)
                throw ParseError("expected order in D[...]", t.pos);
            b.push_back(static_cast<std::uint32_t>(parse_nat(t, max_exponent, "order")));
            Token sep = lex_.next();
            if (sep.kind == Tok::comma)
                continue;
            if (sep.kind == Tok::rbracket)
                break;
            throw ParseError("expected ',' or ']' in D[...]", sep.pos);
        }
        if (b.size() != ctx_->nvars())
            throw ParseError("D[...] needs one order per variable", lex_.peek().pos);
        return b;
    }

    void expect(Tok kind, const char* msg) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw ParseError(msg, t.pos);
    }

    Lexer lex_;
    ContextPtr ctx_;
};

} // namespace

DiffOperator parse_operator(std::string_view text, const ContextPtr& ctx) {
    return OperatorParser(text, ctx).run_normal_form();
}

OperatorExpr parse_operator_expr(std::string_view text, const ContextPtr& ctx) {
    return OperatorParser(text, ctx).run_expr();
}

} // namespace frobop
