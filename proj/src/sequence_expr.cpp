#include "rkdyn/sequence_expr.hpp"

#include "rkdyn/errors.hpp"

#include <array>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace rkdyn {

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokKind kind;
    double number = 0.0;
    std::string ident;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& current() const noexcept { return tok_; }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = TokKind::End;
            return;
        }
        char c = text_[pos_];
        switch (c) {
        case '+': tok_.kind = TokKind::Plus; ++pos_; return;
        case '-': tok_.kind = TokKind::Minus; ++pos_; return;
        case '*': tok_.kind = TokKind::Star; ++pos_; return;
        case '/': tok_.kind = TokKind::Slash; ++pos_; return;
        case '^': tok_.kind = TokKind::Caret; ++pos_; return;
        case '(': tok_.kind = TokKind::LParen; ++pos_; return;
        case ')': tok_.kind = TokKind::RParen; ++pos_; return;
        case ',': tok_.kind = TokKind::Comma; ++pos_; return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lexNumber();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            tok_.kind = TokKind::Ident;
            tok_.ident = text_.substr(start, pos_ - start);
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

private:
    void lexNumber() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("digit expected after decimal point", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                pos_ = mark; // 'e' belongs to a following identifier, not this number
            } else {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        const std::string slice = text_.substr(start, pos_ - start);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(slice.data(), slice.data() + slice.size(), value);
        if (ec != std::errc() || ptr != slice.data() + slice.size())
            throw ParseError("malformed number literal", start);
        tok_.kind = TokKind::Number;
        tok_.number = value;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token tok_;
};

struct FuncInfo {
    const char* name;
    FuncId id;
    std::size_t arity;
};

constexpr std::array<FuncInfo, 4> kFunctions = {{
    {"sqrt", FuncId::Sqrt, 1},
    {"exp", FuncId::Exp, 1},
    {"ln", FuncId::Ln, 1},
    {"pow", FuncId::Pow, 2},
}};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = parseExpression();
        if (lex_.current().kind != TokKind::End)
            throw ParseError("unexpected trailing input", lex_.current().offset);
        return e;
    }

private:
    ExprPtr parseExpression() {
        ExprPtr lhs = parseTerm();
        while (lex_.current().kind == TokKind::Plus || lex_.current().kind == TokKind::Minus) {
            BinaryOp op = lex_.current().kind == TokKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lex_.advance();
            ExprPtr rhs = parseTerm();
            lhs = std::make_shared<ExprNode>(ExprNode{Binary{op, lhs, rhs}});
        }
        return lhs;
    }

    ExprPtr parseTerm() {
        ExprPtr lhs = parseUnary();
        while (lex_.current().kind == TokKind::Star || lex_.current().kind == TokKind::Slash) {
            BinaryOp op = lex_.current().kind == TokKind::Star ? BinaryOp::Mul : BinaryOp::Div;
            lex_.advance();
            ExprPtr rhs = parseUnary();
            lhs = std::make_shared<ExprNode>(ExprNode{Binary{op, lhs, rhs}});
        }
        return lhs;
    }

    ExprPtr parseUnary() {
        if (lex_.current().kind == TokKind::Minus) {
            lex_.advance();
            return std::make_shared<ExprNode>(ExprNode{Negate{parseUnary()}});
        }
        return parsePower();
    }

    ExprPtr parsePower() {
        ExprPtr base = parsePrimary();
        if (lex_.current().kind == TokKind::Caret) {
            std::size_t caret = lex_.current().offset;
            lex_.advance();
            if (lex_.current().kind == TokKind::Minus)
                throw ParseError("exponent starting with unary minus must be parenthesized, "
                                 "e.g. 2^(-n)",
                                 caret + 1);
            ExprPtr exponent = parsePower(); // right associative
            return std::make_shared<ExprNode>(ExprNode{Binary{BinaryOp::Pow, base, exponent}});
        }
        return base;
    }

    ExprPtr parsePrimary() {
        const Token& tok = lex_.current();
        switch (tok.kind) {
        case TokKind::Number: {
            double v = tok.number;
            lex_.advance();
            return std::make_shared<ExprNode>(ExprNode{Literal{v}});
        }
        case TokKind::Ident: {
            std::string name = tok.ident;
            std::size_t at = tok.offset;
            lex_.advance();
            if (name == "n")
                return std::make_shared<ExprNode>(ExprNode{VarN{}});
            for (const FuncInfo& f : kFunctions) {
                if (name == f.name)
                    return parseCall(f, at);
            }
            throw ParseError("unknown identifier '" + name + "'", at);
        }
        case TokKind::LParen: {
            lex_.advance();
            ExprPtr inner = parseExpression();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        default:
            throw ParseError("expected number, 'n', function call, or '('", tok.offset);
        }
    }

    ExprPtr parseCall(const FuncInfo& f, std::size_t at) {
        expect(TokKind::LParen, "'(' after function name");
        std::vector<ExprPtr> args;
        args.push_back(parseExpression());
        while (lex_.current().kind == TokKind::Comma) {
            lex_.advance();
            args.push_back(parseExpression());
        }
        expect(TokKind::RParen, "')'");
        if (args.size() != f.arity)
            throw ParseError(std::string(f.name) + " expects " + std::to_string(f.arity) +
                                 " argument(s), got " + std::to_string(args.size()),
                             at);
        return std::make_shared<ExprNode>(ExprNode{Call{f.id, std::move(args)}});
    }

    void expect(TokKind kind, const char* what) {
        if (lex_.current().kind != kind)
            throw ParseError(std::string("expected ") + what, lex_.current().offset);
        lex_.advance();
    }

    Lexer lex_;
};

double evalNode(const ExprNode& node, std::size_t n); // forward

double checkedFinite(double v, const char* what) {
    if (!std::isfinite(v))
        throw EvalError(std::string(what) + " produced a non-finite value");
    return v;
}

double evalPow(double base, double exponent) {
    double v = std::pow(base, exponent);
    if (std::isnan(v))
        throw EvalError("pow domain error: negative base with non-integer exponent");
    return checkedFinite(v, "pow");
}

double evalCall(const Call& call, std::size_t n) {
    switch (call.func) {
    case FuncId::Sqrt: {
        double x = evalNode(*call.args[0], n);
        if (x < 0.0)
            throw EvalError("sqrt of a negative value");
        return std::sqrt(x);
    }
    case FuncId::Exp:
        return checkedFinite(std::exp(evalNode(*call.args[0], n)), "exp");
    case FuncId::Ln: {
        double x = evalNode(*call.args[0], n);
        if (x <= 0.0)
            throw EvalError("ln of a non-positive value");
        return std::log(x);
    }
    case FuncId::Pow:
        return evalPow(evalNode(*call.args[0], n), evalNode(*call.args[1], n));
    }
    throw EvalError("unreachable function id");
}

double evalNode(const ExprNode& node, std::size_t n) {
    if (const auto* lit = std::get_if<Literal>(&node.node))
        return lit->value;
    if (std::get_if<VarN>(&node.node))
        return static_cast<double>(n);
    if (const auto* neg = std::get_if<Negate>(&node.node))
        return -evalNode(*neg->operand, n);
    if (const auto* bin = std::get_if<Binary>(&node.node)) {
        double a = evalNode(*bin->lhs, n);
        if (bin->op == BinaryOp::Pow)
            return evalPow(a, evalNode(*bin->rhs, n));
        double b = evalNode(*bin->rhs, n);
        switch (bin->op) {
        case BinaryOp::Add: return checkedFinite(a + b, "+");
        case BinaryOp::Sub: return checkedFinite(a - b, "-");
        case BinaryOp::Mul: return checkedFinite(a * b, "*");
        case BinaryOp::Div:
            if (b == 0.0)
                throw EvalError("division by zero");
            return checkedFinite(a / b, "/");
        default: break;
        }
    }
    return evalCall(std::get<Call>(node.node), n);
}

// Printing: levels mirror the grammar so the output reparses to the same tree.
// 1 = expression, 2 = term, 3 = unary, 4 = power, 5 = primary.
int nodeLevel(const ExprNode& node) {
    if (const auto* bin = std::get_if<Binary>(&node.node)) {
        switch (bin->op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
        }
    }
    if (std::get_if<Negate>(&node.node))
        return 3;
    return 5;
}

void printNumber(std::string& out, double v) {
    assert(v >= 0.0 && "parsed literals are non-negative");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    assert(ec == std::errc());
    out.append(buf, ptr);
}

void printNode(std::string& out, const ExprNode& node, int minLevel) {
    const bool needParens = nodeLevel(node) < minLevel;
    if (needParens)
        out.push_back('(');
    if (const auto* lit = std::get_if<Literal>(&node.node)) {
        printNumber(out, lit->value);
    } else if (std::get_if<VarN>(&node.node)) {
        out.push_back('n');
    } else if (const auto* neg = std::get_if<Negate>(&node.node)) {
        out.push_back('-');
        printNode(out, *neg->operand, 3);
    } else if (const auto* bin = std::get_if<Binary>(&node.node)) {
        switch (bin->op) {
        case BinaryOp::Add:
            printNode(out, *bin->lhs, 1);
            out.push_back('+');
            printNode(out, *bin->rhs, 2);
            break;
        case BinaryOp::Sub:
            printNode(out, *bin->lhs, 1);
            out.push_back('-');
            printNode(out, *bin->rhs, 2);
            break;
        case BinaryOp::Mul:
            printNode(out, *bin->lhs, 2);
            out.push_back('*');
            printNode(out, *bin->rhs, 3);
            break;
        case BinaryOp::Div:
            printNode(out, *bin->lhs, 2);
            out.push_back('/');
            printNode(out, *bin->rhs, 3);
            break;
        case BinaryOp::Pow:
            printNode(out, *bin->lhs, 5);
            out.push_back('^');
            printNode(out, *bin->rhs, 4); // unary minus sits below level 4, so it gets parens
            break;
        }
    } else {
        const auto& call = std::get<Call>(node.node);
        for (const FuncInfo& f : kFunctions) {
            if (f.id == call.func) {
                out.append(f.name);
                break;
            }
        }
        out.push_back('(');
        for (std::size_t i = 0; i < call.args.size(); ++i) {
            if (i > 0)
                out.push_back(',');
            printNode(out, *call.args[i], 1);
        }
        out.push_back(')');
    }
    if (needParens)
        out.push_back(')');
}

bool nodesEqual(const ExprNode& a, const ExprNode& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* la = std::get_if<Literal>(&a.node))
        return la->value == std::get<Literal>(b.node).value;
    if (std::get_if<VarN>(&a.node))
        return true;
    if (const auto* na = std::get_if<Negate>(&a.node))
        return nodesEqual(*na->operand, *std::get<Negate>(b.node).operand);
    if (const auto* ba = std::get_if<Binary>(&a.node)) {
        const auto& bb = std::get<Binary>(b.node);
        return ba->op == bb.op && nodesEqual(*ba->lhs, *bb.lhs) && nodesEqual(*ba->rhs, *bb.rhs);
    }
    const auto& ca = std::get<Call>(a.node);
    const auto& cb = std::get<Call>(b.node);
    if (ca.func != cb.func || ca.args.size() != cb.args.size())
        return false;
    for (std::size_t i = 0; i < ca.args.size(); ++i)
        if (!nodesEqual(*ca.args[i], *cb.args[i]))
            return false;
    return true;
}

} // namespace

SequenceExpr parse_sequence_expr(const std::string& text) {
    if (text.empty())
        throw ParseError("empty expression", 0);
    Parser parser(text);
    return SequenceExpr(parser.parse(), text);
}

double SequenceExpr::evaluate(std::size_t n) const {
    if (!root_)
        throw EvalError("evaluating an empty expression");
    return evalNode(*root_, n);
}

std::string SequenceExpr::pretty_print() const {
    if (!root_)
        return {};
    std::string out;
    printNode(out, *root_, 1);
    return out;
}

bool structurally_equal(const SequenceExpr& a, const SequenceExpr& b) {
    if (!a.root_ || !b.root_)
        return a.root_ == b.root_;
    return nodesEqual(*a.root_, *b.root_);
}

} // namespace rkdyn
