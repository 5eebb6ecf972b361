#ifndef RKDYN_SEQUENCE_EXPR_HPP
#define RKDYN_SEQUENCE_EXPR_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace rkdyn {

// Closed-form real sequences in the index variable n. The grammar is
// deliberately minimal: no implicit multiplication, and the right operand
// of '^' must be parenthesized if it starts with a unary minus, so
// "2^-n" is rejected and "2^(-n)" is required.
//
//   expression = term { ("+" | "-") term }
//   term       = unary { ("*" | "/") unary }
//   unary      = "-" unary | power
//   power      = primary [ "^" power ]            -- right associative
//   primary    = number | "n" | func "(" expression {"," expression} ")"
//              | "(" expression ")"
//   func       = "sqrt" | "exp" | "ln" | "pow"

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Sqrt, Exp, Ln, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct Literal {
    double value; // non-negative; negatives are parsed as unary minus
};
struct VarN {};
struct Negate {
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Call {
    FuncId func;
    std::vector<ExprPtr> args;
};

struct ExprNode {
    std::variant<Literal, VarN, Negate, Binary, Call> node;
};

/// Immutable parsed sequence expression. Copies share the tree.
class SequenceExpr {
public:
    SequenceExpr() = default;
    SequenceExpr(ExprPtr root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    const ExprPtr& root() const noexcept { return root_; }
    const std::string& source_text() const noexcept { return source_; }
    bool empty() const noexcept { return root_ == nullptr; }

    /// Evaluate at integer index n >= 0. Throws EvalError on division by
    /// zero, domain errors, or non-finite results.
    double evaluate(std::size_t n) const;

    /// Canonical text form; parsing it back yields a structurally equal tree.
    std::string pretty_print() const;

    /// Structural tree equality (literals compared bit-exactly).
    friend bool structurally_equal(const SequenceExpr& a, const SequenceExpr& b);

private:
    ExprPtr root_;
    std::string source_;
};

/// Parse `text` into an expression tree honoring the grammar above.
/// Throws ParseError (with byte offset) on syntax errors, unknown
/// identifiers, or function arity mismatches.
SequenceExpr parse_sequence_expr(const std::string& text);

} // namespace rkdyn

#endif
