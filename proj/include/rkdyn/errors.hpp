#ifndef RKDYN_ERRORS_HPP
#define RKDYN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkdyn {

/// Syntax error in a sequence expression; `offset` is the byte position
/// in the source text where scanning/parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Runtime evaluation failure: division by zero, domain error (ln of a
/// non-positive value, sqrt of a negative), non-finite result, or an
/// index past the end of a finite list with no tail.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Kernel-spec / report schema violation. Message names the offending field.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficient matrix is not Hermitian within tolerance.
class NotHermitianError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gram matrix failed the positive-definiteness gate. Carries the
/// smallest eigenvalue seen, for diagnostics.
class NotPositiveDefiniteError : public std::runtime_error {
public:
    NotPositiveDefiniteError(std::string message, double min_eigenvalue)
        : std::runtime_error(std::move(message)), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Requested construction exceeds the truncation window (e.g. forward
/// shift past the model order).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A theorem hypothesis gate failed (contraction ratio >= 1, diagonal not
/// summable, counterexample base not hypercyclic). The construction is
/// refused rather than produce meaningless numbers.
class GateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rkdyn

#endif
