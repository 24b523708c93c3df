#ifndef GFTK_ERRORS_HPP
#define GFTK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gftk {

// Exit-code families used by the CLI: solver failures -> 2,
// evaluation failures -> 3, parse/config errors -> 4.
struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& m) : std::runtime_error(m) {}
};
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& m) : std::runtime_error(m) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

struct ZeroValue : EvalError {
    explicit ZeroValue(const std::string& m = "ZeroValue: jet value too close to zero for log/pow") : EvalError(m) {}
};
struct DomainError : EvalError {
    explicit DomainError(const std::string& m) : EvalError("DomainError: " + m) {}
};
struct CriticalPoint : EvalError {
    explicit CriticalPoint(const std::string& m = "CriticalPoint: |f'(z)| below threshold") : EvalError(m) {}
};
struct DivisorConstantZero : EvalError {
    DivisorConstantZero() : EvalError("DivisorConstantZero: series division needs c0 != 0") {}
};
struct NonzeroConstantTerm : EvalError {
    NonzeroConstantTerm() : EvalError("NonzeroConstantTerm: shift_div_z needs c0 = 0") {}
};
struct NotNormalized : EvalError {
    explicit NotNormalized(const std::string& m = "NotNormalized: series constant term out of contract") : EvalError(m) {}
};
struct BadGamma : EvalError {
    BadGamma() : EvalError("BadGamma: need Re(gamma) > 0 and gamma != 0") {}
};
struct BranchTrackingFailure : EvalError {
    explicit BranchTrackingFailure(const std::string& m) : EvalError("BranchTrackingFailure: " + m) {}
};
struct PoleProximity : EvalError {
    explicit PoleProximity(const std::string& m = "PoleProximity: denominator too small") : EvalError(m) {}
};
struct AllPointsSingular : EvalError {
    AllPointsSingular() : EvalError("AllPointsSingular: every grid point failed to evaluate") {}
};
struct DivergentP : EvalError {
    DivergentP() : EvalError("DivergentP: |f'(z) + t| below threshold") {}
};
struct PoleAtMinusOne : EvalError {
    PoleAtMinusOne() : EvalError("PoleAtMinusOne: becker dilatation undefined at p = -1") {}
};
struct DegenerateDenominator : EvalError {
    DegenerateDenominator() : EvalError("DegenerateDenominator: betker dilatation needs p + q != 0") {}
};
struct NotSpirallike : EvalError {
    explicit NotSpirallike(const std::string& m) : EvalError("NotSpirallike: " + m) {}
};

struct BracketFailure : SolverError {
    explicit BracketFailure(const std::string& m) : SolverError("BracketFailure: " + m) {}
};
struct NewtonDivergence : SolverError {
    double residual;
    explicit NewtonDivergence(double res, const std::string& m)
        : SolverError("NewtonDivergence: " + m), residual(res) {}
};
struct ExtensionGridError : SolverError {
    explicit ExtensionGridError(const std::string& m) : SolverError("ExtensionGridError: " + m) {}
};

struct SyntaxError : ParseError {
    std::size_t offset;
    SyntaxError(std::size_t off, const std::string& m)
        : ParseError("SyntaxError at offset " + std::to_string(off) + ": " + m), offset(off) {}
};
struct NonConstantExponent : ParseError {
    std::size_t offset;
    explicit NonConstantExponent(std::size_t off)
        : ParseError("NonConstantExponent: exponent of ^ must not contain z (offset " + std::to_string(off) + ")"),
          offset(off) {}
};
struct ConfigError : ParseError {
    explicit ConfigError(const std::string& m) : ParseError("ConfigError: " + m) {}
};

} // namespace gftk

#endif
