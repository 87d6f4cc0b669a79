#ifndef TWOCOVER_ERRORS_HPP
#define TWOCOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twocover {

// All recoverable failures thrown by the library derive from Error, so
// callers (and the CLI) can distinguish them from logic bugs.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EffortExceeded : Error {
    explicit EffortExceeded(const std::string& w) : Error("effort exceeded: " + w) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& w) : Error("p-adic precision exhausted: " + w) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w) : Error("dimension mismatch: " + w) {}
};

struct ZeroDivisor : Error {
    explicit ZeroDivisor(const std::string& w) : Error("zero divisor: " + w) {}
};

struct SupportCollision : Error {
    explicit SupportCollision(const std::string& w) : Error("divisor meets div(f): " + w) {}
};

struct DegenerateChart : Error {
    explicit DegenerateChart(const std::string& w) : Error("degenerate chart: " + w) {}
};

struct ResolventDegreeMismatch : Error {
    explicit ResolventDegreeMismatch(const std::string& w) : Error("resolvent degree mismatch: " + w) {}
};

struct CombinatorialBudgetExceeded : Error {
    explicit CombinatorialBudgetExceeded(const std::string& w) : Error("combinatorial budget exceeded: " + w) {}
};

struct SubdivisionBudgetExceeded : Error {
    explicit SubdivisionBudgetExceeded(const std::string& w) : Error("subdivision budget exceeded: " + w) {}
};

struct MissingBound : Error {
    explicit MissingBound(const std::string& w) : Error("missing span bound: " + w) {}
};

struct VerificationFailed : Error {
    explicit VerificationFailed(const std::string& w) : Error("verification failed: " + w) {}
};

struct EnumerationIncomplete : Error {
    explicit EnumerationIncomplete(const std::string& w) : Error("enumeration not provably exhaustive: " + w) {}
};

struct NonTermination : Error {
    explicit NonTermination(const std::string& w) : Error("iteration guard tripped: " + w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("parse error: " + w) {}
};

} // namespace twocover

#endif
