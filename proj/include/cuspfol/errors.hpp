#ifndef CUSPFOL_ERRORS_HPP
#define CUSPFOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cuspfol {

// Broken contract between library components: mismatched variable contexts,
// arity errors, out-of-range indices, wrong form degree.
class StructuralError : public std::logic_error {
public:
    explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

// Rejected input: violated model invariants, unsupported dimensions,
// empty supports, zero divisors.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Two routes that must agree disagreed. Reaching this is a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace cuspfol

#endif
