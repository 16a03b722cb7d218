#ifndef SYSTOLE_ERRORS_HPP
#define SYSTOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace systole {

// Base of all library errors. CLI maps DomainError -> exit 1, UsageError -> exit 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

// Raised when a computation would exceed a configured ceiling (sieve bound,
// factoring bound, enumeration cutoff). Never silently degrades.
struct ResourceError : Error {
    using Error::Error;
};

struct NotSquarefree : DomainError {
    using DomainError::DomainError;
};

struct IncompatibleCongruences : DomainError {
    using DomainError::DomainError;
};

struct PrimeDividesDiscriminant : DomainError {
    using DomainError::DomainError;
};

struct NotQuadratic : DomainError {
    using DomainError::DomainError;
};

struct FieldExcluded : DomainError {
    using DomainError::DomainError;
};

struct EmptyRamification : DomainError {
    using DomainError::DomainError;
};

struct BoundTooLarge : ResourceError {
    using ResourceError::ResourceError;
};

struct InconsistentPrescription : DomainError {
    using DomainError::DomainError;
};

// Spectrum-equality verification failure; carries the first differing area.
struct VerificationFailed : DomainError {
    std::string first_difference;
    VerificationFailed(const std::string& msg, std::string diff)
        : DomainError(msg), first_difference(std::move(diff)) {}
};

struct ParseError : UsageError {
    std::size_t column;
    ParseError(const std::string& msg, std::size_t col)
        : UsageError(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

} // namespace systole

#endif
