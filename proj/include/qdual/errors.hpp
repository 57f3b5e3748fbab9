#pragma once

#include <stdexcept>
#include <string>

namespace qdual {

// Domain precondition failures. The CLI maps these to exit code 3.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input (files, coordinate strings, curve words). Exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broken internal invariant; never expected on valid inputs. Exit code 4.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ZeroPolynomial : DomainError {
    ZeroPolynomial() : DomainError("zero polynomial has no highest term") {}
};

struct NoHighestTerm : DomainError {
    explicit NoHighestTerm(const std::string& what) : DomainError(what) {}
};

struct NotInQSubalgebra : DomainError {
    explicit NotInQSubalgebra(const std::string& what) : DomainError(what) {}
};

struct NonRealizable : DomainError {
    explicit NonRealizable(const std::string& what) : DomainError(what) {}
};

struct NegativeNonPeripheral : DomainError {
    explicit NegativeNonPeripheral(const std::string& what) : DomainError(what) {}
};

struct NotPeripheral : DomainError {
    explicit NotPeripheral(const std::string& what) : DomainError(what) {}
};

struct NotInALattice : DomainError {
    explicit NotInALattice(const std::string& what) : DomainError(what) {}
};

struct KernelViolation : DomainError {
    explicit KernelViolation(const std::string& what) : DomainError(what) {}
};

struct PeelFailure : InternalError {
    explicit PeelFailure(const std::string& what) : InternalError(what) {}
};

struct InternalParityViolation : InternalError {
    explicit InternalParityViolation(const std::string& what) : InternalError(what) {}
};

} // namespace qdual
