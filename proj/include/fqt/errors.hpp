#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fqt {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonPrimeError : public Error {
  public:
    explicit NonPrimeError(unsigned long long p)
        : Error("not a prime: " + std::to_string(p)) {}
};

class DegreeOutOfRangeError : public Error {
  public:
    using Error::Error;
};

class SizeCapExceededError : public Error {
  public:
    using Error::Error;
};

class FieldMismatchError : public Error {
  public:
    FieldMismatchError() : Error("operands belong to different fields") {}
};

class DivisionByZeroError : public Error {
  public:
    DivisionByZeroError() : Error("division by zero") {}
};

class ZeroPolynomialError : public Error {
  public:
    ZeroPolynomialError() : Error("zero polynomial has no factorization") {}
};

class NotEnoughIrreduciblesError : public Error {
  public:
    NotEnoughIrreduciblesError(unsigned long long requested, unsigned long long available)
        : Error("requested " + std::to_string(requested) + " irreducibles, only " +
                std::to_string(available) + " exist") {}
};

class WrongCharacteristicError : public Error {
  public:
    using Error::Error;
};

class BothConstantError : public Error {
  public:
    BothConstantError() : Error("orbit criterion requires f, g not both constant") {}
};

class ContainsOPredicateError : public Error {
  public:
    ContainsOPredicateError() : Error("formula contains O-atoms, which have no ring lowering") {}
};

class ContainsDisjunctionError : public Error {
  public:
    ContainsDisjunctionError()
        : Error("sentence is not an existential conjunction; distribute disjunctions first") {}
};

class UnboundVariableError : public Error {
  public:
    explicit UnboundVariableError(const std::string& var)
        : Error("unbound variable: " + var) {}
};

class ShapeMismatchError : public Error {
  public:
    using Error::Error;
};

class WitnessInvalidError : public Error {
  public:
    using Error::Error;
};

/// Parse failure with the byte offset where it happened and what was expected.
class SyntaxError : public Error {
  public:
    SyntaxError(std::size_t position, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected),
          position_(position),
          expected_(expected) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

  private:
    std::size_t position_;
    std::string expected_;
};

/// Violation of an internal invariant (a bug, not a caller error).
class InternalError : public Error {
  public:
    using Error::Error;
};

}  // namespace fqt
