#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tetrakit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain. CLI maps these to exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured work budget ran out. CLI maps these to exit code 3.
class EffortError : public Error {
 public:
  using Error::Error;
};

/// The factorization engine exhausted its trial-division / rho budget.
class EffortExceeded : public EffortError {
 public:
  using EffortError::EffortError;
};

/// An enumeration or table would exceed its configured size cap.
class TooLarge : public EffortError {
 public:
  using EffortError::EffortError;
};

/// A naive tetration oracle cannot evaluate the query within its budget.
class OracleInfeasible : public EffortError {
 public:
  using EffortError::EffortError;
};

class NotCoprime : public DomainError {
 public:
  using DomainError::DomainError;
};

/// gcd(a, L(n)) > 1, so the closed level formula does not apply.
class NotCoprimeToL : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No j within the scan cap had p dividing ord_{p^j}(a) (Wieferich-like pair).
class MNotFound : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A composite resisted both splitting and primality testing.
class Unresolved : public DomainError {
 public:
  Unresolved(const std::string& what, mpz_class cofactor)
      : DomainError(what), cofactor_(std::move(cofactor)) {}

  const mpz_class& cofactor() const { return cofactor_; }

 private:
  mpz_class cofactor_;
};

}  // namespace tetrakit
