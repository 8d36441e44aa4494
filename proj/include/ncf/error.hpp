#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ncf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes, groups or coefficient dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A group table violates one of the group axioms.
class ValidationError : public Error {
 public:
  ValidationError(std::string axiom, const std::string& detail)
      : Error("group validation failed (" + axiom + "): " + detail), axiom_(std::move(axiom)) {}
  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

/// A construction would exceed the configured maximum group order.
class SizeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be Hermitian is not, beyond rounding noise.
class NotHermitianError : public Error {
 public:
  NotHermitianError(double residual)
      : Error("matrix is not Hermitian (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A matrix or function failed a positivity certificate.
class NotPositiveError : public Error {
 public:
  NotPositiveError(const std::string& what, double min_eig) : Error(what), min_eig_(min_eig) {}
  double min_eig() const noexcept { return min_eig_; }

 private:
  double min_eig_;
};

class NotPositiveDefiniteError : public NotPositiveError {
 public:
  explicit NotPositiveDefiniteError(double min_eig)
      : NotPositiveError("function is not positive definite (min eigenvalue " + std::to_string(min_eig) + ")",
                         min_eig) {}
};

/// An operator does not lie in M_k tensor the group von Neumann algebra.
class NotInGroupAlgebraError : public Error {
 public:
  explicit NotInGroupAlgebraError(double violation)
      : Error("operator does not commute with the right translations (violation " + std::to_string(violation) +
              ")"),
        violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

class DilationError : public Error {
 public:
  using Error::Error;
};

class NotAbelianError : public Error {
 public:
  NotAbelianError(std::size_t s, std::size_t t)
      : Error("group is not Abelian: elements " + std::to_string(s) + " and " + std::to_string(t) + " do not commute"),
        witness_(s, t) {}
  std::pair<std::size_t, std::size_t> witness() const noexcept { return witness_; }

 private:
  std::pair<std::size_t, std::size_t> witness_;
};

}  // namespace ncf
