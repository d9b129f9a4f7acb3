#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discinterp {

/// Precondition violated by an argument (point outside the disc, bad parameter).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A node too close to the origin: A_n degenerates and the product vanishes identically.
class DegenerateNodeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DuplicatePointError : public DomainError {
 public:
  DuplicatePointError(std::size_t first, std::size_t second, const std::string& what)
      : DomainError(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Evaluation at (or numerically on top of) a pole of P'/P.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature did not converge, or a value left the representable range.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The coefficient ladder does not reach far enough for the requested nodes.
class LadderTooShortError : public std::runtime_error {
 public:
  LadderTooShortError(std::size_t n_max, double t_required, const std::string& what)
      : std::runtime_error(what), n_max_(n_max), t_required_(t_required) {}
  std::size_t n_max() const noexcept { return n_max_; }
  double t_required() const noexcept { return t_required_; }

 private:
  std::size_t n_max_;
  double t_required_;
};

/// sup_u (n u - w psi~(C0 e^u)) is infinite: psi~ grows too slowly for this n.
class UnboundedConjugateError : public std::runtime_error {
 public:
  UnboundedConjugateError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace discinterp
