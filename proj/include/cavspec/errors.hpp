#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cavspec {

/// An iterative computation failed to converge, or a factorization broke down.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested mesh would exceed the degree-of-freedom budget.  Callers should
/// fall back to the closed-form trial bound instead of refining further.
class DofBudgetError : public std::runtime_error {
public:
  DofBudgetError(std::size_t requested, std::size_t cap)
      : std::runtime_error("mesh would need ~" + std::to_string(requested) +
                           " vertices, exceeding the dof budget of " + std::to_string(cap) +
                           "; use the trial-function bound for these parameters"),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace cavspec
