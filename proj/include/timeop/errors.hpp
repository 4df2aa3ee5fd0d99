#pragma once

#include <stdexcept>
#include <string>

namespace timeop {

// An operator was applied to a vector outside its domain (e.g. dividing by x
// on a constant term, or a Gaussian width sitting on the convergence boundary).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric evaluation of a rational expression at a zero of its denominator.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric evaluation of a log expression too close to its branch cut.
struct BranchCutError : std::runtime_error {
  explicit BranchCutError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation at an isolated singular parameter value (z = i for the
// analytically continued matrix elements).
struct SingularPointError : std::runtime_error {
  explicit SingularPointError(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic between values tagged with different formal parameters.
struct EngineMismatch : std::logic_error {
  explicit EngineMismatch(const std::string& what) : std::logic_error(what) {}
};

}  // namespace timeop
