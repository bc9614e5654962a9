#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fracperiodic {

/// Base class of every domain error raised by the library. The CLI maps
/// these to exit code 1; `kind()` is the stable machine-readable tag.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

/// Argument outside a documented domain (s outside (0,1), T <= 0, ...).
class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class QuadratureNonConvergence : public Error {
public:
  QuadratureNonConvergence(const std::string& what, double estimate)
      : Error("QuadratureNonConvergence", what), estimate_(estimate) {}
  double error_estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

class NotCoercive : public Error {
public:
  NotCoercive(const std::string& what, double min_eigenvalue)
      : Error("NotCoercive", what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
  double min_eigenvalue_;
};

/// Right-hand side fails the orthogonality condition against the kernel.
class SolvabilityViolation : public Error {
public:
  SolvabilityViolation(const std::string& what, double inner_product)
      : Error("SolvabilityViolation", what), inner_product_(inner_product) {}
  double inner_product() const noexcept { return inner_product_; }

private:
  double inner_product_;
};

class NegativePotential : public Error {
public:
  NegativePotential(const std::string& what, double min_value)
      : Error("NegativePotential", what), min_value_(min_value) {}
  double min_value() const noexcept { return min_value_; }

private:
  double min_value_;
};

class BesselEvalFailure : public Error {
public:
  explicit BesselEvalFailure(const std::string& what) : Error("BesselEvalFailure", what) {}
};

class ExtrapolationDivergence : public Error {
public:
  ExtrapolationDivergence(const std::string& what, double spread)
      : Error("ExtrapolationDivergence", what), spread_(spread) {}
  double spread() const noexcept { return spread_; }

private:
  double spread_;
};

class TailNotConverged : public Error {
public:
  TailNotConverged(const std::string& what, double tail)
      : Error("TailNotConverged", what), tail_(tail) {}
  double tail() const noexcept { return tail_; }

private:
  double tail_;
};

class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, double residual)
      : Error("NoConvergence", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Newton Jacobian numerically singular; usually means a bifurcation point is near.
class SingularJacobian : public Error {
public:
  SingularJacobian(const std::string& what, double sigma_min)
      : Error("SingularJacobian", what), sigma_min_(sigma_min) {}
  double sigma_min() const noexcept { return sigma_min_; }

private:
  double sigma_min_;
};

class InconsistentBracket : public Error {
public:
  InconsistentBracket(const std::string& what, double period)
      : Error("InconsistentBracket", what), period_(period) {}
  double period() const noexcept { return period_; }

private:
  double period_;
};

class StepFailure : public Error {
public:
  explicit StepFailure(const std::string& what) : Error("StepFailure", what) {}
};

class BranchLost : public Error {
public:
  BranchLost(const std::string& what, double lambda)
      : Error("BranchLost", what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

private:
  double lambda_;
};

class IdentityViolation : public Error {
public:
  IdentityViolation(const std::string& what, double x, double deviation)
      : Error("IdentityViolation", what), x_(x), deviation_(deviation) {}
  double x() const noexcept { return x_; }
  double deviation() const noexcept { return deviation_; }

private:
  double x_;
  double deviation_;
};

class InequalityViolation : public Error {
public:
  InequalityViolation(const std::string& what, double x, double y, double excess)
      : Error("InequalityViolation", what), x_(x), y_(y), excess_(excess) {}
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double excess() const noexcept { return excess_; }

private:
  double x_;
  double y_;
  double excess_;
};

class TruncationNotConverged : public Error {
public:
  TruncationNotConverged(const std::string& what, double change)
      : Error("TruncationNotConverged", what), change_(change) {}
  double change() const noexcept { return change_; }

private:
  double change_;
};

}  // namespace fracperiodic
