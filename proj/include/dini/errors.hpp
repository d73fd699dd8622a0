#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dini {

// Argument outside an operation's domain of definition.
using invalid_argument = std::invalid_argument;

/// A discrete map sends grid points outside the domain.
class range_error : public std::range_error {
 public:
  range_error(const std::string& what, std::vector<std::string> offenders)
      : std::range_error(what), offenders_(std::move(offenders)) {}
  const std::vector<std::string>& offenders() const noexcept { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

class unsupported_domain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver stopped before reaching its tolerance.
class solver_failure : public std::runtime_error {
 public:
  solver_failure(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Evaluation at a singular point of a kernel.
class singularity_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class corrupt_file : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dini
