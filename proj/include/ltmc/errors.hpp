#pragma once
// Error types shared across modules.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltmc {

// A simulated path left the representable range. Carries the first bad step.
class diverged_path_error : public std::runtime_error {
 public:
  diverged_path_error(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// A Monte Carlo run exceeded the tolerated fraction of diverged paths.
class invalid_run_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config text failed validation; `issues` lists every offending line.
class config_error : public std::runtime_error {
 public:
  explicit config_error(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "config error:";
    for (const auto& i : v) {
      s += "\n  ";
      s += i;
    }
    return s;
  }
  std::vector<std::string> issues_;
};

// An explicit finite-difference solve blew past the initial-data bound.
class instability_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quadrature failed to reach its tolerance inside the panel budget.
class quadrature_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ltmc
