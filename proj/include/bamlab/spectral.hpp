#pragma once

// Principal Dirichlet eigenpairs and the loop-expansion oracle.

#include <stdexcept>
#include <string>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/operator.hpp"

namespace bam {

struct EigenPair {
  double lambda = 0;
  std::vector<double> phi;  // l2-normalised, entrywise >= 0, domain index order
  double residual = 0;      // || A phi - lambda phi ||_2
  long iterations = 0;
};

struct EigenOptions {
  double tol = 1e-12;
  long max_iterations = 5'000'000;
  bool check_simple = true;  // deflation test for a degenerate top eigenvalue
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class DegenerateEigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeparationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shifted power iteration on the symmetric conjugate; the eigenvector is
/// mapped back by sigma^{1/2} and renormalised.
EigenPair principal_eigenpair(const SparseOperator& op, const EigenOptions& opt = {});
EigenPair principal_eigenpair(const Environment& env, const Site& center, int r, double tol = 1e-12);

/// Potential set to zero outside B_{r1}(center), Dirichlet on B_{r2}(center).
double eigenvalue_two_radius(const Environment& env, const Site& center, int r1, int r2, double tol = 1e-12);
SparseOperator two_radius_operator(const Environment& env, const Site& center, int r1, int r2);

/// Fixed-point evaluation of
///   lambda = xi(y) - 1/sigma(y) + 1/(2d sigma(y)) * sum over loops p at y avoiding y
///            of prod_{0<i<|p|} (2d)^{-1} / (1 + sigma(p_i)(lambda - xi(p_i))),
/// anchored at index `anchor`.  Requires xi(anchor) - max_{others} xi >= 2/delta_sigma.
double path_expansion_eigenvalue(const SparseOperator& op, std::size_t anchor, double delta_sigma,
                                 double tol = 1e-13);
double path_expansion_eigenvalue(const Environment& env, const Site& center, int r, double tol = 1e-13);

/// Max relative mismatch between phi(y)/phi(center) and
/// sigma(y)/sigma(center) * w(y), with w the stopped expectation solving
/// (A^T - lambda) w = 0 on B_r \ {center}, w(center) = 1.
double verify_eigenfunction_fk(const Environment& env, const Site& center, int r, const EigenPair& pair);

/// E_center[exp int_0^tau (xi - gamma)] up to the exit time of B_r(center),
/// for gamma above the principal eigenvalue.
double stopped_exit_mass(const Environment& env, const Site& center, int r, double gamma);

}  // namespace bam
