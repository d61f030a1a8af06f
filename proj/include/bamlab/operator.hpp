#pragma once

// Dirichlet restriction of  Delta sigma^{-1} + xi  to a finite site set.
//
//   (A f)(z) = sum_{y ~ z, y in D} (2d)^{-1} sigma(y)^{-1} f(y) - sigma(z)^{-1} f(z) + xi(z) f(z)
//
// The symmetric conjugate S = sigma^{-1/2} Delta sigma^{-1/2} + xi satisfies
// A = sigma^{1/2} S sigma^{-1/2}.

#include <iosfwd>
#include <span>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/lattice.hpp"

namespace bam {

struct Triple {
  std::size_t row, col;
  double value;
};

class SparseOperator {
 public:
  /// Fields are given in the domain's index order.
  SparseOperator(DomainPtr domain, std::vector<double> xi, std::vector<double> sigma, bool symmetrize);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  std::size_t size() const { return xi_.size(); }
  bool symmetrized() const { return symmetrized_; }

  const std::vector<double>& xi() const { return xi_; }
  const std::vector<double>& sigma() const { return sigma_; }
  /// xi(z) - sigma(z)^{-1}
  const std::vector<double>& diag_potential() const { return diag_; }

  /// Off-diagonal entries of row i, aligned with domain().neighbours(i).
  std::span<const double> row_values(std::size_t i) const;

  double entry(std::size_t row, std::size_t col) const;

  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> matvec(std::span<const double> v) const;
  /// Product with the transpose (the trap-model generator plus xi).
  std::vector<double> matvec_transpose(std::span<const double> v) const;

  /// Row-major dense copy.
  std::vector<double> to_dense() const;
  std::vector<Triple> triples() const;

  SparseOperator with_symmetrize(bool symmetrize) const;

 private:
  DomainPtr domain_;
  std::vector<double> xi_, sigma_, diag_;
  std::vector<double> off_;  // aligned with the domain's neighbour CSR
  std::vector<std::size_t> row_ptr_;
  bool symmetrized_ = false;
};

SparseOperator assemble(const Environment& env, DomainPtr domain, bool symmetrize);
SparseOperator assemble(const Environment& env, const Domain& domain, bool symmetrize);

/// CSV with header row,col,value.
void write_triples_csv(const SparseOperator& op, std::ostream& os);

}  // namespace bam
