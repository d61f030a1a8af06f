#include "bamlab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bam {

SparseOperator::SparseOperator(DomainPtr domain, std::vector<double> xi, std::vector<double> sigma,
                               bool symmetrize)
    : domain_(std::move(domain)), xi_(std::move(xi)), sigma_(std::move(sigma)), symmetrized_(symmetrize) {
  if (!domain_ || domain_->size() == 0) throw std::invalid_argument("assemble: empty domain");
  const std::size_t n = domain_->size();
  if (xi_.size() != n || sigma_.size() != n) throw std::invalid_argument("assemble: field length mismatch");
  const double w = 1.0 / (2.0 * domain_->dim());
  diag_.resize(n);
  row_ptr_.assign(1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sigma_[i] > 0)) throw std::invalid_argument("assemble: sigma must be positive");
    diag_[i] = xi_[i] - 1.0 / sigma_[i];
    for (std::int32_t j : domain_->neighbours(i)) {
      const auto jj = static_cast<std::size_t>(j);
      off_.push_back(symmetrize ? w / std::sqrt(sigma_[i] * sigma_[jj]) : w / sigma_[jj]);
    }
    row_ptr_.push_back(off_.size());
  }
}

std::span<const double> SparseOperator::row_values(std::size_t i) const {
  return {off_.data() + row_ptr_[i], off_.data() + row_ptr_[i + 1]};
}

double SparseOperator::entry(std::size_t row, std::size_t col) const {
  double v = row == col ? diag_[row] : 0.0;
  auto nb = domain_->neighbours(row);
  auto vals = row_values(row);
  for (std::size_t k = 0; k < nb.size(); ++k)
    if (static_cast<std::size_t>(nb[k]) == col) v += vals[k];
  return v;
}

void SparseOperator::apply(std::span<const double> v, std::span<double> out) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag_[i] * v[i];
    auto nb = domain_->neighbours(i);
    const double* vals = off_.data() + row_ptr_[i];
    for (std::size_t k = 0; k < nb.size(); ++k) acc += vals[k] * v[static_cast<std::size_t>(nb[k])];
    out[i] = acc;
  }
}

std::vector<double> SparseOperator::matvec(std::span<const double> v) const {
  if (v.size() != size()) throw std::invalid_argument("matvec: length mismatch");
  std::vector<double> out(size());
  apply(v, out);
  return out;
}

std::vector<double> SparseOperator::matvec_transpose(std::span<const double> v) const {
  if (v.size() != size()) throw std::invalid_argument("matvec_transpose: length mismatch");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = diag_[i] * v[i];
  for (std::size_t i = 0; i < size(); ++i) {
    auto nb = domain_->neighbours(i);
    auto vals = row_values(i);
    for (std::size_t k = 0; k < nb.size(); ++k) out[static_cast<std::size_t>(nb[k])] += vals[k] * v[i];
  }
  return out;
}

std::vector<double> SparseOperator::to_dense() const {
  const std::size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diag_[i];
    auto nb = domain_->neighbours(i);
    auto vals = row_values(i);
    for (std::size_t k = 0; k < nb.size(); ++k) m[i * n + static_cast<std::size_t>(nb[k])] += vals[k];
  }
  return m;
}

std::vector<Triple> SparseOperator::triples() const {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < size(); ++i) {
    // Columns in increasing order, diagonal included.
    std::vector<Triple> row{{i, i, diag_[i]}};
    auto nb = domain_->neighbours(i);
    auto vals = row_values(i);
    for (std::size_t k = 0; k < nb.size(); ++k) row.push_back({i, static_cast<std::size_t>(nb[k]), vals[k]});
    std::sort(row.begin(), row.end(), [](const Triple& a, const Triple& b) { return a.col < b.col; });
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

SparseOperator SparseOperator::with_symmetrize(bool symmetrize) const {
  return SparseOperator(domain_, xi_, sigma_, symmetrize);
}

SparseOperator assemble(const Environment& env, DomainPtr domain, bool symmetrize) {
  if (!domain || domain->size() == 0) throw std::invalid_argument("assemble: empty domain");
  return SparseOperator(domain, env.xi_on(*domain), env.sigma_on(*domain), symmetrize);
}

SparseOperator assemble(const Environment& env, const Domain& domain, bool symmetrize) {
  return assemble(env, std::make_shared<const Domain>(domain), symmetrize);
}

void write_triples_csv(const SparseOperator& op, std::ostream& os) {
  os << "row,col,value\n";
  char buf[64];
  for (const Triple& t : op.triples()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    os << t.row << ',' << t.col << ',' << buf << '\n';
  }
}

}  // namespace bam
