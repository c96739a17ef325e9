// Finite, negation-symmetric discretization of the spectral line.
#pragma once

#include <optional>
#include <span>
#include <vector>

namespace zfb {

/// Strictly increasing nonzero momenta, closed under k -> -k. Delta functions
/// become Kronecker deltas on this grid and integrals become plain sums.
class SpectralGrid {
 public:
  /// Sorts the input; throws DomainError if it contains 0, a duplicate, a
  /// non-finite value, or is not negation-symmetric.
  explicit SpectralGrid(std::vector<double> momenta);

  int size() const { return static_cast<int>(momenta_.size()); }
  double momentum(int index) const { return momenta_.at(index); }
  std::span<const double> momenta() const { return momenta_; }

  std::optional<int> index_of(double k) const;
  /// index_of, throwing DomainError for off-grid momenta.
  int require_index(double k) const;
  /// Index of -k for the momentum at `index`.
  int negated(int index) const { return size() - 1 - index; }

  bool contains_index(int index) const { return index >= 0 && index < size(); }

 private:
  std::vector<double> momenta_;
};

}  // namespace zfb
