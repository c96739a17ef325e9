// N x N array of Fock states: the image of a state under a matrix of operators.
#pragma once

#include <vector>

#include "zfb/fock.hpp"

namespace zfb {

class AuxState {
 public:
  explicit AuxState(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}

  /// Entry (i,j) equal to delta_ij * s.
  static AuxState diagonal(int n, const FockState& s);

  int dim() const { return n_; }
  FockState& operator()(int i, int j) { return entries_[i * n_ + j]; }
  const FockState& operator()(int i, int j) const { return entries_[i * n_ + j]; }

  /// Row-major flattening, (i,j) -> i*n + j.
  const std::vector<FockState>& flat() const { return entries_; }
  std::vector<FockState>& flat() { return entries_; }

  void add_scaled(const AuxState& other, Complex factor);
  void prune(double threshold);
  int max_particles() const;

 private:
  int n_;
  std::vector<FockState> entries_;
};

/// Max over entries of the amplitude deviation.
double max_deviation(const AuxState& a, const AuxState& b);

/// (M X)(i,j) = sum_l M(i,l) X(l,j) for a c-number matrix M.
AuxState left_multiply(const Matrix& m, const AuxState& x);

}  // namespace zfb
