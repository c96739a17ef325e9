#include "zfb/aux_state.hpp"

#include <algorithm>

namespace zfb {

AuxState AuxState::diagonal(int n, const FockState& s) {
  AuxState out(n);
  for (int i = 0; i < n; ++i) out(i, i) = s;
  return out;
}

void AuxState::add_scaled(const AuxState& other, Complex factor) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i].add_scaled(other.entries_[i], factor);
}

void AuxState::prune(double threshold) {
  for (auto& e : entries_) e.prune(threshold);
}

int AuxState::max_particles() const {
  int m = -1;
  for (const auto& e : entries_) m = std::max(m, e.max_particles());
  return m;
}

double max_deviation(const AuxState& a, const AuxState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.flat().size(); ++i)
    d = std::max(d, max_deviation(a.flat()[i], b.flat()[i]));
  return d;
}

AuxState left_multiply(const Matrix& m, const AuxState& x) {
  const int n = x.dim();
  AuxState out(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) out(i, j).add_scaled(x(l, j), m(i, l));
  return out;
}

}  // namespace zfb
