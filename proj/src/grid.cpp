#include "zfb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zfb/core.hpp"

namespace zfb {

namespace {
bool same_momentum(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

SpectralGrid::SpectralGrid(std::vector<double> momenta) : momenta_(std::move(momenta)) {
  if (momenta_.empty()) throw DomainError("grid is empty");
  for (double k : momenta_) {
    if (!std::isfinite(k)) throw DomainError("grid contains a non-finite momentum");
    if (k == 0.0) throw DomainError("grid contains 0");
  }
  std::sort(momenta_.begin(), momenta_.end());
  for (std::size_t i = 1; i < momenta_.size(); ++i)
    if (same_momentum(momenta_[i - 1], momenta_[i]))
      throw DomainError("grid momenta are not distinct: " + format_real(momenta_[i]));
  // After sorting, symmetry means momenta_[i] == -momenta_[n-1-i].
  const std::size_t n = momenta_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!same_momentum(momenta_[i], -momenta_[n - 1 - i]))
      throw DomainError("grid not negation-symmetric: " + format_real(momenta_[i]) +
                        " has no partner");
  // Store exact negations so that k and -k compare equal bitwise.
  for (std::size_t i = 0; i < n / 2; ++i) momenta_[i] = -momenta_[n - 1 - i];
}

std::optional<int> SpectralGrid::index_of(double k) const {
  auto it = std::lower_bound(momenta_.begin(), momenta_.end(), k);
  for (auto cand : {it, it == momenta_.begin() ? it : it - 1})
    if (cand != momenta_.end() && same_momentum(*cand, k))
      return static_cast<int>(cand - momenta_.begin());
  return std::nullopt;
}

int SpectralGrid::require_index(double k) const {
  if (auto i = index_of(k)) return *i;
  throw DomainError("momentum " + format_real(k) + " is not on the grid");
}

}  // namespace zfb
