#include "zfb/core.hpp"

#include <cstdio>

namespace zfb {

double max_norm(const Matrix& m) {
  double out = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out = std::max(out, std::abs(m(i, j)));
  return out;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace zfb
