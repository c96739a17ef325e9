#include "zfb/rmatrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace zfb {

namespace {

void require_finite(double k, const char* what) {
  if (!std::isfinite(k)) throw DomainError(std::string(what) + ": non-finite momentum");
}

std::vector<int> digits(Eigen::Index index, int n, int factors) {
  std::vector<int> d(factors);
  for (int f = factors - 1; f >= 0; --f) {
    d[f] = static_cast<int>(index % n);
    index /= n;
  }
  return d;
}

Eigen::Index compose(const std::vector<int>& d, int n) {
  Eigen::Index out = 0;
  for (int x : d) out = out * n + x;
  return out;
}

}  // namespace

RMatrixSpec rational_r_matrix(int n, double coupling) {
  if (n < 1) throw DomainError("rational_r_matrix: N must be positive");
  if (!std::isfinite(coupling)) throw DomainError("rational_r_matrix: non-finite coupling");
  const Matrix identity = Matrix::Identity(n * n, n * n);
  const Matrix perm = permutation_matrix(n);
  auto f = [identity, perm, coupling](double k1, double k2) -> Matrix {
    if (coupling == 0.0) return identity;
    // (u I + i g P)/(u + i g), split into real arithmetic so that u = 0 gives P exactly.
    const double u = k1 - k2;
    const double g = coupling;
    const double den = u * u + g * g;
    const Complex alpha{u * u / den, -g * u / den};
    const Complex beta{g * g / den, g * u / den};
    return alpha * identity + beta * perm;
  };
  return RMatrixSpec{n, coupling, "rational", f};
}

RMatrixSpec custom_r_matrix(int n, std::string family, std::function<Matrix(double, double)> f) {
  return RMatrixSpec{n, 0.0, std::move(family), std::move(f)};
}

Matrix eval_r(const RMatrixSpec& spec, double k1, double k2) {
  require_finite(k1, "eval_r");
  require_finite(k2, "eval_r");
  Matrix m = spec.evaluator(k1, k2);
  const Eigen::Index d = static_cast<Eigen::Index>(spec.n) * spec.n;
  if (m.rows() != d || m.cols() != d)
    throw std::logic_error("eval_r: evaluator returned a matrix of the wrong shape");
  return m;
}

Matrix eval_r21(const RMatrixSpec& spec, double k1, double k2) {
  const Matrix p = permutation_matrix(spec.n);
  return p * eval_r(spec, k1, k2) * p;
}

Matrix permutation_matrix(int n) {
  Matrix p = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i * n + j, j * n + i) = 1.0;
  return p;
}

Matrix embed_pair(const Matrix& m, int n, int first, int second, int factors) {
  Eigen::Index dim = 1;
  for (int f = 0; f < factors; ++f) dim *= n;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    std::vector<int> col = digits(row, n, factors);
    const auto r = digits(row, n, factors);
    const Eigen::Index mrow = r[first] * n + r[second];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        col[first] = a;
        col[second] = b;
        out(row, compose(col, n)) = m(mrow, a * n + b);
      }
    }
  }
  return out;
}

Matrix embed_single(const Matrix& m, int n, int position, int factors) {
  Eigen::Index dim = 1;
  for (int f = 0; f < factors; ++f) dim *= n;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    std::vector<int> col = digits(row, n, factors);
    const int r = col[position];
    for (int a = 0; a < n; ++a) {
      col[position] = a;
      out(row, compose(col, n)) = m(r, a);
    }
  }
  return out;
}

double yang_baxter_residual(const Matrix& r12, const Matrix& r13, const Matrix& r23, int n) {
  const Matrix e12 = embed_pair(r12, n, 0, 1, 3);
  const Matrix e13 = embed_pair(r13, n, 0, 2, 3);
  const Matrix e23 = embed_pair(r23, n, 1, 2, 3);
  return max_norm(e12 * e13 * e23 - e23 * e13 * e12);
}

Residual check_yang_baxter(const RMatrixSpec& spec, double k1, double k2, double k3) {
  const double v = yang_baxter_residual(eval_r(spec, k1, k2), eval_r(spec, k1, k3),
                                        eval_r(spec, k2, k3), spec.n);
  return {v, "YBE k=(" + format_real(k1) + "," + format_real(k2) + "," + format_real(k3) + ")"};
}

Residual check_unitarity(const RMatrixSpec& spec, double k1, double k2) {
  const int d = spec.n * spec.n;
  const Matrix prod = eval_r(spec, k1, k2) * eval_r21(spec, k2, k1);
  return {max_norm(prod - Matrix::Identity(d, d)),
          "unitarity k=(" + format_real(k1) + "," + format_real(k2) + ")"};
}

std::string to_string(ReflectionFamily f) {
  switch (f) {
    case ReflectionFamily::kIdentity: return "identity";
    case ReflectionFamily::kConstantDiagonal: return "constant-diagonal";
    case ReflectionFamily::kMomentumDiagonal: return "k-dependent-diagonal";
    case ReflectionFamily::kTable: return "table";
  }
  return "unknown";
}

const Matrix& ReflectionTable::lookup(double k) const {
  for (const auto& [km, m] : entries)
    if (std::abs(km - k) <= 1e-12 * std::max(1.0, std::abs(k))) return m;
  throw LookupError("reflection table has no entry for k=" + format_real(k));
}

ReflectionTable load_reflection_table(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reflection table " + path.string());
  ReflectionTable table{n, {}};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double k;
    if (!(ls >> k)) continue;
    Matrix m(n, n);
    for (int i = 0; i < n * n; ++i) {
      double re, im;
      if (!(ls >> re >> im))
        throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(2 * n * n) + " real numbers after k");
      m(i / n, i % n) = Complex{re, im};
    }
    std::string extra;
    if (ls >> extra)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": trailing data");
    table.entries.emplace_back(k, std::move(m));
  }
  return table;
}

std::string ReflectionMatrixSpec::describe() const {
  std::ostringstream os;
  os << to_string(family);
  if (family == ReflectionFamily::kConstantDiagonal) {
    os << " diag(";
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
      if (i) os << ",";
      os << format_real(diagonal[i].real());
      if (diagonal[i].imag() != 0.0) os << (diagonal[i].imag() > 0 ? "+" : "") << format_real(diagonal[i].imag()) << "i";
    }
    os << ")";
  } else if (family == ReflectionFamily::kMomentumDiagonal) {
    os << " c=(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << format_real(c[i]);
    os << ")";
  }
  return os.str();
}

ReflectionMatrixSpec identity_reflection(int n) {
  ReflectionMatrixSpec s;
  s.n = n;
  s.family = ReflectionFamily::kIdentity;
  s.evaluator = [n](double) -> Matrix { return Matrix::Identity(n, n); };
  return s;
}

ReflectionMatrixSpec constant_diagonal_reflection(std::vector<Complex> diagonal) {
  ReflectionMatrixSpec s;
  s.n = static_cast<int>(diagonal.size());
  s.family = ReflectionFamily::kConstantDiagonal;
  s.diagonal = diagonal;
  Matrix m = Matrix::Zero(s.n, s.n);
  for (int i = 0; i < s.n; ++i) m(i, i) = diagonal[i];
  s.evaluator = [m](double) { return m; };
  return s;
}

ReflectionMatrixSpec momentum_diagonal_reflection(std::vector<double> c) {
  ReflectionMatrixSpec s;
  s.n = static_cast<int>(c.size());
  s.family = ReflectionFamily::kMomentumDiagonal;
  s.c = c;
  s.evaluator = [c](double k) {
    const int n = static_cast<int>(c.size());
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex{c[i], k} / Complex{c[i], -k};
    return m;
  };
  return s;
}

ReflectionMatrixSpec table_reflection(ReflectionTable table) {
  ReflectionMatrixSpec s;
  s.n = table.n;
  s.family = ReflectionFamily::kTable;
  s.table = std::make_shared<const ReflectionTable>(std::move(table));
  s.evaluator = [t = s.table](double k) { return t->lookup(k); };
  return s;
}

Matrix eval_b(const ReflectionMatrixSpec& spec, double k) {
  require_finite(k, "eval_b");
  Matrix m = spec.evaluator(k);
  if (m.rows() != spec.n || m.cols() != spec.n)
    throw std::logic_error("eval_b: evaluator returned a matrix of the wrong shape");
  return m;
}

Residual check_reflection_equation(const RMatrixSpec& r, const ReflectionMatrixSpec& b,
                                   double k1, double k2) {
  const int n = r.n;
  const Matrix b1 = embed_single(eval_b(b, k1), n, 0, 2);
  const Matrix b2 = embed_single(eval_b(b, k2), n, 1, 2);
  const Matrix r12 = eval_r(r, k1, k2);
  const Matrix r12p = eval_r(r, k1, -k2);
  const Matrix r21p = eval_r21(r, k2, -k1);
  const Matrix r21bar = eval_r21(r, -k2, -k1);
  const Matrix lhs = r12 * b1 * r21p * b2;
  const Matrix rhs = b2 * r12p * b1 * r21bar;
  return {max_norm(lhs - rhs), "RBRB k=(" + format_real(k1) + "," + format_real(k2) + ")"};
}

Residual check_b_unitarity(const ReflectionMatrixSpec& b, double k) {
  const Matrix prod = eval_b(b, k) * eval_b(b, -k);
  return {max_norm(prod - Matrix::Identity(b.n, b.n)), "B-unitarity k=" + format_real(k)};
}

WhitelistResult whitelist_reflection(const RMatrixSpec& r, const ReflectionMatrixSpec& b,
                                     std::span<const double> momenta, double tol) {
  WhitelistResult out;
  if (r.n != b.n) {
    out.cause = "R and B have different colour dimensions";
    out.reflection_residual = out.unitarity_residual = INFINITY;
    return out;
  }
  try {
    for (double k1 : momenta) {
      out.unitarity_residual = std::max(out.unitarity_residual, check_b_unitarity(b, k1).value);
      for (double k2 : momenta)
        out.reflection_residual =
            std::max(out.reflection_residual, check_reflection_equation(r, b, k1, k2).value);
    }
  } catch (const LookupError& e) {
    out.cause = e.what();
    return out;
  }
  out.valid = out.reflection_residual < tol && out.unitarity_residual < tol;
  if (!out.valid) {
    out.cause = "reflection equation residual " + format_real(out.reflection_residual) +
                ", B-unitarity residual " + format_real(out.unitarity_residual) +
                " (tolerance " + format_real(tol) + ")";
  }
  return out;
}

}  // namespace zfb
