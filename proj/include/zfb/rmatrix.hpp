// R-matrices, reflection matrices and the matrix-level equations they obey.
//
// Index convention: an operator on aux (x) aux is an N^2 x N^2 matrix whose
// composite row/column index is i*N + j, with i the first tensor factor.
// R(k1, k2) from an evaluator is always R_12(k1, k2); R_21 is obtained by
// conjugating with the permutation P.
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zfb/core.hpp"

namespace zfb {

struct RMatrixSpec {
  int n = 0;
  double coupling = 0.0;
  std::string family;
  std::function<Matrix(double, double)> evaluator;

  /// g = 0 degenerates the rational family to R = I.
  bool is_free() const { return family == "rational" && coupling == 0.0; }
};

/// R(k1,k2) = ((k1-k2) I + i g P) / (k1 - k2 + i g), the Yangian Y(gl_N) R-matrix.
RMatrixSpec rational_r_matrix(int n, double coupling);

/// Wraps an arbitrary evaluator; used for negative controls and tests.
RMatrixSpec custom_r_matrix(int n, std::string family, std::function<Matrix(double, double)> f);

/// R_12(k1, k2). Rejects non-finite momenta and checks the output shape.
Matrix eval_r(const RMatrixSpec& spec, double k1, double k2);

/// R_21(k1, k2) = P R_12(k1, k2) P.
Matrix eval_r21(const RMatrixSpec& spec, double k1, double k2);

Matrix permutation_matrix(int n);

/// Embeds m, acting on tensor factors (first, second) in that order, into
/// factors total-fold tensor product of C^n.
Matrix embed_pair(const Matrix& m, int n, int first, int second, int factors);

/// Single-factor embedding of an n x n matrix.
Matrix embed_single(const Matrix& m, int n, int position, int factors);

/// ||R12 R13 R23 - R23 R13 R12||_max with each argument given on its own pair.
double yang_baxter_residual(const Matrix& r12, const Matrix& r13, const Matrix& r23, int n);

Residual check_yang_baxter(const RMatrixSpec& spec, double k1, double k2, double k3);
Residual check_unitarity(const RMatrixSpec& spec, double k1, double k2);

enum class ReflectionFamily { kIdentity, kConstantDiagonal, kMomentumDiagonal, kTable };

std::string to_string(ReflectionFamily f);

/// Tabulated B(k): momentum -> row-major n x n matrix.
struct ReflectionTable {
  int n = 0;
  std::vector<std::pair<double, Matrix>> entries;

  const Matrix& lookup(double k) const;
};

/// Reads "k re00 im00 re01 im01 ..." rows; '#' starts a comment.
ReflectionTable load_reflection_table(const std::filesystem::path& path, int n);

struct ReflectionMatrixSpec {
  int n = 0;
  ReflectionFamily family = ReflectionFamily::kIdentity;
  std::vector<Complex> diagonal;  // kConstantDiagonal
  std::vector<double> c;          // kMomentumDiagonal: entries (c + ik)/(c - ik)
  std::shared_ptr<const ReflectionTable> table;
  std::function<Matrix(double)> evaluator;

  std::string describe() const;
};

ReflectionMatrixSpec identity_reflection(int n);
ReflectionMatrixSpec constant_diagonal_reflection(std::vector<Complex> diagonal);
ReflectionMatrixSpec momentum_diagonal_reflection(std::vector<double> c);
ReflectionMatrixSpec table_reflection(ReflectionTable table);

Matrix eval_b(const ReflectionMatrixSpec& spec, double k);

/// R12 B1 R'21 B2 - B2 R'12 B1 Rbar21 with R'12 = R12(k1,-k2),
/// R'21 = R21(k2,-k1), Rbar21 = R21(-k2,-k1).
Residual check_reflection_equation(const RMatrixSpec& r, const ReflectionMatrixSpec& b,
                                   double k1, double k2);

/// ||B(k) B(-k) - I||_max
Residual check_b_unitarity(const ReflectionMatrixSpec& b, double k);

struct WhitelistResult {
  bool valid = false;
  double reflection_residual = 0.0;
  double unitarity_residual = 0.0;
  std::string cause;
};

/// Admits B only if the reflection equation and B-unitarity pass at every
/// ordered pair of the given momenta.
WhitelistResult whitelist_reflection(const RMatrixSpec& r, const ReflectionMatrixSpec& b,
                                     std::span<const double> momenta, double tol);

}  // namespace zfb
