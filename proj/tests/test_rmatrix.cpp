#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zfb/rmatrix.hpp"
#include "zfb/sampling.hpp"

using namespace zfb;

namespace {

Matrix identity(int d) { return Matrix::Identity(d, d); }

}  // namespace

TEST_CASE("rational R at coincident momenta is the permutation") {
  const RMatrixSpec r = rational_r_matrix(2, 1.0);
  CHECK(max_norm(eval_r(r, 0.0, 0.0) - permutation_matrix(2)) == 0.0);
  CHECK(max_norm(eval_r(r, 1.7, 1.7) - permutation_matrix(2)) == 0.0);
}

TEST_CASE("rational R tends to the identity at large separation") {
  const RMatrixSpec r = rational_r_matrix(2, 1.0);
  CHECK(max_norm(eval_r(r, 1e9, 0.0) - identity(4)) < 1e-8);
}

TEST_CASE("rational R at u = 1, g = 1") {
  const RMatrixSpec r = rational_r_matrix(2, 1.0);
  const Matrix expected = (identity(4) + kI * permutation_matrix(2)) / Complex(1.0, 1.0);
  CHECK(max_norm(eval_r(r, 1.0, 0.0) - expected) < 1e-15);
  CHECK(check_unitarity(r, 1.0, 0.0).value < 1e-12);
}

TEST_CASE("rational R depends on the difference only") {
  const RMatrixSpec r = rational_r_matrix(3, 0.4);
  CHECK(max_norm(eval_r(r, 2.5, 1.0) - eval_r(r, 0.5, -1.0)) < 1e-15);
}

TEST_CASE("R evaluation rejects non-finite momenta and bad shapes") {
  const RMatrixSpec r = rational_r_matrix(2, 1.0);
  CHECK_THROWS_AS(eval_r(r, NAN, 0.0), DomainError);
  CHECK_THROWS_AS(eval_r(r, 0.0, INFINITY), DomainError);
  const RMatrixSpec bad = custom_r_matrix(2, "bad", [](double, double) { return Matrix(Matrix::Identity(3, 3)); });
  CHECK_THROWS_AS(eval_r(bad, 0.0, 1.0), std::logic_error);
  CHECK_THROWS_AS(rational_r_matrix(0, 1.0), DomainError);
}

TEST_CASE("g = 0 is the free case") {
  const RMatrixSpec r = rational_r_matrix(2, 0.0);
  CHECK(r.is_free());
  CHECK(max_norm(eval_r(r, 1.0, 2.0) - identity(4)) == 0.0);
  CHECK(max_norm(eval_r(r, 1.0, 1.0) - identity(4)) == 0.0);
  CHECK_FALSE(rational_r_matrix(2, 0.7).is_free());
}

TEST_CASE("Yang-Baxter at the sample triple, coincident momenta and a corrupted factor") {
  const RMatrixSpec r = rational_r_matrix(2, 0.7);
  CHECK(check_yang_baxter(r, 1.3, -0.4, 2.2).value < 1e-12);
  CHECK(check_yang_baxter(r, 0.8, 0.8, 0.8).value < 1e-12);
  const Matrix r13_corrupt = identity(4);  // P -> I turns (uI + igP)/(u+ig) into I
  CHECK(yang_baxter_residual(eval_r(r, 1.3, -0.4), r13_corrupt, eval_r(r, -0.4, 2.2), 2) > 1e-2);
}

TEST_CASE("Yang-Baxter and unitarity on 50 random triples") {
  for (int n : {1, 2, 3}) {
    const RMatrixSpec r = rational_r_matrix(n, 0.7);
    Rng rng(7 + n);
    for (int i = 0; i < 50; ++i) {
      const double k1 = rng.uniform(-4, 4), k2 = rng.uniform(-4, 4), k3 = rng.uniform(-4, 4);
      CHECK(check_yang_baxter(r, k1, k2, k3).value < 1e-12);
      CHECK(check_unitarity(r, k1, k2).value < 1e-12);
    }
  }
}

TEST_CASE("unitarity examples and the scaled negative control") {
  const RMatrixSpec r = rational_r_matrix(3, 1.0);
  CHECK(check_unitarity(r, 2.0, -1.0).value < 1e-12);
  CHECK(check_unitarity(r, 0.3, 0.3).value < 1e-14);
  const RMatrixSpec scaled =
      custom_r_matrix(3, "scaled", [r](double a, double b) { return Matrix(1.01 * eval_r(r, a, b)); });
  CHECK(check_unitarity(scaled, 2.0, -1.0).value == doctest::Approx(0.0201).epsilon(1e-9));
}

TEST_CASE("R21 agrees with an index-permutation implementation") {
  const RMatrixSpec r = rational_r_matrix(3, 0.7);
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    CHECK(max_norm(eval_r21(r, a, b) - oracle::r21_by_indices(eval_r(r, a, b), 3)) == 0.0);
  }
}

TEST_CASE("embedding places factors in the right tensor slots") {
  // R_13 on three factors equals P_23 R_12 P_23.
  const RMatrixSpec r = rational_r_matrix(2, 0.7);
  const Matrix m = eval_r(r, 1.0, -0.5);
  const Matrix p23 = embed_pair(permutation_matrix(2), 2, 1, 2, 3);
  CHECK(max_norm(embed_pair(m, 2, 0, 2, 3) - p23 * embed_pair(m, 2, 0, 1, 3) * p23) < 1e-15);
  // Reversed slot order gives R_21.
  CHECK(max_norm(embed_pair(m, 2, 1, 0, 2) - eval_r21(r, 1.0, -0.5)) < 1e-15);
}

TEST_CASE("reflection families") {
  CHECK(max_norm(eval_b(identity_reflection(3), 0.4) - identity(3)) == 0.0);
  const ReflectionMatrixSpec d = constant_diagonal_reflection({1.0, -1.0});
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK(max_norm(eval_b(d, 0.5) - expected) == 0.0);

  const ReflectionMatrixSpec kd = momentum_diagonal_reflection({1.0, 2.0});
  const Matrix b = eval_b(kd, 1.0);
  CHECK(std::abs(b(0, 0) - Complex(1.0, 1.0) / Complex(1.0, -1.0)) < 1e-15);
  CHECK(std::abs(std::abs(b(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(b(1, 1)) - 1.0) < 1e-15);
  CHECK(b(0, 1) == Complex{});
}

TEST_CASE("B-unitarity") {
  CHECK(check_b_unitarity(identity_reflection(2), 1.3).value == 0.0);
  for (double k : {0.2, 1.0, 3.0, -2.5}) CHECK(check_b_unitarity(momentum_diagonal_reflection({1.0, 0.3}), k).value < 1e-14);
  CHECK(check_b_unitarity(constant_diagonal_reflection({2.0, 1.0}), 0.7).value == doctest::Approx(3.0));
}

TEST_CASE("reflection equation for B = I and constant involutions") {
  const RMatrixSpec r = rational_r_matrix(2, 0.7);
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const double k1 = rng.uniform(-3, 3), k2 = rng.uniform(-3, 3);
    CHECK(check_reflection_equation(r, identity_reflection(2), k1, k2).value < 1e-12);
    CHECK(check_reflection_equation(r, constant_diagonal_reflection({1.0, -1.0}), k1, k2).value < 1e-12);
  }
  // diag(2,1) squares to diag(4,1) != I and breaks the equation away from k1 = -k2.
  CHECK(check_reflection_equation(r, constant_diagonal_reflection({2.0, 1.0}), 1.0, 2.0).value > 1e-2);
}

TEST_CASE("whitelist admits B = I and diag(1,-1), rejects diag(2,1)") {
  const RMatrixSpec r = rational_r_matrix(2, 1.0);
  const std::vector<double> grid{-3, -2, -1, 1, 2, 3};
  CHECK(whitelist_reflection(r, identity_reflection(2), grid, 1e-12).valid);
  const WhitelistResult d = whitelist_reflection(r, constant_diagonal_reflection({1.0, -1.0}), grid, 1e-12);
  CHECK(d.valid);
  CHECK(d.reflection_residual < 1e-12);
  const WhitelistResult bad = whitelist_reflection(r, constant_diagonal_reflection({2.0, 1.0}), grid, 1e-12);
  CHECK_FALSE(bad.valid);
  CHECK(bad.unitarity_residual == doctest::Approx(3.0));
  CHECK_FALSE(bad.cause.empty());
  CHECK_FALSE(whitelist_reflection(r, identity_reflection(3), grid, 1e-12).valid);
}

TEST_CASE("momentum-dependent diagonal family is decided by the checker") {
  const RMatrixSpec r = rational_r_matrix(2, 0.7);
  const std::vector<double> grid{-3, -2, -1, 1, 2, 3};
  // Equal parameters give a scalar B, which always works; distinct ones do not.
  CHECK(whitelist_reflection(r, momentum_diagonal_reflection({1.0, 1.0}), grid, 1e-12).valid);
  CHECK_FALSE(whitelist_reflection(r, momentum_diagonal_reflection({1.0, 2.0}), grid, 1e-12).valid);
}

TEST_CASE("reflection tables") {
  const ReflectionTable t = load_reflection_table(std::string(ZFB_TEST_DATA) + "/b_identity_n2.txt", 2);
  CHECK(t.entries.size() == 6);
  const ReflectionMatrixSpec b = table_reflection(t);
  CHECK(max_norm(eval_b(b, -2.0) - identity(2)) == 0.0);
  CHECK_THROWS_AS(eval_b(b, 0.5), LookupError);
  CHECK(whitelist_reflection(rational_r_matrix(2, 0.7), b, std::vector<double>{-3, -2, -1, 1, 2, 3}, 1e-12).valid);

  const ReflectionMatrixSpec partial =
      table_reflection(load_reflection_table(std::string(ZFB_TEST_DATA) + "/b_partial_n2.txt", 2));
  const WhitelistResult w =
      whitelist_reflection(rational_r_matrix(2, 0.7), partial, std::vector<double>{-2, -1, 1, 2}, 1e-12);
  CHECK_FALSE(w.valid);
  CHECK(w.cause.find("no entry") != std::string::npos);

  CHECK_THROWS_AS(load_reflection_table(std::string(ZFB_TEST_DATA) + "/b_malformed_n2.txt", 2), ConfigError);
  CHECK_THROWS_AS(load_reflection_table("/nonexistent/table.txt", 2), ConfigError);
}
