#include <doctest.h>

#include <cmath>

#include "zfb/hierarchy.hpp"
#include "zfb/sampling.hpp"

using namespace zfb;

namespace {

std::shared_ptr<const FockSpace> space() {
  return std::make_shared<const FockSpace>(SpectralGrid({-3, -2, -1, 1, 2, 3}), rational_r_matrix(2, 0.7), 5);
}

std::vector<FockState> samples(const FockSpace& f, int max_basis, int random3) {
  Rng rng(29);
  auto s = basis_samples(f, max_basis);
  auto extra = random_samples(f, 3, random3, rng);
  s.insert(s.end(), extra.begin(), extra.end());
  return states_of(s);
}

}  // namespace

TEST_CASE("even orders kill the vacuum, one-particle eigenvalues are k^n") {
  const auto f = space();
  const BoundaryContext ctx(VertexContext::whitelisted(f, constant_diagonal_reflection({1.0, -1.0})));
  for (int n : {0, 2, 4}) {
    CHECK(apply_H(ctx, n, vacuum()).empty());
    for (int k = 0; k < 6; ++k) CHECK(check_one_particle_eigenvalue(ctx, n, k) < 1e-11);
  }
}

TEST_CASE("odd orders vanish") {
  const auto f = space();
  const auto s = samples(*f, 2, 8);
  const BoundaryContext ctx(VertexContext::whitelisted(f, identity_reflection(2)));
  for (int n : {1, 3, 5}) CHECK(check_vanishing(ctx, n, s) < 1e-10);
}

TEST_CASE("H preserves particle number") {
  const auto f = space();
  const BoundaryContext ctx(VertexContext::whitelisted(f, identity_reflection(2)));
  Rng rng(4);
  for (const Sample& s : random_samples(*f, 2, 6, rng)) {
    const FockState h = apply_H(ctx, 2, s.state);
    CHECK(h.min_particles() == 2);
    CHECK(h.max_particles() == 2);
  }
}

TEST_CASE("commuting flow and integrals of motion") {
  const auto f = space();
  const auto s = samples(*f, 1, 3);
  const BoundaryContext ctx(VertexContext::whitelisted(f, constant_diagonal_reflection({1.0, -1.0})));
  CHECK(check_flow_commutes(ctx, 2, 4, s) < 1e-9);
  CHECK(check_flow_commutes(ctx, 0, 2, s) < 1e-11);
  CHECK(check_flow_commutes(ctx, 2, 2, s) == 0.0);
  for (int k = 0; k < 6; ++k) {
    CHECK(check_integrals_of_motion(ctx, 2, k, s) < 1e-9);
    CHECK(check_integrals_of_motion(ctx, 4, k, std::vector<FockState>{vacuum()}) == 0.0);
  }
}

TEST_CASE("eigenrelations") {
  const auto f = space();
  const auto s = samples(*f, 1, 2);
  const BoundaryContext ctx(VertexContext::whitelisted(f, identity_reflection(2)));
  for (int n : {0, 1, 2, 3})
    for (int k = 0; k < 6; ++k)
      for (const auto& rr : check_eigenrelations(ctx, n, k, s)) CHECK_MESSAGE(rr.value < 1e-10, rr.relation, " n=", n);
}

TEST_CASE("a wrong eigenvalue is detected") {
  const auto f = space();
  const BoundaryContext ctx(VertexContext::whitelisted(f, identity_reflection(2)));
  const FockState one = apply_a_tilde_dagger(ctx, 0, 5, vacuum());
  CHECK(max_deviation(apply_H(ctx, 2, one), 4.0 * one) > 1.0);
}

TEST_CASE("spontaneous symmetry breaking") {
  const auto f = space();
  const BoundaryContext id(VertexContext::whitelisted(f, identity_reflection(2)));
  const SymmetryBreaking a = check_symmetry_breaking(id);
  CHECK(a.residual < 1e-12);
  CHECK(a.matches_b);
  CHECK(a.broken.size() == 12);
  for (const auto& g : a.broken) CHECK(g.i == g.j);

  const BoundaryContext d(VertexContext::whitelisted(f, constant_diagonal_reflection({1.0, -1.0})));
  const SymmetryBreaking b = check_symmetry_breaking(d);
  CHECK(b.residual < 1e-12);
  CHECK(b.matches_b);
  for (const auto& g : b.broken) {
    CHECK(g.i == g.j);
    CHECK(std::abs(g.expectation - Complex(g.i == 0 ? 1.0 : -1.0)) < 1e-13);
  }
  for (int k = 0; k < 6; ++k) {
    const AuxState img = d.b(k, vacuum());
    CHECK(img(0, 1).max_abs() < 1e-13);
    CHECK(img(1, 0).max_abs() < 1e-13);
  }
}

TEST_CASE("one-particle spectrum") {
  const auto f = space();
  const BoundaryContext ctx(VertexContext::whitelisted(f, constant_diagonal_reflection({1.0, -1.0})));
  for (int n : {0, 2, 4}) {
    const SpectrumCheck sc = check_one_particle_spectrum(ctx, n);
    CHECK(sc.residual < 1e-10);
    CHECK(sc.eigenvalues.size() == 12);
  }
  const SpectrumCheck two = check_one_particle_spectrum(ctx, 2);
  CHECK(two.expected == std::vector<double>{0, 0, 0, 0, 0, 0, 1, 1, 4, 4, 9, 9});
}
