#include <doctest.h>

#include "zfb/operator_identity.hpp"
#include "zfb/sampling.hpp"
#include "zfb/zf_relations.hpp"

using namespace zfb;

namespace {

FockSpace space() { return FockSpace(SpectralGrid({-2, -1, 1, 2}), rational_r_matrix(2, 0.9), 4); }

}  // namespace

TEST_CASE("c-number identities") {
  const FockSpace f = space();
  const std::vector<FockState> states{vacuum()};
  const Factor p12 = Factor::pair(1, 2, permutation_matrix(2));
  const Factor id12 = Factor::pair(1, 2, Matrix::Identity(4, 4));
  CHECK(identity_residual({{1.0, {p12, p12}}}, {{1.0, {id12}}}, states, 2, 1e-14) == 0.0);
  // Unitarity in tensor notation: R_12(x,y) R_21(y,x) = 1.
  const Factor r12 = r_factor(f, 1, 2, 0, 3);
  const Factor r21 = r_factor(f, 2, 1, 3, 0);
  CHECK(identity_residual({{1.0, {r12, r21}}}, {{1.0, {id12}}}, states, 2, 1e-14) < 1e-15);
  // The rational R is P-symmetric, so R_12 = R_21 there; a generic matrix tells the spaces apart.
  CHECK(identity_residual({{1.0, {r12}}}, {{1.0, {r_factor(f, 2, 1, 0, 3)}}}, states, 2, 1e-14) < 1e-15);
  Matrix m(4, 4);
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = Complex(i + 1, i % 3);
  CHECK(identity_residual({{1.0, {Factor::pair(1, 2, m)}}}, {{1.0, {Factor::pair(2, 1, m)}}}, states, 2, 1e-14) >
        1.0);
}

TEST_CASE("slot structure of a mixed product") {
  const FockSpace f = space();
  const Factor a1 = annihilator(f, 1, 0);
  const Factor c2 = creator(f, 2, 1);
  const TensorState x = evaluate(Term{1.0, {c2, r_factor(f, 1, 2, 0, 1), a1}}, vacuum(), 2, 1e-14);
  CHECK(x.slots() == std::vector<Slot>{{1, false}, {2, true}});
  const TensorState y = evaluate(Term{1.0, {a1, c2}}, vacuum(), 2, 1e-14);
  CHECK(y.slots() == x.slots());
}

TEST_CASE("malformed products are rejected") {
  const FockSpace f = space();
  const Factor a1 = annihilator(f, 1, 0);
  const Factor c1 = creator(f, 1, 0);
  // Two output indices in space 1.
  CHECK_THROWS_AS(evaluate(Term{1.0, {a1, a1}}, vacuum(), 2, 1e-14), std::logic_error);
  // Two input indices in space 1.
  CHECK_THROWS_AS(evaluate(Term{1.0, {c1, c1}}, vacuum(), 2, 1e-14), std::logic_error);
  // Sides with different index structure.
  CHECK_THROWS_AS(identity_residual({{1.0, {a1}}}, {{1.0, {c1}}}, std::vector<FockState>{vacuum()}, 2, 1e-14),
                  std::logic_error);
}

TEST_CASE("wrong relations are detected") {
  const FockSpace f = space();
  const auto states = states_of(basis_samples(f, 2));
  const Factor a1 = annihilator(f, 1, 1);
  const Factor c2 = creator(f, 2, 1);
  // Dropping the contact term of a_1 a+_2 at equal momenta.
  CHECK(identity_residual({{1.0, {a1, c2}}}, {{1.0, {c2, r_factor(f, 1, 2, 1, 1), a1}}}, states, 2, 1e-14) > 0.5);
  // R_12 in place of R_21 in a_1 a_2 = R_21 a_2 a_1.
  const Factor a2 = annihilator(f, 2, 3);
  CHECK(identity_residual({{1.0, {a1, a2}}}, {{1.0, {r_factor(f, 1, 2, 1, 3), a2, a1}}}, states, 2, 1e-14) > 1e-3);
}
