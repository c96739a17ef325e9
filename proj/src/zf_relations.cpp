#include "zfb/zf_relations.hpp"

namespace zfb {

Factor annihilator(const FockSpace& fock, SpaceId space, int k) {
  return Factor::column(space, [&fock, k](const FockState& s) { return annihilate_all(fock, k, s); });
}

Factor creator(const FockSpace& fock, SpaceId space, int k) {
  return Factor::row(space, [&fock, k](const FockState& s) { return create_all(fock, k, s); });
}

Factor r_factor(const FockSpace& fock, SpaceId first, SpaceId second, int a, int b) {
  return Factor::pair(first, second, fock.r(a, b));
}

std::vector<RelationResidual> check_zf_relations(const FockSpace& fock, int k1, int k2,
                                                 std::span<const FockState> samples) {
  const int n = fock.colors();
  const double prune = fock.prune_threshold();
  const Factor a1 = annihilator(fock, 1, k1);
  const Factor a2 = annihilator(fock, 2, k2);
  const Factor c1 = creator(fock, 1, k1);
  const Factor c2 = creator(fock, 2, k2);
  const Factor r21 = r_factor(fock, 2, 1, k2, k1);
  const Factor r12 = r_factor(fock, 1, 2, k1, k2);

  std::vector<RelationResidual> out;
  out.push_back({"AN-1", identity_residual({{1.0, {a1, a2}}}, {{1.0, {r21, a2, a1}}}, samples, n, prune)});
  out.push_back({"AN-2", identity_residual({{1.0, {c1, c2}}}, {{1.0, {c2, c1, r21}}}, samples, n, prune)});
  Expression rhs3{{1.0, {c2, r12, a1}}};
  if (k1 == k2) rhs3.push_back({1.0, {Factor::link(1, 2, n, 1.0)}});
  out.push_back({"AN-3", identity_residual({{1.0, {a1, c2}}}, rhs3, samples, n, prune)});
  return out;
}

}  // namespace zfb
