#include "zfb/boundary.hpp"

#include "zfb/zf_relations.hpp"

namespace zfb {

BoundaryContext::BoundaryContext(VertexContext vertex) : vertex_(std::move(vertex)) {
  if (!vertex_.admitted())
    throw ConfigError("boundary context needs an admitted reflection matrix: " + vertex_.whitelist().cause);
  std::vector<FockState> probe{vacuum()};
  for (auto& s : canonical_basis(fock(), 1)) probe.push_back(std::move(s));
  for (int k = 0; k < fock().grid().size(); ++k) {
    const double r = check_b_involution(vertex_, k, probe);
    if (r >= 1e-11)
      throw ConfigError("b(k)b(-k) = id fails at k=" + format_real(fock().grid().momentum(k)) +
                        " (residual " + format_real(r) + ")");
  }
}

const AuxState& BoundaryContext::b_word(int k, const Word& w) const {
  const auto key = std::make_pair(k, w);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  AuxState img = apply_b(vertex_, k, FockState::basis(w));
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(key, std::move(img)).first->second;
}

AuxState BoundaryContext::b(int k, const FockState& s) const {
  fock().require_index(k);
  AuxState out(fock().colors());
  for (const auto& [w, amp] : s) out.add_scaled(b_word(k, w), amp);
  out.prune(fock().prune_threshold());
  return out;
}

std::vector<FockState> rho_b_all(const BoundaryContext& ctx, int k, const FockState& s) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const std::vector<FockState> am = annihilate_all(fock, fock.grid().negated(k), s);
  std::vector<FockState> out(n);
  for (int j = 0; j < n; ++j) {
    if (am[j].empty()) continue;
    const AuxState bj = ctx.b(k, am[j]);
    for (int i = 0; i < n; ++i) out[i] += bj(i, j);
  }
  for (auto& st : out) st.prune(fock.prune_threshold());
  return out;
}

std::vector<FockState> rho_b_dagger_all(const BoundaryContext& ctx, int k, const FockState& s) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const int mk = fock.grid().negated(k);
  fock.require_capacity(s.max_particles() + 1);
  const AuxState bm = ctx.b(mk, s);
  std::vector<FockState> out(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!bm(j, i).empty()) out[i] += apply_creation(fock, j, mk, bm(j, i));
  for (auto& st : out) st.prune(fock.prune_threshold());
  return out;
}

namespace {

std::vector<FockState> half_sum(std::vector<FockState> a, const std::vector<FockState>& b, double prune) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] += b[i];
    a[i] *= 0.5;
    a[i].prune(prune);
  }
  return a;
}

}  // namespace

std::vector<FockState> a_tilde_all(const BoundaryContext& ctx, int k, const FockState& s) {
  return half_sum(annihilate_all(ctx.fock(), k, s), rho_b_all(ctx, k, s), ctx.fock().prune_threshold());
}

FockState apply_a_tilde(const BoundaryContext& ctx, int color, int k, const FockState& s) {
  ctx.fock().require_color(color);
  return a_tilde_all(ctx, k, s)[color];
}

std::vector<FockState> a_tilde_dagger_all(const BoundaryContext& ctx, int k, const FockState& s) {
  return half_sum(create_all(ctx.fock(), k, s), rho_b_dagger_all(ctx, k, s), ctx.fock().prune_threshold());
}

FockState apply_a_tilde_dagger(const BoundaryContext& ctx, int color, int k, const FockState& s) {
  ctx.fock().require_color(color);
  return a_tilde_dagger_all(ctx, k, s)[color];
}

Factor a_tilde_factor(const BoundaryContext& ctx, SpaceId space, int k) {
  return Factor::column(space, [&ctx, k](const FockState& s) { return a_tilde_all(ctx, k, s); });
}

Factor a_tilde_dagger_factor(const BoundaryContext& ctx, SpaceId space, int k) {
  return Factor::row(space, [&ctx, k](const FockState& s) { return a_tilde_dagger_all(ctx, k, s); });
}

Factor cached_b_factor(const BoundaryContext& ctx, SpaceId space, int k) {
  return aux_factor(space, [&ctx, k](const FockState& s) { return ctx.b(k, s); });
}

std::vector<RelationResidual> check_boundary_relations(const BoundaryContext& ctx, int k1, int k2,
                                                       std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const double prune = fock.prune_threshold();
  const int m1 = fock.grid().negated(k1);
  const int m2 = fock.grid().negated(k2);
  const Factor a1 = a_tilde_factor(ctx, 1, k1);
  const Factor a2 = a_tilde_factor(ctx, 2, k2);
  const Factor c1 = a_tilde_dagger_factor(ctx, 1, k1);
  const Factor c2 = a_tilde_dagger_factor(ctx, 2, k2);
  const Factor b1 = cached_b_factor(ctx, 1, k1);
  const Factor b2 = cached_b_factor(ctx, 2, k2);
  const Factor r12 = r_factor(fock, 1, 2, k1, k2);
  const Factor r21 = r_factor(fock, 2, 1, k2, k1);
  const Factor r12p = r_factor(fock, 1, 2, k1, m2);
  const Factor r21p = r_factor(fock, 2, 1, k2, m1);
  const Factor r21bar = r_factor(fock, 2, 1, m2, m1);

  Expression rhs3{{1.0, {c2, r12, a1}}};
  if (k1 == k2) rhs3.push_back({0.5, {Factor::link(1, 2, n, 1.0)}});
  if (k1 == m2)
    rhs3.push_back({0.5, {Factor::bridge(1, 2, [&ctx, k1](const FockState& s) { return ctx.b(k1, s).flat(); })}});

  std::vector<RelationResidual> out;
  out.push_back({"BNl-1", identity_residual({{1.0, {a1, a2}}}, {{1.0, {r21, a2, a1}}}, samples, n, prune)});
  out.push_back({"BNl-2", identity_residual({{1.0, {c1, c2}}}, {{1.0, {c2, c1, r21}}}, samples, n, prune)});
  out.push_back({"BNl-3", identity_residual({{1.0, {a1, c2}}}, rhs3, samples, n, prune)});
  out.push_back({"BNl-4", identity_residual({{1.0, {a1, b2}}}, {{1.0, {r21, b2, r12p, a1}}}, samples, n, prune)});
  out.push_back({"BNl-5", identity_residual({{1.0, {b1, c2}}}, {{1.0, {c2, r12, b1, r21p}}}, samples, n, prune)});
  out.push_back({"eq:bb", identity_residual({{1.0, {r12, b1, r21p, b2}}}, {{1.0, {b2, r12p, b1, r21bar}}},
                                            samples, n, prune)});
  const Factor bm1 = cached_b_factor(ctx, 1, m1);
  out.push_back({"rbrb", identity_residual({{1.0, {b1, bm1}}}, {{1.0, {Factor::link(1, 1, n, 1.0)}}}, samples,
                                           n, prune)});
  return out;
}

std::vector<RelationResidual> check_rho_identity(const BoundaryContext& ctx, int k,
                                                 std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const int mk = fock.grid().negated(k);
  const Factor a = a_tilde_factor(ctx, 1, k);
  const Factor am = a_tilde_factor(ctx, 1, mk);
  const Factor c = a_tilde_dagger_factor(ctx, 1, k);
  const Factor cm = a_tilde_dagger_factor(ctx, 1, mk);
  const Factor b = cached_b_factor(ctx, 1, k);
  const Factor bm = cached_b_factor(ctx, 1, mk);
  return {
      {"rho", identity_residual({{1.0, {a}}}, {{1.0, {b, am}}}, samples, n, fock.prune_threshold())},
      {"rho-dagger", identity_residual({{1.0, {c}}}, {{1.0, {cm, bm}}}, samples, n, fock.prune_threshold())},
  };
}

std::vector<RelationResidual> check_rho_B_automorphism(const BoundaryContext& ctx, int k1, int k2,
                                                       std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const double prune = fock.prune_threshold();
  auto alpha = [&ctx](SpaceId sp, int k) {
    return Factor::column(sp, [&ctx, k](const FockState& s) { return rho_b_all(ctx, k, s); });
  };
  auto alpha_dagger = [&ctx](SpaceId sp, int k) {
    return Factor::row(sp, [&ctx, k](const FockState& s) { return rho_b_dagger_all(ctx, k, s); });
  };
  const Factor a1 = alpha(1, k1);
  const Factor a2 = alpha(2, k2);
  const Factor c1 = alpha_dagger(1, k1);
  const Factor c2 = alpha_dagger(2, k2);
  const Factor r12 = r_factor(fock, 1, 2, k1, k2);
  const Factor r21 = r_factor(fock, 2, 1, k2, k1);
  Expression rhs3{{1.0, {c2, r12, a1}}};
  if (k1 == k2) rhs3.push_back({1.0, {Factor::link(1, 2, n, 1.0)}});
  return {
      {"rhoB-1", identity_residual({{1.0, {a1, a2}}}, {{1.0, {r21, a2, a1}}}, samples, n, prune)},
      {"rhoB-2", identity_residual({{1.0, {c1, c2}}}, {{1.0, {c2, c1, r21}}}, samples, n, prune)},
      {"rhoB-3", identity_residual({{1.0, {a1, c2}}}, rhs3, samples, n, prune)},
  };
}

double check_rho_B_involution(const BoundaryContext& ctx, int k, std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int mk = fock.grid().negated(k);
  const Factor b = cached_b_factor(ctx, 1, k);
  const Factor am = Factor::column(1, [&ctx, mk](const FockState& s) { return rho_b_all(ctx, mk, s); });
  return identity_residual({{1.0, {b, am}}}, {{1.0, {annihilator(fock, 1, k)}}}, samples, fock.colors(),
                           fock.prune_threshold());
}

std::vector<RelationResidual> check_coset_identity(const BoundaryContext& ctx, int k,
                                                   std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const double prune = fock.prune_threshold();
  const Factor alpha = Factor::column(1, [&ctx, k](const FockState& s) { return rho_b_all(ctx, k, s); });
  const Factor alpha_dagger =
      Factor::row(1, [&ctx, k](const FockState& s) { return rho_b_dagger_all(ctx, k, s); });
  return {
      {"coset", identity_residual({{1.0, {a_tilde_factor(ctx, 1, k)}}},
                                  {{0.5, {annihilator(fock, 1, k)}}, {0.5, {alpha}}}, samples, n, prune)},
      {"coset-dagger", identity_residual({{1.0, {a_tilde_dagger_factor(ctx, 1, k)}}},
                                         {{0.5, {creator(fock, 1, k)}}, {0.5, {alpha_dagger}}}, samples, n,
                                         prune)},
  };
}

double check_a_tilde_vacuum(const BoundaryContext& ctx) {
  double worst = 0.0;
  for (int k = 0; k < ctx.fock().grid().size(); ++k)
    for (const auto& s : a_tilde_all(ctx, k, vacuum())) worst = std::max(worst, s.max_abs());
  return worst;
}

}  // namespace zfb
