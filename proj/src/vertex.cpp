#include "zfb/vertex.hpp"

#include <optional>

namespace zfb {

VertexContext::VertexContext(std::shared_ptr<const FockSpace> fock, ReflectionMatrixSpec b,
                             WhitelistResult w)
    : fock_(std::move(fock)), b_(std::move(b)), whitelist_(std::move(w)) {
  if (fock_->colors() != b_.n) throw ConfigError("R and B have different colour dimensions");
  for (double k : fock_->grid().momenta()) b_cache_.push_back(eval_b(b_, k));
}

VertexContext VertexContext::whitelisted(std::shared_ptr<const FockSpace> fock,
                                         ReflectionMatrixSpec b, double tol) {
  WhitelistResult w = whitelist_reflection(fock->r_spec(), b, fock->grid().momenta(), tol);
  if (!w.valid) throw ConfigError("reflection matrix " + b.describe() + " not admitted: " + w.cause);
  return VertexContext(std::move(fock), std::move(b), std::move(w));
}

VertexContext VertexContext::unchecked(std::shared_ptr<const FockSpace> fock, ReflectionMatrixSpec b) {
  WhitelistResult w;
  w.cause = "admission skipped";
  return VertexContext(std::move(fock), std::move(b), std::move(w));
}

namespace {

// R(k0, p) for every grid index p, evaluated on first use.
class RowCache {
 public:
  RowCache(const FockSpace& fock, double k0) : fock_(fock), k0_(k0), grid_k0_(fock.grid().index_of(k0)) {
    cache_.resize(fock.grid().size());
    back_.resize(fock.grid().size());
  }

  const Matrix& forward(int p) {  // R_12(k0, p)
    if (grid_k0_) return fock_.r(*grid_k0_, p);
    auto& slot = cache_[p];
    if (!slot) slot = eval_r(fock_.r_spec(), k0_, fock_.grid().momentum(p));
    return *slot;
  }

  const Matrix& backward(int p) {  // R_12(p, k0)
    if (grid_k0_) return fock_.r(p, *grid_k0_);
    auto& slot = back_[p];
    if (!slot) slot = eval_r(fock_.r_spec(), fock_.grid().momentum(p), k0_);
    return *slot;
  }

 private:
  const FockSpace& fock_;
  double k0_;
  std::optional<int> grid_k0_;
  std::vector<std::optional<Matrix>> cache_;
  std::vector<std::optional<Matrix>> back_;
};

AuxState t_suffix(const FockSpace& fock, RowCache& rows, const Word& w, int from) {
  const int n = fock.colors();
  if (from == w.size()) return AuxState::diagonal(n, FockState::basis(Word{}));
  const AuxState sub = t_suffix(fock, rows, w, from + 1);
  const Letter head = w[from];
  const Matrix& r = rows.forward(head.k);
  AuxState out(n);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      const Letter l{head.k, static_cast<std::uint8_t>(d)};
      for (int g = 0; g < n; ++g) {
        const Complex c = r(a * n + d, g * n + head.color);
        if (c == Complex{}) continue;
        for (int b = 0; b < n; ++b)
          for (const auto& [v, amp] : sub(g, b)) out(a, b).add(v.prepended(l), c * amp);
      }
    }
  return out;
}

AuxState t_inverse_suffix(const FockSpace& fock, RowCache& rows, const Word& w, int from) {
  const int n = fock.colors();
  if (from == w.size()) return AuxState::diagonal(n, FockState::basis(Word{}));
  const AuxState sub = t_inverse_suffix(fock, rows, w, from + 1);
  const Letter head = w[from];
  // R_01(k0,p)^-1 = R_10(p,k0): entry ((g,d),(b,c)) is R_12(p,k0)_{(d,g),(c,b)}.
  const Matrix& r = rows.backward(head.k);
  AuxState out(n);
  for (int g = 0; g < n; ++g)
    for (int d = 0; d < n; ++d) {
      const Letter l{head.k, static_cast<std::uint8_t>(d)};
      for (int b = 0; b < n; ++b) {
        const Complex c = r(d * n + g, head.color * n + b);
        if (c == Complex{}) continue;
        for (int a = 0; a < n; ++a)
          for (const auto& [v, amp] : sub(a, g)) out(a, b).add(v.prepended(l), c * amp);
      }
    }
  return out;
}

AuxState finish(const FockSpace& fock, AuxState x) {
  if (fock.coincident_order() == CoincidentOrder::kSymmetric)
    for (auto& e : x.flat()) e = canonicalize(fock, e.terms());
  x.prune(fock.prune_threshold());
  return x;
}

}  // namespace

AuxState apply_T(const FockSpace& fock, double k0, const FockState& s) {
  RowCache rows(fock, k0);
  AuxState out(fock.colors());
  for (const auto& [w, amp] : s) out.add_scaled(t_suffix(fock, rows, w, 0), amp);
  return finish(fock, std::move(out));
}

AuxState apply_T_inverse(const FockSpace& fock, double k0, const FockState& s) {
  RowCache rows(fock, k0);
  AuxState out(fock.colors());
  for (const auto& [w, amp] : s) out.add_scaled(t_inverse_suffix(fock, rows, w, 0), amp);
  return finish(fock, std::move(out));
}

AuxState compose(const FockSpace& fock, const AuxOperator& outer, const AuxState& inner) {
  const int n = fock.colors();
  AuxState out(n);
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) {
      if (inner(c, b).empty()) continue;
      const AuxState img = outer(inner(c, b));
      for (int a = 0; a < n; ++a) out(a, b) += img(a, c);
    }
  out.prune(fock.prune_threshold());
  return out;
}

AuxState apply_b(const VertexContext& ctx, int k, const FockState& s) {
  const FockSpace& fock = ctx.fock();
  fock.require_index(k);
  const double km = fock.grid().momentum(k);
  const AuxState inner = left_multiply(ctx.b_matrix(k), apply_T_inverse(fock, -km, s));
  return compose(fock, [&fock, km](const FockState& x) { return apply_T(fock, km, x); }, inner);
}

Factor aux_factor(SpaceId space, AuxOperator op) {
  return Factor::square(space, [op = std::move(op)](const FockState& s) { return op(s).flat(); });
}

Factor t_factor(const FockSpace& fock, SpaceId space, double k0) {
  return aux_factor(space, [&fock, k0](const FockState& s) { return apply_T(fock, k0, s); });
}

Factor t_inverse_factor(const FockSpace& fock, SpaceId space, double k0) {
  return aux_factor(space, [&fock, k0](const FockState& s) { return apply_T_inverse(fock, k0, s); });
}

Factor b_factor(const VertexContext& ctx, SpaceId space, int k) {
  return aux_factor(space, [&ctx, k](const FockState& s) { return apply_b(ctx, k, s); });
}

double check_rtt(const FockSpace& fock, double k1, double k2, std::span<const FockState> samples) {
  const Factor r12 = Factor::pair(1, 2, eval_r(fock.r_spec(), k1, k2));
  const Factor t1 = t_factor(fock, 1, k1);
  const Factor t2 = t_factor(fock, 2, k2);
  return identity_residual({{1.0, {r12, t1, t2}}}, {{1.0, {t2, t1, r12}}}, samples, fock.colors(),
                           fock.prune_threshold());
}

std::vector<RelationResidual> check_T_intertwining(const FockSpace& fock, double k0, int k,
                                                   std::span<const FockState> samples) {
  const int n = fock.colors();
  const double p = fock.grid().momentum(k);
  const Factor t1 = t_factor(fock, 1, k0);
  const Factor c2 = Factor::row(2, [&fock, k](const FockState& s) { return create_all(fock, k, s); });
  const Factor a2 = Factor::column(2, [&fock, k](const FockState& s) { return annihilate_all(fock, k, s); });
  const Factor r12 = Factor::pair(1, 2, eval_r(fock.r_spec(), k0, p));
  const Factor r21 = Factor::pair(2, 1, eval_r(fock.r_spec(), p, k0));
  return {
      {"defT-creation", identity_residual({{1.0, {t1, c2}}}, {{1.0, {c2, r12, t1}}}, samples, n,
                                          fock.prune_threshold())},
      {"defT-annihilation", identity_residual({{1.0, {t1, a2}}}, {{1.0, {r21, a2, t1}}}, samples, n,
                                              fock.prune_threshold())},
  };
}

double check_T_inverse(const FockSpace& fock, double k0, std::span<const FockState> samples) {
  const int n = fock.colors();
  const Factor t = t_factor(fock, 1, k0);
  const Factor ti = t_inverse_factor(fock, 1, k0);
  const Factor id = Factor::link(1, 1, n, 1.0);
  return std::max(
      identity_residual({{1.0, {t, ti}}}, {{1.0, {id}}}, samples, n, fock.prune_threshold()),
      identity_residual({{1.0, {ti, t}}}, {{1.0, {id}}}, samples, n, fock.prune_threshold()));
}

std::vector<RelationResidual> check_b_exchange(const VertexContext& ctx, int k1, int k2,
                                               std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  const double prune = fock.prune_threshold();
  const int m1 = fock.grid().negated(k1);
  const int m2 = fock.grid().negated(k2);
  const Factor a1 = Factor::column(1, [&fock, k1](const FockState& s) { return annihilate_all(fock, k1, s); });
  const Factor c2 = Factor::row(2, [&fock, k2](const FockState& s) { return create_all(fock, k2, s); });
  const Factor b1 = b_factor(ctx, 1, k1);
  const Factor b2 = b_factor(ctx, 2, k2);
  const Factor r12 = Factor::pair(1, 2, fock.r(k1, k2));
  const Factor r21 = Factor::pair(2, 1, fock.r(k2, k1));
  const Factor r12p = Factor::pair(1, 2, fock.r(k1, m2));
  const Factor r21p = Factor::pair(2, 1, fock.r(k2, m1));
  const Factor r21bar = Factor::pair(2, 1, fock.r(m2, m1));
  return {
      {"eq:ab", identity_residual({{1.0, {a1, b2}}}, {{1.0, {r21, b2, r12p, a1}}}, samples, n, prune)},
      {"eq:bad", identity_residual({{1.0, {b1, c2}}}, {{1.0, {c2, r12, b1, r21p}}}, samples, n, prune)},
      {"eq:bb", identity_residual({{1.0, {r12, b1, r21p, b2}}}, {{1.0, {b2, r12p, b1, r21bar}}}, samples,
                                  n, prune)},
  };
}

double check_b_involution(const VertexContext& ctx, int k, std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const Factor b = b_factor(ctx, 1, k);
  const Factor bm = b_factor(ctx, 1, fock.grid().negated(k));
  return identity_residual({{1.0, {b, bm}}}, {{1.0, {Factor::link(1, 1, fock.colors(), 1.0)}}}, samples,
                           fock.colors(), fock.prune_threshold());
}

double check_b_vacuum(const VertexContext& ctx) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  double worst = 0.0;
  for (int k = 0; k < fock.grid().size(); ++k) {
    const AuxState img = apply_b(ctx, k, vacuum());
    AuxState expected(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) expected(i, j) = FockState::basis(Word{}, ctx.b_matrix(k)(i, j));
    worst = std::max(worst, max_deviation(img, expected));
  }
  return worst;
}

}  // namespace zfb
