// Boundary-algebra generators built from a ZF algebra and an admitted B:
//   ~a(k)  = (a(k) + b(k) a(-k)) / 2
//   ~a+(k) = (a+(k) + a+(-k) b(-k)) / 2
// and the exchange relations they satisfy on the Fock representation.
#pragma once

#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "zfb/vertex.hpp"

namespace zfb {

class BoundaryContext {
 public:
  /// Throws ConfigError unless the vertex context was admitted and
  /// b(k) b(-k) = id holds on the vacuum and one-particle sector to 1e-11.
  explicit BoundaryContext(VertexContext vertex);

  const VertexContext& vertex() const { return vertex_; }
  const FockSpace& fock() const { return vertex_.fock(); }

  /// b(k) s, memoised per basis word.
  AuxState b(int k, const FockState& s) const;

 private:
  const AuxState& b_word(int k, const Word& w) const;

  VertexContext vertex_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, Word>, AuxState> cache_;
};

/// Index i of the result is ~a_i(k) s.
std::vector<FockState> a_tilde_all(const BoundaryContext& ctx, int k, const FockState& s);
FockState apply_a_tilde(const BoundaryContext& ctx, int color, int k, const FockState& s);

/// Index i of the result is ~a+_i(k) s.
std::vector<FockState> a_tilde_dagger_all(const BoundaryContext& ctx, int k, const FockState& s);
FockState apply_a_tilde_dagger(const BoundaryContext& ctx, int color, int k, const FockState& s);

/// rho_B(a)(k) = b(k) a(-k) and rho_B(a+)(k) = a+(-k) b(-k).
std::vector<FockState> rho_b_all(const BoundaryContext& ctx, int k, const FockState& s);
std::vector<FockState> rho_b_dagger_all(const BoundaryContext& ctx, int k, const FockState& s);

Factor a_tilde_factor(const BoundaryContext& ctx, SpaceId space, int k);
Factor a_tilde_dagger_factor(const BoundaryContext& ctx, SpaceId space, int k);
Factor cached_b_factor(const BoundaryContext& ctx, SpaceId space, int k);

/// "BNl-1" ... "BNl-5", "eq:bb" and "rbrb" at grid indices (k1, k2).
std::vector<RelationResidual> check_boundary_relations(const BoundaryContext& ctx, int k1, int k2,
                                                       std::span<const FockState> samples);

/// "rho": ~a(k) = b(k) ~a(-k) and "rho-dagger": ~a+(k) = ~a+(-k) b(-k).
std::vector<RelationResidual> check_rho_identity(const BoundaryContext& ctx, int k,
                                                 std::span<const FockState> samples);

/// "rhoB-1" ... "rhoB-3": the ZF relations for rho_B(a), rho_B(a+).
std::vector<RelationResidual> check_rho_B_automorphism(const BoundaryContext& ctx, int k1, int k2,
                                                       std::span<const FockState> samples);

/// "rhoB-involution": b(k) rho_B(a)(-k) = a(k).
double check_rho_B_involution(const BoundaryContext& ctx, int k, std::span<const FockState> samples);

/// "coset": ~a = (a + rho_B(a))/2 and "coset-dagger" for ~a+.
std::vector<RelationResidual> check_coset_identity(const BoundaryContext& ctx, int k,
                                                   std::span<const FockState> samples);

/// max over k, i of |~a_i(k) Omega|.
double check_a_tilde_vacuum(const BoundaryContext& ctx);

}  // namespace zfb
