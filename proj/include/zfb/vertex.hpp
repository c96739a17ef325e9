// Well-bred vertex operator T(k), its inverse, and b(k) = T(k) B(k) T(-k)^-1.
//
// T is fixed by T(k0) Omega = Omega and T_0 a+_1 = a+_1 R_01 T_0, which give
// the closed form
//   T^{ab}(k0) a+_{c1}(p1)...a+_{cn}(pn) Omega
//     = sum_d [R_01(k0,p1) ... R_0n(k0,pn)]_{(a,d),(b,c)} a+_{d1}(p1)...a+_{dn}(pn) Omega.
// Aux space 0 carries the AuxState indices; composition is right to left.
//
// One particle, N = 2: T^{ab}(k0) a+_c(p) Omega = sum_d R(k0,p)_{(a,d),(b,c)} a+_d(p) Omega,
// so T^{00}(k0) a+_1(p) Omega = R_{(0,0),(0,1)} a+_0(p) Omega + R_{(0,1),(0,1)} a+_1(p) Omega.
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "zfb/aux_state.hpp"
#include "zfb/operator_identity.hpp"

namespace zfb {

class VertexContext {
 public:
  /// Runs the reflection whitelist on the grid and throws ConfigError if B
  /// is not admitted.
  static VertexContext whitelisted(std::shared_ptr<const FockSpace> fock, ReflectionMatrixSpec b,
                                   double tol = 1e-12);
  /// Skips admission; for negative controls only.
  static VertexContext unchecked(std::shared_ptr<const FockSpace> fock, ReflectionMatrixSpec b);

  const FockSpace& fock() const { return *fock_; }
  const std::shared_ptr<const FockSpace>& fock_ptr() const { return fock_; }
  const ReflectionMatrixSpec& reflection() const { return b_; }
  bool admitted() const { return whitelist_.valid; }
  const WhitelistResult& whitelist() const { return whitelist_; }

  /// B(k_index), evaluated once per grid momentum.
  const Matrix& b_matrix(int k) const { return b_cache_[k]; }

 private:
  VertexContext(std::shared_ptr<const FockSpace> fock, ReflectionMatrixSpec b, WhitelistResult w);

  std::shared_ptr<const FockSpace> fock_;
  ReflectionMatrixSpec b_;
  WhitelistResult whitelist_;
  std::vector<Matrix> b_cache_;
};

/// T(k0) s for arbitrary real k0.
AuxState apply_T(const FockSpace& fock, double k0, const FockState& s);
AuxState apply_T_inverse(const FockSpace& fock, double k0, const FockState& s);

/// b(k) s at grid index k.
AuxState apply_b(const VertexContext& ctx, int k, const FockState& s);

/// (X Y)(a,b) = sum_c X(a,c) Y(c,b) where X is the operator applied last.
using AuxOperator = std::function<AuxState(const FockState&)>;
AuxState compose(const FockSpace& fock, const AuxOperator& outer, const AuxState& inner);

Factor t_factor(const FockSpace& fock, SpaceId space, double k0);
Factor t_inverse_factor(const FockSpace& fock, SpaceId space, double k0);
Factor b_factor(const VertexContext& ctx, SpaceId space, int k);
Factor aux_factor(SpaceId space, AuxOperator op);

/// R_12 T_1 T_2 = T_2 T_1 R_12 at (k1, k2).
double check_rtt(const FockSpace& fock, double k1, double k2, std::span<const FockState> samples);

/// "defT-creation": T_0 a+_1 = a+_1 R_01 T_0 and "defT-annihilation":
/// T_0 a_1 = R_10 a_1 T_0, with k0 real and k a grid index.
std::vector<RelationResidual> check_T_intertwining(const FockSpace& fock, double k0, int k,
                                                   std::span<const FockState> samples);

/// max of |T(k0) T^-1(k0) s - s| and |T^-1(k0) T(k0) s - s|.
double check_T_inverse(const FockSpace& fock, double k0, std::span<const FockState> samples);

/// "eq:ab", "eq:bad" and "eq:bb" at grid indices (k1, k2).
std::vector<RelationResidual> check_b_exchange(const VertexContext& ctx, int k1, int k2,
                                               std::span<const FockState> samples);

/// b(k) b(-k) = id.
double check_b_involution(const VertexContext& ctx, int k, std::span<const FockState> samples);

/// max_k |b(k) Omega - B(k) Omega|.
double check_b_vacuum(const VertexContext& ctx);

}  // namespace zfb
