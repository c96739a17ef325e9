// Hierarchy H^(n) = sum_{k in grid} k^n ~a+(k) . ~a(k) on the boundary Fock space.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "zfb/boundary.hpp"

namespace zfb {

FockState apply_H(const BoundaryContext& ctx, int order, const FockState& s);

Factor h_factor(const BoundaryContext& ctx, int order);

/// (H^(n) H^(m) - H^(m) H^(n)) s.
double check_flow_commutes(const BoundaryContext& ctx, int n, int m, std::span<const FockState> samples);

/// [H^(n), b(k)] s, entrywise over the aux indices.
double check_integrals_of_motion(const BoundaryContext& ctx, int n, int k,
                                 std::span<const FockState> samples);

/// "H-eigen-creation": [H^(n), ~a+(k)] = k^n ~a+(k) and
/// "H-eigen-annihilation": [H^(n), ~a(k)] = -k^n ~a(k). For odd n both
/// right-hand sides are replaced by 0.
std::vector<RelationResidual> check_eigenrelations(const BoundaryContext& ctx, int n, int k,
                                                   std::span<const FockState> samples);

/// max_i |H^(n) ~a+_i(k) Omega - k^n ~a+_i(k) Omega|.
double check_one_particle_eigenvalue(const BoundaryContext& ctx, int n, int k);

/// max over samples of |H^(n) s|.
double check_vanishing(const BoundaryContext& ctx, int n, std::span<const FockState> samples);

struct BrokenGenerator {
  int k = 0;  // grid index
  int i = 0;
  int j = 0;
  Complex expectation;
};

struct SymmetryBreaking {
  double residual = 0.0;  // max_k |b(k) Omega - B(k) Omega|
  std::vector<BrokenGenerator> broken;  // b_ij(k) with nonzero vacuum expectation
  bool matches_b = false;  // broken set equals the support of B on the grid
};

SymmetryBreaking check_symmetry_breaking(const BoundaryContext& ctx, double zero_tol = 1e-13);

struct SpectrumCheck {
  double residual = 0.0;
  std::vector<double> eigenvalues;  // sorted real parts
  std::vector<double> expected;
};

/// Eigenvalues of H^(n) on the one-particle sector against k^n (N per pair
/// +-k, k > 0) plus N |grid| / 2 zeros, for even n.
SpectrumCheck check_one_particle_spectrum(const BoundaryContext& ctx, int n);

}  // namespace zfb
