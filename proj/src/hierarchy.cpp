#include "zfb/hierarchy.hpp"

#include <algorithm>
#include <cmath>

namespace zfb {

FockState apply_H(const BoundaryContext& ctx, int order, const FockState& s) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  FockState out;
  for (int k = 0; k < fock.grid().size(); ++k) {
    const double weight = std::pow(fock.grid().momentum(k), order);
    const std::vector<FockState> lowered = a_tilde_all(ctx, k, s);
    for (int i = 0; i < n; ++i) {
      if (lowered[i].empty()) continue;
      out.add_scaled(a_tilde_dagger_all(ctx, k, lowered[i])[i], weight);
    }
  }
  out.prune(fock.prune_threshold());
  return out;
}

Factor h_factor(const BoundaryContext& ctx, int order) {
  return Factor::scalar([&ctx, order](const FockState& s) { return std::vector<FockState>{apply_H(ctx, order, s)}; });
}

double check_flow_commutes(const BoundaryContext& ctx, int n, int m, std::span<const FockState> samples) {
  const Factor hn = h_factor(ctx, n);
  const Factor hm = h_factor(ctx, m);
  return identity_residual({{1.0, {hn, hm}}}, {{1.0, {hm, hn}}}, samples, ctx.fock().colors(),
                           ctx.fock().prune_threshold());
}

double check_integrals_of_motion(const BoundaryContext& ctx, int n, int k,
                                 std::span<const FockState> samples) {
  const Factor h = h_factor(ctx, n);
  const Factor b = cached_b_factor(ctx, 1, k);
  return identity_residual({{1.0, {h, b}}}, {{1.0, {b, h}}}, samples, ctx.fock().colors(),
                           ctx.fock().prune_threshold());
}

std::vector<RelationResidual> check_eigenrelations(const BoundaryContext& ctx, int n, int k,
                                                   std::span<const FockState> samples) {
  const FockSpace& fock = ctx.fock();
  const int colors = fock.colors();
  const double prune = fock.prune_threshold();
  const double kn = n % 2 == 0 ? std::pow(fock.grid().momentum(k), n) : 0.0;
  const Factor h = h_factor(ctx, n);
  const Factor c = a_tilde_dagger_factor(ctx, 1, k);
  const Factor a = a_tilde_factor(ctx, 1, k);
  return {
      {"H-eigen-creation",
       identity_residual({{1.0, {h, c}}, {-1.0, {c, h}}}, {{kn, {c}}}, samples, colors, prune)},
      {"H-eigen-annihilation",
       identity_residual({{1.0, {h, a}}, {-1.0, {a, h}}}, {{-kn, {a}}}, samples, colors, prune)},
  };
}

double check_one_particle_eigenvalue(const BoundaryContext& ctx, int n, int k) {
  const double kn = std::pow(ctx.fock().grid().momentum(k), n);
  double worst = 0.0;
  for (const FockState& state : a_tilde_dagger_all(ctx, k, vacuum()))
    worst = std::max(worst, max_deviation(apply_H(ctx, n, state), kn * state));
  return worst;
}

double check_vanishing(const BoundaryContext& ctx, int n, std::span<const FockState> samples) {
  double worst = 0.0;
  for (const FockState& s : samples) worst = std::max(worst, apply_H(ctx, n, s).max_abs());
  return worst;
}

SymmetryBreaking check_symmetry_breaking(const BoundaryContext& ctx, double zero_tol) {
  const FockSpace& fock = ctx.fock();
  const int n = fock.colors();
  SymmetryBreaking out;
  out.matches_b = true;
  for (int k = 0; k < fock.grid().size(); ++k) {
    const AuxState img = ctx.b(k, vacuum());
    const Matrix& bk = ctx.vertex().b_matrix(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex vev = img(i, j).amplitude(Word{});
        FockState expected = FockState::basis(Word{}, bk(i, j));
        out.residual = std::max(out.residual, max_deviation(img(i, j), expected));
        const bool broken = std::abs(vev) > zero_tol;
        if (broken) out.broken.push_back({k, i, j, vev});
        if (broken != (std::abs(bk(i, j)) > zero_tol)) out.matches_b = false;
      }
  }
  return out;
}

SpectrumCheck check_one_particle_spectrum(const BoundaryContext& ctx, int n) {
  const FockSpace& fock = ctx.fock();
  const std::vector<FockState> basis = canonical_basis(fock, 1);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<Word> words;
  for (const auto& b : basis) words.push_back(b.begin()->first);
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const FockState img = apply_H(ctx, n, basis[c]);
    for (Eigen::Index r = 0; r < dim; ++r) h(r, c) = img.amplitude(words[r]);
  }
  Eigen::ComplexEigenSolver<Matrix> solver(h, false);
  SpectrumCheck out;
  double imag = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.eigenvalues.push_back(solver.eigenvalues()(i).real());
    imag = std::max(imag, std::abs(solver.eigenvalues()(i).imag()));
  }
  for (double k : fock.grid().momenta()) {
    const double value = k > 0 && n % 2 == 0 ? std::pow(k, n) : 0.0;
    for (int c = 0; c < fock.colors(); ++c) out.expected.push_back(value);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  std::sort(out.expected.begin(), out.expected.end());
  out.residual = imag;
  for (std::size_t i = 0; i < out.expected.size(); ++i)
    out.residual = std::max(out.residual, std::abs(out.eigenvalues[i] - out.expected[i]));
  return out;
}

}  // namespace zfb
