// Extensional evaluation of auxiliary-space operator identities.
//
// An identity such as a_1 a+_2 = a+_2 R_12 a_1 + delta_12 is written in the
// tensor notation of the exchange algebras: every factor carries an optional
// output ("upper") and input ("lower") colour index in some auxiliary spaces,
// and adjacent factors contract the lower index of the left factor with the
// upper index of the right one, space by space. A product is applied to a Fock
// state right to left, which also fixes the operator order on Fock space.
//
// Example: a+_2 R_12 a_1 applied to s. a_1 opens an upper index in space 1;
// R_12 contracts it, opens a lower index in space 2 and upper indices in 1, 2;
// a+_2 closes the upper index in 2. The result has slots {1 upper, 2 lower},
// the same as a_1 a+_2, so the two sides can be compared entry by entry.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "zfb/fock.hpp"

namespace zfb {

using SpaceId = int;

struct Slot {
  SpaceId space = 0;
  bool lower = false;  // upper slots sort before lower ones in the same space
  auto operator<=>(const Slot&) const = default;
};

/// Fock states indexed by the open colour indices of a partial product.
class TensorState {
 public:
  TensorState(int n, std::vector<Slot> slots);
  static TensorState scalar(int n, FockState s);

  int colors() const { return n_; }
  const std::vector<Slot>& slots() const { return slots_; }
  std::vector<FockState>& entries() { return entries_; }
  const std::vector<FockState>& entries() const { return entries_; }

  void scale(Complex c);
  void prune(double threshold);

 private:
  int n_;
  std::vector<Slot> slots_;
  std::vector<FockState> entries_;
};

class Factor {
 public:
  /// Operator action: maps one Fock state to the states for every index
  /// combination (upper..., lower...) of the factor, row-major.
  using Action = std::function<std::vector<FockState>(const FockState&)>;

  /// c-number matrix on two spaces, first tensor factor in `first`.
  static Factor pair(SpaceId first, SpaceId second, const Matrix& m);
  /// c-number n x n matrix in one space.
  static Factor single(SpaceId s, const Matrix& m);
  /// weight * sum_i e_i (x) e+_i : upper index in `upper`, lower in `lower`.
  static Factor link(SpaceId upper, SpaceId lower, int n, Complex weight);

  /// Operator-valued column vector (a_1), row vector (a+_1), matrix (b_1).
  static Factor column(SpaceId s, Action a);
  static Factor row(SpaceId s, Action a);
  static Factor square(SpaceId s, Action a);
  /// Operator-valued matrix whose output index lives in `upper` and input in `lower`.
  static Factor bridge(SpaceId upper, SpaceId lower, Action a);
  /// Operator without auxiliary indices (H^(n)); the action returns one state.
  static Factor scalar(Action a);

  const std::vector<SpaceId>& upper() const { return upper_; }
  const std::vector<SpaceId>& lower() const { return lower_; }
  bool is_operator() const { return static_cast<bool>(action_); }

  TensorState apply(const TensorState& x, double prune) const;

 private:
  std::vector<SpaceId> upper_;
  std::vector<SpaceId> lower_;
  std::vector<Complex> coeff_;
  Action action_;
};

struct Term {
  Complex coeff = 1.0;
  std::vector<Factor> factors;  // written order, applied right to left
};

using Expression = std::vector<Term>;

TensorState evaluate(const Term& term, const FockState& s, int n, double prune);
TensorState evaluate(const Expression& expr, const FockState& s, int n, double prune);

/// Largest amplitude deviation; throws std::logic_error if the index
/// structures differ (a malformed identity).
double max_deviation(const TensorState& a, const TensorState& b);

/// max over samples of |lhs s - rhs s|.
double identity_residual(const Expression& lhs, const Expression& rhs,
                         std::span<const FockState> samples, int n, double prune);

}  // namespace zfb
