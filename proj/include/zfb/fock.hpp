// Truncated Fock space of the ZF algebra over a spectral grid.
//
// A word (k_1,c_1)...(k_n,c_n) stands for a+_{c_1}(k_1) ... a+_{c_n}(k_n) Omega,
// leftmost letter outermost. Momenta are stored as grid indices and colours
// are 0-based. A word is canonical when its grid indices are non-decreasing;
// in the default (regular R, R(k,k) = P) mode any colour order is allowed
// inside a run of equal momenta, because the exchange relation at coincident
// momenta is then the identity.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zfb/core.hpp"
#include "zfb/grid.hpp"
#include "zfb/rmatrix.hpp"

namespace zfb {

struct Letter {
  std::uint8_t k = 0;
  std::uint8_t color = 0;
  auto operator<=>(const Letter&) const = default;
};

/// Fixed-capacity sequence of letters.
class Word {
 public:
  static constexpr int kMaxLetters = 10;

  Word() = default;
  Word(std::initializer_list<Letter> letters);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Letter& operator[](int i) const { return letters_[i]; }
  Letter& operator[](int i) { return letters_[i]; }
  const Letter* begin() const { return letters_.data(); }
  const Letter* end() const { return letters_.data() + size_; }

  Word prepended(Letter l) const;
  Word appended(Letter l) const;
  /// Letters from `from` to the end.
  Word suffix(int from) const;
  Word without(int position) const;
  /// Drops the first letter.
  Word tail() const { return without(0); }

  bool is_sorted_by_momentum() const;
  std::string to_string() const;

  // Shorter words order first; unused slots stay zeroed.
  auto operator<=>(const Word&) const = default;

 private:
  std::uint8_t size_ = 0;
  std::array<Letter, kMaxLetters> letters_{};
};

/// Sparse complex combination of canonical words.
class FockState {
 public:
  using Map = std::map<Word, Complex>;

  FockState() = default;
  static FockState basis(const Word& w, Complex amp = 1.0);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Complex amplitude(const Word& w) const;
  void add(const Word& w, Complex amp);
  void add_scaled(const FockState& other, Complex factor);
  /// Removes amplitudes with modulus below the threshold.
  void prune(double threshold);

  FockState& operator+=(const FockState& other);
  FockState& operator-=(const FockState& other);
  FockState& operator*=(Complex c);
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(Complex c, FockState a) { return a *= c; }

  double max_abs() const;
  /// Largest particle number present; -1 for the zero state.
  int max_particles() const;
  int min_particles() const;

 private:
  Map terms_;
};

FockState vacuum();

/// How letters with equal momenta are ordered.
enum class CoincidentOrder {
  kIndependent,  // R(k,k) = P: no relation, colour order is kept
  kSymmetric,    // R(k,k) = I: colours commute, sorted non-decreasing
};

/// Grid, R-matrix and truncation shared by every Fock-space operation.
class FockSpace {
 public:
  static constexpr double kDefaultPrune = 1e-14;

  /// capacity = largest particle number any intermediate state may reach.
  FockSpace(SpectralGrid grid, RMatrixSpec r, int capacity, double prune = kDefaultPrune);

  const SpectralGrid& grid() const { return grid_; }
  const RMatrixSpec& r_spec() const { return r_; }
  int colors() const { return r_.n; }
  int capacity() const { return capacity_; }
  double prune_threshold() const { return prune_; }
  CoincidentOrder coincident_order() const { return coincident_; }

  /// Cached R_12(k_a, k_b) for grid indices a, b.
  const Matrix& r(int a, int b) const { return r_cache_[a * grid_.size() + b]; }

  void require_index(int k) const;
  void require_color(int c) const;
  void require_capacity(int particles) const;

 private:
  SpectralGrid grid_;
  RMatrixSpec r_;
  int capacity_;
  double prune_;
  CoincidentOrder coincident_;
  std::vector<Matrix> r_cache_;
};

enum class Schedule { kLeftToRight, kRightToLeft };

/// Rewrites an arbitrary combination of words into canonical form by adjacent
/// transpositions a+_a(x) a+_b(y) = sum R(y,x)_{(m,l),(b,a)} a+_m(y) a+_l(x).
FockState canonicalize(const FockSpace& space, const FockState::Map& raw,
                       Schedule schedule = Schedule::kLeftToRight);

/// One exchange move at positions (pos, pos+1), in either direction; the
/// result is not canonicalized.
FockState::Map transpose_at(const FockSpace& space, const Word& w, int pos);

FockState apply_creation(const FockSpace& space, int color, int k, const FockState& s);
/// Index c of the result is a+_c(k) s.
std::vector<FockState> create_all(const FockSpace& space, int k, const FockState& s);

FockState apply_annihilation(const FockSpace& space, int color, int k, const FockState& s);
/// Index c of the result is a_c(k) s.
std::vector<FockState> annihilate_all(const FockSpace& space, int k, const FockState& s);

struct StateComparison {
  bool equal = false;
  double deviation = 0.0;
};

StateComparison states_equal(const FockState& a, const FockState& b, double tol);
double max_deviation(const FockState& a, const FockState& b);

/// Every canonical word with exactly `particles` letters, as basis states.
std::vector<FockState> canonical_basis(const FockSpace& space, int particles);

}  // namespace zfb
