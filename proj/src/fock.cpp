#include "zfb/fock.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace zfb {

Word::Word(std::initializer_list<Letter> letters) {
  if (letters.size() > kMaxLetters) throw CapacityError("word longer than Word::kMaxLetters");
  for (const Letter& l : letters) letters_[size_++] = l;
}

Word Word::prepended(Letter l) const {
  if (size_ >= kMaxLetters) throw CapacityError("word longer than Word::kMaxLetters");
  Word out;
  out.size_ = size_ + 1;
  out.letters_[0] = l;
  for (int i = 0; i < size_; ++i) out.letters_[i + 1] = letters_[i];
  return out;
}

Word Word::appended(Letter l) const {
  if (size_ >= kMaxLetters) throw CapacityError("word longer than Word::kMaxLetters");
  Word out = *this;
  out.letters_[out.size_++] = l;
  return out;
}

Word Word::suffix(int from) const {
  Word out;
  for (int i = from; i < size_; ++i) out.letters_[out.size_++] = letters_[i];
  return out;
}

Word Word::without(int position) const {
  Word out;
  for (int i = 0; i < size_; ++i)
    if (i != position) out.letters_[out.size_++] = letters_[i];
  return out;
}

bool Word::is_sorted_by_momentum() const {
  for (int i = 1; i < size_; ++i)
    if (letters_[i - 1].k > letters_[i].k) return false;
  return true;
}

std::string Word::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < size_; ++i)
    os << "(" << int(letters_[i].k) << "," << int(letters_[i].color) << ")";
  os << "]";
  return os.str();
}

FockState FockState::basis(const Word& w, Complex amp) {
  FockState s;
  s.add(w, amp);
  return s;
}

Complex FockState::amplitude(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

void FockState::add(const Word& w, Complex amp) {
  if (amp == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(w, amp);
  if (!inserted) {
    it->second += amp;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

void FockState::add_scaled(const FockState& other, Complex factor) {
  if (factor == Complex{}) return;
  for (const auto& [w, a] : other.terms_) add(w, factor * a);
}

void FockState::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

FockState& FockState::operator+=(const FockState& other) {
  add_scaled(other, 1.0);
  return *this;
}

FockState& FockState::operator-=(const FockState& other) {
  add_scaled(other, -1.0);
  return *this;
}

FockState& FockState::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

double FockState::max_abs() const {
  double m = 0.0;
  for (const auto& kv : terms_) m = std::max(m, std::abs(kv.second));
  return m;
}

int FockState::max_particles() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.size());
  return m;
}

int FockState::min_particles() const {
  int m = Word::kMaxLetters + 1;
  for (const auto& kv : terms_) m = std::min(m, kv.first.size());
  return terms_.empty() ? -1 : m;
}

FockState vacuum() { return FockState::basis(Word{}); }

FockSpace::FockSpace(SpectralGrid grid, RMatrixSpec r, int capacity, double prune)
    : grid_(std::move(grid)), r_(std::move(r)), capacity_(capacity), prune_(prune) {
  if (r_.n < 1 || r_.n > 255) throw DomainError("colour dimension must be in [1, 255]");
  if (grid_.size() > 255) throw DomainError("grid has more than 255 momenta");
  if (capacity_ < 0 || capacity_ > Word::kMaxLetters)
    throw DomainError("Fock capacity must be in [0, " + std::to_string(Word::kMaxLetters) + "]");
  const int g = grid_.size();
  r_cache_.reserve(static_cast<std::size_t>(g) * g);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) r_cache_.push_back(eval_r(r_, grid_.momentum(a), grid_.momentum(b)));

  const int d = r_.n * r_.n;
  const Matrix p = permutation_matrix(r_.n);
  const Matrix id = Matrix::Identity(d, d);
  bool all_p = true;
  bool all_i = true;
  for (int a = 0; a < g; ++a) {
    all_p = all_p && max_norm(this->r(a, a) - p) < 1e-12;
    all_i = all_i && max_norm(this->r(a, a) - id) < 1e-12;
  }
  if (all_p)
    coincident_ = CoincidentOrder::kIndependent;
  else if (all_i)
    coincident_ = CoincidentOrder::kSymmetric;
  else
    throw DomainError("R(k,k) is neither P nor I on the grid; canonical words are undefined");
}

void FockSpace::require_index(int k) const {
  if (!grid_.contains_index(k)) throw DomainError("grid index " + std::to_string(k) + " out of range");
}

void FockSpace::require_color(int c) const {
  if (c < 0 || c >= r_.n) throw DomainError("colour " + std::to_string(c) + " out of range");
}

void FockSpace::require_capacity(int particles) const {
  if (particles > capacity_)
    throw CapacityError("particle number " + std::to_string(particles) + " exceeds capacity " +
                        std::to_string(capacity_));
}

namespace {

bool inverted(const FockSpace& space, const Letter& a, const Letter& b) {
  if (a.k != b.k) return a.k > b.k;
  return space.coincident_order() == CoincidentOrder::kSymmetric && a.color > b.color;
}

int find_inversion(const FockSpace& space, const Word& w, Schedule schedule) {
  if (schedule == Schedule::kLeftToRight) {
    for (int i = 0; i + 1 < w.size(); ++i)
      if (inverted(space, w[i], w[i + 1])) return i;
  } else {
    for (int i = w.size() - 2; i >= 0; --i)
      if (inverted(space, w[i], w[i + 1])) return i;
  }
  return -1;
}

}  // namespace

FockState::Map transpose_at(const FockSpace& space, const Word& w, int pos) {
  if (pos < 0 || pos + 1 >= w.size()) throw DomainError("transpose_at: position out of range");
  const int n = space.colors();
  const Letter left = w[pos];
  const Letter right = w[pos + 1];
  const Matrix& r = space.r(right.k, left.k);
  const int col = right.color * n + left.color;
  FockState::Map out;
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      const Complex c = r(m * n + l, col);
      if (c == Complex{}) continue;
      Word v = w;
      v[pos] = Letter{right.k, static_cast<std::uint8_t>(m)};
      v[pos + 1] = Letter{left.k, static_cast<std::uint8_t>(l)};
      out[v] += c;
    }
  }
  return out;
}

FockState canonicalize(const FockSpace& space, const FockState::Map& raw, Schedule schedule) {
  FockState out;
  FockState::Map pending = raw;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Complex amp = node.mapped();
    if (amp == Complex{}) continue;
    const int pos = find_inversion(space, w, schedule);
    if (pos < 0) {
      out.add(w, amp);
      continue;
    }
    for (const auto& [v, c] : transpose_at(space, w, pos)) pending[v] += c * amp;
  }
  out.prune(space.prune_threshold());
  return out;
}

std::vector<FockState> create_all(const FockSpace& space, int k, const FockState& s) {
  space.require_index(k);
  space.require_capacity(s.max_particles() + 1);
  std::vector<FockState> out(space.colors());
  for (int c = 0; c < space.colors(); ++c) {
    FockState::Map raw;
    const Letter l{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(c)};
    for (const auto& [w, a] : s) raw[w.prepended(l)] += a;
    out[c] = canonicalize(space, raw);
  }
  return out;
}

FockState apply_creation(const FockSpace& space, int color, int k, const FockState& s) {
  space.require_color(color);
  space.require_index(k);
  space.require_capacity(s.max_particles() + 1);
  FockState::Map raw;
  const Letter l{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(color)};
  for (const auto& [w, a] : s) raw[w.prepended(l)] += a;
  return canonicalize(space, raw);
}

namespace {

// a_i(k) acting on the suffix of w starting at `from`:
//   a_i(k) a+_j(p) X = delta_ij delta_kp X + sum R(k,p)_{(i,j'),(i',j)} a+_j'(p) a_i'(k) X
std::vector<FockState> annihilate_suffix(const FockSpace& space, int k, const Word& w, int from) {
  const int n = space.colors();
  std::vector<FockState> res(n);
  if (from == w.size()) return res;
  const Letter head = w[from];
  const Word rest = w.suffix(from + 1);
  const std::vector<FockState> sub = annihilate_suffix(space, k, w, from + 1);
  if (head.k == k) res[head.color].add(rest, 1.0);
  const Matrix& r = space.r(k, head.k);
  for (int ip = 0; ip < n; ++ip) {
    if (sub[ip].empty()) continue;
    for (int i = 0; i < n; ++i) {
      for (int jp = 0; jp < n; ++jp) {
        const Complex c = r(i * n + jp, ip * n + head.color);
        if (c == Complex{}) continue;
        const Letter l{head.k, static_cast<std::uint8_t>(jp)};
        for (const auto& [v, a] : sub[ip]) res[i].add(v.prepended(l), c * a);
      }
    }
  }
  return res;
}

}  // namespace

std::vector<FockState> annihilate_all(const FockSpace& space, int k, const FockState& s) {
  space.require_index(k);
  const int n = space.colors();
  std::vector<FockState> out(n);
  for (const auto& [w, a] : s) {
    const auto part = annihilate_suffix(space, k, w, 0);
    for (int i = 0; i < n; ++i) out[i].add_scaled(part[i], a);
  }
  for (auto& st : out) {
    if (space.coincident_order() == CoincidentOrder::kSymmetric) st = canonicalize(space, st.terms());
    st.prune(space.prune_threshold());
  }
  return out;
}

FockState apply_annihilation(const FockSpace& space, int color, int k, const FockState& s) {
  space.require_color(color);
  return annihilate_all(space, k, s)[color];
}

double max_deviation(const FockState& a, const FockState& b) {
  double dev = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      dev = std::max(dev, std::abs(ia->second));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      dev = std::max(dev, std::abs(ib->second));
      ++ib;
    } else {
      dev = std::max(dev, std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return dev;
}

StateComparison states_equal(const FockState& a, const FockState& b, double tol) {
  const double dev = max_deviation(a, b);
  return {dev <= tol, dev};
}

std::vector<FockState> canonical_basis(const FockSpace& space, int particles) {
  const int g = space.grid().size();
  const int n = space.colors();
  std::vector<FockState> out;
  Word w;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == particles) {
      if (find_inversion(space, w, Schedule::kLeftToRight) < 0) out.push_back(FockState::basis(w));
      return;
    }
    const int kmin = w.empty() ? 0 : w[w.size() - 1].k;
    for (int k = kmin; k < g; ++k) {
      for (int c = 0; c < n; ++c) {
        const Word saved = w;
        w = w.appended(Letter{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(c)});
        rec(depth + 1);
        w = saved;
      }
    }
  };
  rec(0);
  return out;
}

}  // namespace zfb
