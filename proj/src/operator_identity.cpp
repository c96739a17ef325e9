#include "zfb/operator_identity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zfb {

namespace {

std::size_t power(int n, std::size_t e) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= static_cast<std::size_t>(n);
  return out;
}

void decode(std::size_t index, int n, std::vector<int>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % n);
    index /= n;
  }
}

std::size_t encode(const std::vector<int>& values, int n) {
  std::size_t out = 0;
  for (int v : values) out = out * n + v;
  return out;
}

int find_slot(const std::vector<Slot>& slots, Slot s) {
  auto it = std::find(slots.begin(), slots.end(), s);
  return it == slots.end() ? -1 : static_cast<int>(it - slots.begin());
}

}  // namespace

TensorState::TensorState(int n, std::vector<Slot> slots)
    : n_(n), slots_(std::move(slots)), entries_(power(n, slots_.size())) {}

TensorState TensorState::scalar(int n, FockState s) {
  TensorState out(n, {});
  out.entries_[0] = std::move(s);
  return out;
}

void TensorState::scale(Complex c) {
  for (auto& e : entries_) e *= c;
}

void TensorState::prune(double threshold) {
  for (auto& e : entries_) e.prune(threshold);
}

Factor Factor::pair(SpaceId first, SpaceId second, const Matrix& m) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
  Factor f;
  f.upper_ = {first, second};
  f.lower_ = {first, second};
  f.coeff_.resize(power(n, 4));
  for (int u0 = 0; u0 < n; ++u0)
    for (int u1 = 0; u1 < n; ++u1)
      for (int l0 = 0; l0 < n; ++l0)
        for (int l1 = 0; l1 < n; ++l1)
          f.coeff_[((u0 * n + u1) * n + l0) * n + l1] = m(u0 * n + u1, l0 * n + l1);
  return f;
}

Factor Factor::single(SpaceId s, const Matrix& m) {
  const auto n = static_cast<int>(m.rows());
  Factor f;
  f.upper_ = {s};
  f.lower_ = {s};
  f.coeff_.resize(power(n, 2));
  for (int u = 0; u < n; ++u)
    for (int l = 0; l < n; ++l) f.coeff_[u * n + l] = m(u, l);
  return f;
}

Factor Factor::link(SpaceId upper, SpaceId lower, int n, Complex weight) {
  Factor f;
  f.upper_ = {upper};
  f.lower_ = {lower};
  f.coeff_.assign(power(n, 2), Complex{});
  for (int i = 0; i < n; ++i) f.coeff_[i * n + i] = weight;
  return f;
}

Factor Factor::column(SpaceId s, Action a) {
  Factor f;
  f.upper_ = {s};
  f.action_ = std::move(a);
  return f;
}

Factor Factor::row(SpaceId s, Action a) {
  Factor f;
  f.lower_ = {s};
  f.action_ = std::move(a);
  return f;
}

Factor Factor::square(SpaceId s, Action a) { return bridge(s, s, std::move(a)); }

Factor Factor::bridge(SpaceId upper, SpaceId lower, Action a) {
  Factor f;
  f.upper_ = {upper};
  f.lower_ = {lower};
  f.action_ = std::move(a);
  return f;
}

Factor Factor::scalar(Action a) {
  Factor f;
  f.action_ = std::move(a);
  return f;
}

TensorState Factor::apply(const TensorState& x, double prune) const {
  const int n = x.colors();
  const std::vector<Slot>& xs = x.slots();

  // Which X slot each factor lower index contracts with (-1: opens a new lower slot).
  std::vector<int> contract(lower_.size(), -1);
  std::vector<bool> keep(xs.size(), true);
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    const int head = find_slot(xs, Slot{lower_[i], false});
    if (head >= 0) {
      contract[i] = head;
      keep[head] = false;
    } else if (find_slot(xs, Slot{lower_[i], true}) >= 0) {
      throw std::logic_error("operator identity: two input indices in one auxiliary space");
    }
  }

  // Result slots and where each one takes its value from.
  struct Source {
    bool from_factor;
    int position;  // X slot, or factor flat position
  };
  std::vector<std::pair<Slot, Source>> out_slots;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (keep[i]) out_slots.push_back({xs[i], {false, static_cast<int>(i)}});
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (contract[i] < 0)
      out_slots.push_back({Slot{lower_[i], true}, {true, static_cast<int>(upper_.size() + i)}});
  for (std::size_t i = 0; i < upper_.size(); ++i) {
    for (const auto& os : out_slots)
      if (os.first == Slot{upper_[i], false})
        throw std::logic_error("operator identity: two output indices in one auxiliary space");
    out_slots.push_back({Slot{upper_[i], false}, {true, static_cast<int>(i)}});
  }
  std::sort(out_slots.begin(), out_slots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Slot> slots;
  for (const auto& os : out_slots) slots.push_back(os.first);

  TensorState out(n, slots);
  const std::size_t fdim = power(n, upper_.size() + lower_.size());
  std::vector<int> xv(xs.size());
  std::vector<int> fv(upper_.size() + lower_.size());
  std::vector<int> ov(slots.size());

  for (std::size_t xi = 0; xi < x.entries().size(); ++xi) {
    const FockState& src = x.entries()[xi];
    if (src.empty()) continue;
    decode(xi, n, xv);
    std::vector<FockState> acted;
    if (action_) {
      acted = action_(src);
      if (acted.size() != fdim) throw std::logic_error("operator identity: action has wrong arity");
    }
    for (std::size_t fi = 0; fi < fdim; ++fi) {
      decode(fi, n, fv);
      bool consistent = true;
      for (std::size_t i = 0; i < lower_.size() && consistent; ++i)
        if (contract[i] >= 0 && fv[upper_.size() + i] != xv[contract[i]]) consistent = false;
      if (!consistent) continue;
      for (std::size_t o = 0; o < out_slots.size(); ++o) {
        const Source& s = out_slots[o].second;
        ov[o] = s.from_factor ? fv[s.position] : xv[s.position];
      }
      FockState& dst = out.entries()[encode(ov, n)];
      if (action_)
        dst += acted[fi];
      else
        dst.add_scaled(src, coeff_[fi]);
    }
  }
  out.prune(prune);
  return out;
}

TensorState evaluate(const Term& term, const FockState& s, int n, double prune) {
  TensorState x = TensorState::scalar(n, s);
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) x = it->apply(x, prune);
  x.scale(term.coeff);
  return x;
}

TensorState evaluate(const Expression& expr, const FockState& s, int n, double prune) {
  if (expr.empty()) throw std::logic_error("operator identity: empty expression");
  TensorState total = evaluate(expr.front(), s, n, prune);
  for (std::size_t t = 1; t < expr.size(); ++t) {
    TensorState part = evaluate(expr[t], s, n, prune);
    if (part.slots() != total.slots())
      throw std::logic_error("operator identity: terms with different index structure");
    for (std::size_t i = 0; i < part.entries().size(); ++i) total.entries()[i] += part.entries()[i];
  }
  total.prune(prune);
  return total;
}

double max_deviation(const TensorState& a, const TensorState& b) {
  if (a.slots() != b.slots())
    throw std::logic_error("operator identity: sides have different index structure");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    d = std::max(d, max_deviation(a.entries()[i], b.entries()[i]));
  return d;
}

double identity_residual(const Expression& lhs, const Expression& rhs,
                         std::span<const FockState> samples, int n, double prune) {
  double worst = 0.0;
  for (const FockState& s : samples)
    worst = std::max(worst, max_deviation(evaluate(lhs, s, n, prune), evaluate(rhs, s, n, prune)));
  return worst;
}

}  // namespace zfb
