#include "zfb/sampling.hpp"

#include <algorithm>

namespace zfb {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::below(int n) { return static_cast<int>(uniform() * n); }

Complex Rng::complex_box() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

std::vector<Sample> basis_samples(const FockSpace& fock, int max_particles) {
  std::vector<Sample> out;
  for (int n = 0; n <= max_particles; ++n) {
    int i = 0;
    for (auto& s : canonical_basis(fock, n))
      out.push_back({"basis:" + std::to_string(n) + ":" + std::to_string(i++), std::move(s)});
  }
  return out;
}

Word random_word(const FockSpace& fock, int particles, Rng& rng) {
  Word w;
  for (int i = 0; i < particles; ++i)
    w = w.appended(Letter{static_cast<std::uint8_t>(rng.below(fock.grid().size())),
                          static_cast<std::uint8_t>(rng.below(fock.colors()))});
  return w;
}

std::vector<Sample> random_samples(const FockSpace& fock, int particles, int count, Rng& rng,
                                   int terms) {
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) {
    FockState::Map raw;
    for (int t = 0; t < terms; ++t) {
      Word w = random_word(fock, particles, rng);
      std::vector<Letter> letters(w.begin(), w.end());
      std::stable_sort(letters.begin(), letters.end(),
                       [](const Letter& a, const Letter& b) { return a.k < b.k; });
      Word sorted;
      for (const Letter& l : letters) sorted = sorted.appended(l);
      raw[sorted] += rng.complex_box();
    }
    out.push_back({"random:" + std::to_string(particles) + ":" + std::to_string(i),
                   canonicalize(fock, raw)});
  }
  return out;
}

std::vector<FockState> states_of(const std::vector<Sample>& samples) {
  std::vector<FockState> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.state);
  return out;
}

}  // namespace zfb
