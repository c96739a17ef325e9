// Deterministic sample states for extensional identity checks.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zfb/fock.hpp"

namespace zfb {

/// mt19937_64 with distributions computed from raw bits, so sequences are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n);
  Complex complex_box();  // re, im uniform in [-1, 1)

 private:
  std::mt19937_64 engine_;
};

struct Sample {
  std::string id;
  FockState state;
};

/// All canonical basis states with 0..max_particles letters ("basis:<n>:<i>").
std::vector<Sample> basis_samples(const FockSpace& fock, int max_particles);

/// Random combinations of `terms` canonical words with exactly `particles`
/// letters ("random:<n>:<i>").
std::vector<Sample> random_samples(const FockSpace& fock, int particles, int count, Rng& rng,
                                   int terms = 3);

/// Random word, not necessarily canonical.
Word random_word(const FockSpace& fock, int particles, Rng& rng);

std::vector<FockState> states_of(const std::vector<Sample>& samples);

}  // namespace zfb
