#include <doctest.h>

#include <cmath>

#include "zfb/core.hpp"
#include "zfb/grid.hpp"

using namespace zfb;

TEST_CASE("grid sorts, indexes and negates") {
  const SpectralGrid g({3, -1, 1, -3, 2, -2});
  REQUIRE(g.size() == 6);
  CHECK(g.momentum(0) == -3);
  CHECK(g.momentum(5) == 3);
  CHECK(g.index_of(2.0) == 4);
  CHECK_FALSE(g.index_of(0.5).has_value());
  CHECK_THROWS_AS(g.require_index(0.5), DomainError);
  for (int i = 0; i < g.size(); ++i) CHECK(g.momentum(g.negated(i)) == -g.momentum(i));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_WITH_AS(SpectralGrid({-1, 2}), doctest::Contains("grid not negation-symmetric"), DomainError);
  CHECK_THROWS_AS(SpectralGrid({-1, 0, 1}), DomainError);
  CHECK_THROWS_AS(SpectralGrid({-1, 1, 1, -1}), DomainError);
  CHECK_THROWS_AS(SpectralGrid({}), DomainError);
  CHECK_THROWS_AS(SpectralGrid({-INFINITY, INFINITY}), DomainError);
  CHECK_NOTHROW(SpectralGrid({-0.5, 0.5}));
}
