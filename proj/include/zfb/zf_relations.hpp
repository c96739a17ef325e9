// ZF generators as operator-identity factors, and the (AN-1)-(AN-3) checks.
#pragma once

#include <span>
#include <vector>

#include "zfb/operator_identity.hpp"

namespace zfb {

/// a(k) as a column vector in `space`.
Factor annihilator(const FockSpace& fock, SpaceId space, int k);
/// a+(k) as a row vector in `space`.
Factor creator(const FockSpace& fock, SpaceId space, int k);
/// R_{first second}(k_a, k_b) for grid indices a, b.
Factor r_factor(const FockSpace& fock, SpaceId first, SpaceId second, int a, int b);

/// a_1 a_2 = R_21 a_2 a_1, a+_1 a+_2 = a+_2 a+_1 R_21 and
/// a_1 a+_2 = a+_2 R_12 a_1 + delta_12 at grid momenta (k1, k2).
std::vector<RelationResidual> check_zf_relations(const FockSpace& fock, int k1, int k2,
                                                 std::span<const FockState> samples);

}  // namespace zfb
