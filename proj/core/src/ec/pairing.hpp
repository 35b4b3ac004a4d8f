#pragma once

// Optimal-ate pairing over BLS12-381, up to a fixed cube: the implemented
// map is e(P,Q)^3 where e is the textbook optimal ate — the exponent 3 comes
// from the hard-part decomposition 3(p^4-p^2+1)/r = (x-1)^2(x+p)(x^2+p^2-1)+3.
// A fixed power of a bilinear non-degenerate pairing is itself bilinear and
// non-degenerate, which is the entire contract the library exposes.

#include <utility>
#include <vector>

#include "ec/g1.hpp"
#include "ec/g2.hpp"

namespace nicbe::ec {

inline constexpr uint64_t kXAbs = 0xd201000000010000ull;  // |x|, x < 0

// Product of Miller loops over all (P, Q) legs; identity legs contribute 1.
Fp12 miller_loop(const std::vector<std::pair<G1Affine, G2Affine>>& legs);
Fp12 final_exponentiation(const Fp12& f);

inline Fp12 pairing_product(const std::vector<std::pair<G1Affine, G2Affine>>& legs) {
  return final_exponentiation(miller_loop(legs));
}

}  // namespace nicbe::ec
