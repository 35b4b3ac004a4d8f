#pragma once

// G2: order-r subgroup of the twist E'(Fp2): y^2 = x^3 + 4(1+u). Compressed
// 96-byte encoding: x.c1 first (flags in its top byte), then x.c0; the sign
// bit selects the lexicographically-largest y comparing (c1, c0).

#include <optional>

#include "ec/curve.hpp"

namespace nicbe::ec {

inline constexpr int G2_BYTES = 96;

using G2Affine = Affine<Fp2>;
using G2Jac = Jac<Fp2>;

Fp2 g2_b();                      // 4(1+u)
const G2Affine& g2_generator();  // standard generator

bool g2_valid(const G2Affine& p);
void g2_to_bytes(const G2Affine& p, uint8_t out[G2_BYTES]);
std::optional<G2Affine> g2_from_bytes(const uint8_t in[G2_BYTES]);

}  // namespace nicbe::ec
