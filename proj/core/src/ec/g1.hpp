#pragma once

// G1: E(Fp): y^2 = x^3 + 4, order-r subgroup. Compressed 48-byte encoding
// with flag bits in the top of the first byte: 0x80 compressed (always set),
// 0x40 infinity, 0x20 lexicographically-largest y.

#include <optional>

#include "ec/curve.hpp"

namespace nicbe::ec {

inline constexpr int G1_BYTES = 48;

using G1Affine = Affine<Fp>;
using G1Jac = Jac<Fp>;

Fp g1_b();                       // 4
const G1Affine& g1_generator();  // standard generator

bool g1_valid(const G1Affine& p);  // on-curve + subgroup
void g1_to_bytes(const G1Affine& p, uint8_t out[G1_BYTES]);
// Decodes, enforcing canonical flags, on-curve and subgroup membership.
std::optional<G1Affine> g1_from_bytes(const uint8_t in[G1_BYTES]);

}  // namespace nicbe::ec
