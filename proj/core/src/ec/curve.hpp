#pragma once

// Short-Weierstrass arithmetic (a = 0) shared by G1 (over Fp) and the G2
// twist (over Fp2). Points are Jacobian internally; the identity is Z = 0.

#include <cstring>

#include "ec/fp_tower.hpp"

namespace nicbe::ec {

inline constexpr int SCALAR_BYTES = 32;

// Group order r as canonical big-endian bytes (shared by both groups).
extern const uint8_t kOrderBytes[SCALAR_BYTES];

template <class Fq>
struct Affine {
  Fq x = Fq::zero(), y = Fq::zero();
  bool inf = true;
};

template <class Fq>
struct Jac {
  Fq X = Fq::one(), Y = Fq::one(), Z = Fq::zero();

  bool is_inf() const { return Z.is_zero(); }
  static Jac infinity() { return {}; }
  static Jac from_affine(const Affine<Fq>& a) {
    if (a.inf) return infinity();
    return {a.x, a.y, Fq::one()};
  }
  Jac neg() const { return {X, Y.neg(), Z}; }
};

template <class Fq>
Jac<Fq> jac_dbl(const Jac<Fq>& P) {
  if (P.is_inf()) return P;
  Fq A = P.X.square();
  Fq B = P.Y.square();
  Fq C = B.square();
  Fq D = ((P.X + B).square() - A - C).dbl();
  Fq E = A + A.dbl();  // 3A
  Fq F = E.square();
  Jac<Fq> R;
  R.X = F - D.dbl();
  R.Y = E * (D - R.X) - C.dbl().dbl().dbl();
  R.Z = (P.Y * P.Z).dbl();
  return R;
}

template <class Fq>
Jac<Fq> jac_add(const Jac<Fq>& P, const Jac<Fq>& Q) {
  if (P.is_inf()) return Q;
  if (Q.is_inf()) return P;
  Fq Z1Z1 = P.Z.square();
  Fq Z2Z2 = Q.Z.square();
  Fq U1 = P.X * Z2Z2;
  Fq U2 = Q.X * Z1Z1;
  Fq S1 = P.Y * Q.Z * Z2Z2;
  Fq S2 = Q.Y * P.Z * Z1Z1;
  Fq H = U2 - U1;
  Fq rr = (S2 - S1).dbl();
  if (H.is_zero()) {
    if (rr.is_zero()) return jac_dbl(P);
    return Jac<Fq>::infinity();
  }
  Fq I = H.dbl().square();
  Fq J = H * I;
  Fq V = U1 * I;
  Jac<Fq> R;
  R.X = rr.square() - J - V.dbl();
  R.Y = rr * (V - R.X) - (S1 * J).dbl();
  R.Z = ((P.Z + Q.Z).square() - Z1Z1 - Z2Z2) * H;
  return R;
}

template <class Fq>
Jac<Fq> jac_add_affine(const Jac<Fq>& P, const Affine<Fq>& Q) {
  if (Q.inf) return P;
  if (P.is_inf()) return Jac<Fq>::from_affine(Q);
  Fq Z1Z1 = P.Z.square();
  Fq U2 = Q.x * Z1Z1;
  Fq S2 = Q.y * P.Z * Z1Z1;
  Fq H = U2 - P.X;
  Fq rr = (S2 - P.Y).dbl();
  if (H.is_zero()) {
    if (rr.is_zero()) return jac_dbl(P);
    return Jac<Fq>::infinity();
  }
  Fq HH = H.square();
  Fq I = HH.dbl().dbl();
  Fq J = H * I;
  Fq V = P.X * I;
  Jac<Fq> R;
  R.X = rr.square() - J - V.dbl();
  R.Y = rr * (V - R.X) - (P.Y * J).dbl();
  R.Z = (P.Z + H).square() - Z1Z1 - HH;
  return R;
}

template <class Fq>
Affine<Fq> jac_to_affine(const Jac<Fq>& P) {
  if (P.is_inf()) return {};
  Fq zi = P.Z.inv();
  Fq zi2 = zi.square();
  return {P.X * zi2, P.Y * zi2 * zi, false};
}

template <class Fq>
bool on_curve(const Affine<Fq>& a, const Fq& b) {
  if (a.inf) return true;
  return a.y.square() == a.x.square() * a.x + b;
}

// Fixed 4-bit-window scalar multiplication, most-significant nibble first.
// The per-window pattern (4 doublings + table read + add) is uniform and the
// table read is a masked scan; the only residual data dependence is adds
// involving the identity, which for uniform nonzero scalars affects leading
// zero windows only.
template <class Fq>
Jac<Fq> scalar_mul(const Affine<Fq>& P, const uint8_t be[SCALAR_BYTES]) {
  if (P.inf) return Jac<Fq>::infinity();
  Jac<Fq> table[16];
  table[0] = Jac<Fq>::infinity();
  table[1] = Jac<Fq>::from_affine(P);
  for (int i = 2; i < 16; ++i) table[i] = jac_add_affine(table[i - 1], P);

  auto select = [&](unsigned digit) {
    // All-zero bytes decode as Z = 0, i.e. the identity; OR in the one
    // matching entry so digit 0 falls through to the identity.
    Jac<Fq> out;
    std::memset(static_cast<void*>(&out), 0, sizeof(out));
    auto* dst = reinterpret_cast<unsigned char*>(&out);
    for (unsigned i = 1; i < 16; ++i) {
      unsigned char mask = (unsigned char)(0) - (unsigned char)(i == digit);
      const auto* src = reinterpret_cast<const unsigned char*>(&table[i]);
      for (size_t b = 0; b < sizeof(Jac<Fq>); ++b) dst[b] |= (unsigned char)(src[b] & mask);
    }
    return out;
  };

  Jac<Fq> acc = Jac<Fq>::infinity();
  for (int byte = 0; byte < SCALAR_BYTES; ++byte) {
    for (int half = 0; half < 2; ++half) {
      for (int d = 0; d < 4; ++d) acc = jac_dbl(acc);
      unsigned digit = half == 0 ? (be[byte] >> 4) : (be[byte] & 0x0f);
      Jac<Fq> t = select(digit);
      acc = jac_add(acc, t);
    }
  }
  return acc;
}

template <class Fq>
bool in_order_r_subgroup(const Affine<Fq>& P) {
  if (P.inf) return true;
  return scalar_mul(P, kOrderBytes).is_inf();
}

}  // namespace nicbe::ec
