#pragma once

// Extension tower for BLS12-381:
//   Fp2  = Fp[u]  / (u^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 1 + u
//   Fp12 = Fp6[w] / (w^2 - v)
// Multiplications use the usual Karatsuba shapes; nothing here allocates.

#include <optional>

#include "ec/fp.hpp"

namespace nicbe::ec {

struct Fp2 {
  Fp c0, c1;  // c0 + c1*u

  static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  static Fp2 xi() { return {Fp::one(), Fp::one()}; }  // 1 + u

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 neg() const { return {c0.neg(), c1.neg()}; }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, c1.neg()}; }

  Fp2 operator*(const Fp2& o) const {
    Fp k0 = c0 * o.c0;
    Fp k1 = c1 * o.c1;
    Fp s = (c0 + c1) * (o.c0 + o.c1);
    return {k0 - k1, s - k0 - k1};
  }
  Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t.dbl()};
  }
  Fp2 mul_fp(const Fp& s) const { return {c0 * s, c1 * s}; }
  Fp2 mul_xi() const { return {c0 - c1, c0 + c1}; }  // * (1+u)
  Fp2 inv() const {
    Fp norm = c0.square() + c1.square();
    Fp t = norm.inv();
    return {c0 * t, (c1 * t).neg()};
  }

  // True if (c1, c0) is lexicographically larger than its negation,
  // comparing c1 first (matches the compressed-G2 sign convention).
  bool is_lex_largest() const {
    if (!c1.is_zero()) return c1.is_lex_largest();
    return c0.is_lex_largest();
  }

  static std::optional<Fp2> sqrt(const Fp2& a);
};

struct Fp6 {
  Fp2 c0, c1, c2;  // c0 + c1*v + c2*v^2

  static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
  bool operator!=(const Fp6& o) const { return !(*this == o); }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 neg() const { return {c0.neg(), c1.neg(), c2.neg()}; }
  Fp6 dbl() const { return {c0.dbl(), c1.dbl(), c2.dbl()}; }

  Fp6 operator*(const Fp6& o) const {
    Fp2 t0 = c0 * o.c0, t1 = c1 * o.c1, t2 = c2 * o.c2;
    Fp2 r0 = t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_xi();
    Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_xi();
    Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
  }
  Fp6 square() const {
    Fp2 s0 = c0.square();
    Fp2 s1 = (c0 * c1).dbl();
    Fp2 s2 = (c0 - c1 + c2).square();
    Fp2 s3 = (c1 * c2).dbl();
    Fp2 s4 = c2.square();
    return {s0 + s3.mul_xi(), s1 + s4.mul_xi(), s1 + s2 + s3 - s0 - s4};
  }
  Fp6 mul_by_v() const { return {c2.mul_xi(), c0, c1}; }
  // Sparse products against b0 + b1*v (b2 = 0) and b1*v alone; the Miller
  // loop's line functions only ever populate those coefficients.
  Fp6 mul_by_01(const Fp2& b0, const Fp2& b1) const {
    Fp2 m00 = c0 * b0, m11 = c1 * b1;
    Fp2 r0 = m00 + (c2 * b1).mul_xi();
    Fp2 r1 = (c0 + c1) * (b0 + b1) - m00 - m11;
    Fp2 r2 = m11 + c2 * b0;
    return {r0, r1, r2};
  }
  Fp6 mul_by_1(const Fp2& b1) const {
    return {(c2 * b1).mul_xi(), c0 * b1, c1 * b1};
  }
  Fp6 inv() const {
    Fp2 a = c0.square() - (c1 * c2).mul_xi();
    Fp2 b = c2.square().mul_xi() - c0 * c1;
    Fp2 c = c1.square() - c0 * c2;
    Fp2 t = (c0 * a + (c2 * b + c1 * c).mul_xi()).inv();
    return {a * t, b * t, c * t};
  }
};

struct Fp12 {
  Fp6 c0, c1;  // c0 + c1*w

  static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_one() const { return *this == one(); }
  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp12& o) const { return !(*this == o); }

  Fp12 operator*(const Fp12& o) const {
    Fp6 t0 = c0 * o.c0, t1 = c1 * o.c1;
    Fp6 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1;
    return {t0 + t1.mul_by_v(), r1};
  }
  Fp12 square() const {
    Fp6 t = c0 * c1;
    Fp6 r0 = (c0 + c1) * (c0 + c1.mul_by_v()) - t - t.mul_by_v();
    return {r0, t.dbl()};
  }
  Fp12 conj() const { return {c0, c1.neg()}; }  // the p^6 Frobenius
  Fp12 inv() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inv();
    return {c0 * t, (c1 * t).neg()};
  }
  // Sparse multiply by a line value l = a0 + a1*v + b1*v*w, i.e. flat
  // coefficients (0,1,4) over the w-power basis.
  Fp12 mul_by_014(const Fp2& a0, const Fp2& a1, const Fp2& b1) const {
    Fp6 t0 = c0.mul_by_01(a0, a1);
    Fp6 t1 = c1.mul_by_1(b1);
    Fp6 r1 = (c0 + c1).mul_by_01(a0, a1 + b1) - t0 - t1;
    return {t0 + t1.mul_by_v(), r1};
  }

  Fp12 frobenius() const;   // ^p
  Fp12 frobenius2() const;  // ^(p^2)
  Fp12 pow_u64(uint64_t e) const;

  // Canonical encoding: the 12 Fp coefficients, in (c0.c0.c0, c0.c0.c1,
  // c0.c1.c0, ..., c1.c2.c1) order, each 48 bytes big-endian.
  void to_bytes(uint8_t out[12 * FP_BYTES]) const;
};

struct Fp12FrobCtx {
  Fp2 g1[6];  // gamma^j for ^p,   gamma = xi^{(p-1)/6}
  Fp2 g2[6];  // multipliers for ^(p^2)
};

const Fp12FrobCtx& fp12_frob_ctx();

// Exponentiation of an Fp2 element by an arbitrary mpz (startup-time only).
Fp2 fp2_pow_mpz(const Fp2& a, const mpz_t e);

}  // namespace nicbe::ec
