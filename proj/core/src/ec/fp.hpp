#pragma once

// Base field of BLS12-381: 381-bit prime p, elements held in Montgomery form
// (value * 2^384 mod p) across six 64-bit limbs, least-significant first.
// GMP's mpn layer supplies the multi-limb primitives; everything else is a
// thin fixed-width shell so hot paths never allocate.

#include <gmp.h>

#include <array>
#include <cstdint>
#include <optional>

namespace nicbe::ec {

inline constexpr int FP_LIMBS = 6;
inline constexpr int FP_BYTES = 48;

static_assert(GMP_LIMB_BITS == 64, "fixed-width field code assumes 64-bit limbs");

struct FpCtx {
  mp_limb_t p[FP_LIMBS];        // the prime
  mp_limb_t r1[FP_LIMBS];       // 2^384 mod p  (Montgomery form of 1)
  mp_limb_t r2[FP_LIMBS];       // (2^384)^2 mod p
  mp_limb_t p_minus_1_half[FP_LIMBS];  // (p-1)/2, for lexicographic sign
  mp_limb_t n0inv;              // -p^{-1} mod 2^64
  mpz_t p_z;                    // the prime as an mpz for exponentiations
  mpz_t sqrt_exp;               // (p+1)/4
};

const FpCtx& fp_ctx();

struct Fp {
  mp_limb_t v[FP_LIMBS];

  static Fp zero() { return Fp{{0, 0, 0, 0, 0, 0}}; }
  static Fp one();
  static Fp from_u64(uint64_t x);

  bool is_zero() const;
  bool operator==(const Fp& o) const;
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp neg() const;
  Fp dbl() const { return *this + *this; }
  Fp square() const;
  Fp inv() const;  // multiplicative inverse; zero maps to zero

  // True if the plain (non-Montgomery) value exceeds (p-1)/2; drives the
  // compressed-point sign bit.
  bool is_lex_largest() const;

  // Canonical 48-byte big-endian encoding of the plain value.
  void to_bytes(uint8_t out[FP_BYTES]) const;
  // Rejects encodings >= p.
  static std::optional<Fp> from_bytes(const uint8_t in[FP_BYTES]);

  // Bridges for tests/oracles working in the plain domain.
  void get_mpz(mpz_t out) const;
  static Fp from_mpz(const mpz_t in);  // input reduced mod p

  static std::optional<Fp> sqrt(const Fp& a);
};

}  // namespace nicbe::ec
