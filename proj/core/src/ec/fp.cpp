#include "ec/fp.hpp"

#include <cstring>

namespace nicbe::ec {

namespace {

const char* kP = "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f624"
                 "1eabfffeb153ffffb9feffffffffaaab";

void mpz_to_limbs(mp_limb_t out[FP_LIMBS], const mpz_t z) {
  size_t count = 0;
  std::memset(out, 0, FP_LIMBS * sizeof(mp_limb_t));
  mpz_export(out, &count, -1, sizeof(mp_limb_t), 0, 0, z);
}

FpCtx build_ctx() {
  FpCtx c{};
  mpz_t p, t, two64;
  mpz_inits(p, t, two64, nullptr);
  mpz_set_str(p, kP, 16);
  mpz_to_limbs(c.p, p);

  mpz_set_ui(t, 0);
  mpz_setbit(t, 384);
  mpz_mod(t, t, p);
  mpz_to_limbs(c.r1, t);  // R mod p

  mpz_set_ui(t, 0);
  mpz_setbit(t, 384);
  mpz_mod(t, t, p);
  mpz_mul(t, t, t);
  mpz_mod(t, t, p);
  mpz_to_limbs(c.r2, t);  // R^2 mod p

  mpz_sub_ui(t, p, 1);
  mpz_tdiv_q_2exp(t, t, 1);
  mpz_to_limbs(c.p_minus_1_half, t);

  mpz_set_ui(two64, 0);
  mpz_setbit(two64, 64);
  mpz_invert(t, p, two64);
  mpz_sub(t, two64, t);  // -p^{-1} mod 2^64
  c.n0inv = mpz_get_ui(t);

  mpz_init_set(c.p_z, p);
  mpz_init(c.sqrt_exp);
  mpz_add_ui(c.sqrt_exp, p, 1);
  mpz_tdiv_q_2exp(c.sqrt_exp, c.sqrt_exp, 2);  // (p+1)/4

  mpz_clears(p, t, two64, nullptr);
  return c;
}

// Replaces `out` with `sub_result` when `take_sub` is all-ones.
inline void masked_select(mp_limb_t out[FP_LIMBS], const mp_limb_t a[FP_LIMBS],
                          const mp_limb_t b[FP_LIMBS], mp_limb_t take_b_mask) {
  for (int i = 0; i < FP_LIMBS; ++i)
    out[i] = (b[i] & take_b_mask) | (a[i] & ~take_b_mask);
}

// Reduce a value known to be < 2p into [0, p).
inline void reduce_once(mp_limb_t r[FP_LIMBS], const mp_limb_t a[FP_LIMBS], mp_limb_t overflow) {
  const FpCtx& c = fp_ctx();
  mp_limb_t tmp[FP_LIMBS];
  mp_limb_t borrow = mpn_sub_n(tmp, a, c.p, FP_LIMBS);
  // Subtract applies when the raw value overflowed 2^384 or a >= p.
  mp_limb_t take_sub = mp_limb_t(0) - (overflow | (mp_limb_t(1) - borrow));
  masked_select(r, a, tmp, take_sub);
}

// Montgomery reduction of a 12-limb product into 6 limbs.
inline void mont_reduce(mp_limb_t out[FP_LIMBS], mp_limb_t t[2 * FP_LIMBS]) {
  const FpCtx& c = fp_ctx();
  mp_limb_t extra = 0;
  for (int i = 0; i < FP_LIMBS; ++i) {
    mp_limb_t m = t[i] * c.n0inv;
    mp_limb_t carry = mpn_addmul_1(t + i, c.p, FP_LIMBS, m);
    extra += mpn_add_1(t + i + FP_LIMBS, t + i + FP_LIMBS, FP_LIMBS - i, carry);
  }
  // Result is (t / 2^384) < 2p; p has 381 bits so the carry out of the top
  // limb is provably zero, but fold it into the conditional subtract anyway.
  reduce_once(out, t + FP_LIMBS, extra);
}

}  // namespace

const FpCtx& fp_ctx() {
  static const FpCtx ctx = build_ctx();
  return ctx;
}

Fp Fp::one() {
  Fp r;
  std::memcpy(r.v, fp_ctx().r1, sizeof(r.v));
  return r;
}

Fp Fp::from_u64(uint64_t x) {
  Fp r = zero();
  r.v[0] = x;
  return r * Fp{{fp_ctx().r2[0], fp_ctx().r2[1], fp_ctx().r2[2], fp_ctx().r2[3], fp_ctx().r2[4],
                 fp_ctx().r2[5]}};
}

bool Fp::is_zero() const {
  mp_limb_t acc = 0;
  for (mp_limb_t l : v) acc |= l;
  return acc == 0;
}

bool Fp::operator==(const Fp& o) const {
  mp_limb_t acc = 0;
  for (int i = 0; i < FP_LIMBS; ++i) acc |= v[i] ^ o.v[i];
  return acc == 0;
}

Fp Fp::operator+(const Fp& o) const {
  Fp r;
  mp_limb_t carry = mpn_add_n(r.v, v, o.v, FP_LIMBS);
  reduce_once(r.v, r.v, carry);
  return r;
}

Fp Fp::operator-(const Fp& o) const {
  Fp r;
  mp_limb_t borrow = mpn_sub_n(r.v, v, o.v, FP_LIMBS);
  mp_limb_t tmp[FP_LIMBS];
  mpn_add_n(tmp, r.v, fp_ctx().p, FP_LIMBS);
  masked_select(r.v, r.v, tmp, mp_limb_t(0) - borrow);
  return r;
}

Fp Fp::neg() const {
  Fp r;
  mpn_sub_n(r.v, fp_ctx().p, v, FP_LIMBS);
  // p - 0 would yield p itself; clamp back to zero.
  mp_limb_t nz = 0;
  for (mp_limb_t l : v) nz |= l;
  mp_limb_t zero_mask = mp_limb_t(0) - mp_limb_t(nz == 0);
  for (int i = 0; i < FP_LIMBS; ++i) r.v[i] &= ~zero_mask;
  return r;
}

Fp Fp::operator*(const Fp& o) const {
  mp_limb_t t[2 * FP_LIMBS];
  mpn_mul_n(t, v, o.v, FP_LIMBS);
  Fp r;
  mont_reduce(r.v, t);
  return r;
}

Fp Fp::square() const {
  mp_limb_t t[2 * FP_LIMBS];
  mpn_sqr(t, v, FP_LIMBS);
  Fp r;
  mont_reduce(r.v, t);
  return r;
}

Fp Fp::inv() const {
  if (is_zero()) return zero();
  mpz_t a, r;
  mpz_inits(a, r, nullptr);
  get_mpz(a);
  mpz_invert(r, a, fp_ctx().p_z);
  Fp out = from_mpz(r);
  mpz_clears(a, r, nullptr);
  return out;
}

bool Fp::is_lex_largest() const {
  // Compare the plain value against (p-1)/2.
  mp_limb_t plain[2 * FP_LIMBS];
  std::memcpy(plain, v, FP_LIMBS * sizeof(mp_limb_t));
  std::memset(plain + FP_LIMBS, 0, FP_LIMBS * sizeof(mp_limb_t));
  mp_limb_t dec[FP_LIMBS];
  mont_reduce(dec, plain);  // divides by R: Montgomery -> plain
  return mpn_cmp(dec, fp_ctx().p_minus_1_half, FP_LIMBS) > 0;
}

void Fp::to_bytes(uint8_t out[FP_BYTES]) const {
  mp_limb_t plain[2 * FP_LIMBS];
  std::memcpy(plain, v, FP_LIMBS * sizeof(mp_limb_t));
  std::memset(plain + FP_LIMBS, 0, FP_LIMBS * sizeof(mp_limb_t));
  mp_limb_t dec[FP_LIMBS];
  mont_reduce(dec, plain);
  for (int i = 0; i < FP_LIMBS; ++i) {
    mp_limb_t limb = dec[FP_LIMBS - 1 - i];
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = uint8_t(limb >> (8 * (7 - b)));
  }
}

std::optional<Fp> Fp::from_bytes(const uint8_t in[FP_BYTES]) {
  mp_limb_t plain[FP_LIMBS];
  for (int i = 0; i < FP_LIMBS; ++i) {
    mp_limb_t limb = 0;
    for (int b = 0; b < 8; ++b) limb = (limb << 8) | in[i * 8 + b];
    plain[FP_LIMBS - 1 - i] = limb;
  }
  if (mpn_cmp(plain, fp_ctx().p, FP_LIMBS) >= 0) return std::nullopt;
  // plain -> Montgomery: multiply by R^2.
  mp_limb_t t[2 * FP_LIMBS];
  mpn_mul_n(t, plain, fp_ctx().r2, FP_LIMBS);
  Fp r;
  mont_reduce(r.v, t);
  return r;
}

void Fp::get_mpz(mpz_t out) const {
  mp_limb_t plain[2 * FP_LIMBS];
  std::memcpy(plain, v, FP_LIMBS * sizeof(mp_limb_t));
  std::memset(plain + FP_LIMBS, 0, FP_LIMBS * sizeof(mp_limb_t));
  mp_limb_t dec[FP_LIMBS];
  mont_reduce(dec, plain);
  mpz_import(out, FP_LIMBS, -1, sizeof(mp_limb_t), 0, 0, dec);
}

Fp Fp::from_mpz(const mpz_t in) {
  mpz_t red;
  mpz_init(red);
  mpz_mod(red, in, fp_ctx().p_z);
  mp_limb_t plain[FP_LIMBS];
  std::memset(plain, 0, sizeof(plain));
  size_t count = 0;
  mpz_export(plain, &count, -1, sizeof(mp_limb_t), 0, 0, red);
  mpz_clear(red);
  mp_limb_t t[2 * FP_LIMBS];
  mpn_mul_n(t, plain, fp_ctx().r2, FP_LIMBS);
  Fp r;
  mont_reduce(r.v, t);
  return r;
}

std::optional<Fp> Fp::sqrt(const Fp& a) {
  if (a.is_zero()) return zero();
  // p = 3 mod 4: candidate root is a^{(p+1)/4}; verify by squaring.
  mpz_t az, rz;
  mpz_inits(az, rz, nullptr);
  a.get_mpz(az);
  mpz_powm(rz, az, fp_ctx().sqrt_exp, fp_ctx().p_z);
  Fp r = from_mpz(rz);
  mpz_clears(az, rz, nullptr);
  if (r.square() != a) return std::nullopt;
  return r;
}

}  // namespace nicbe::ec
