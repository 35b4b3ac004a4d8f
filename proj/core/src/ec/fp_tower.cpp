#include "ec/fp_tower.hpp"

namespace nicbe::ec {

Fp2 fp2_pow_mpz(const Fp2& a, const mpz_t e) {
  Fp2 acc = Fp2::one();
  long bits = (long)mpz_sizeinbase(e, 2);
  for (long i = bits - 1; i >= 0; --i) {
    acc = acc.square();
    if (mpz_tstbit(e, i)) acc = acc * a;
  }
  return acc;
}

std::optional<Fp2> Fp2::sqrt(const Fp2& a) {
  if (a.is_zero()) return zero();
  if (a.c1.is_zero()) {
    if (auto s = Fp::sqrt(a.c0)) return Fp2{*s, Fp::zero()};
    // -1 is a non-residue (p = 3 mod 4), so -c0 must be square: (t*u)^2 = -t^2.
    auto s = Fp::sqrt(a.c0.neg());
    if (!s) return std::nullopt;
    return Fp2{Fp::zero(), *s};
  }
  Fp norm = a.c0.square() + a.c1.square();
  auto s = Fp::sqrt(norm);
  if (!s) return std::nullopt;
  Fp half = Fp::from_u64(2).inv();
  Fp alpha = (a.c0 + *s) * half;
  auto x0 = Fp::sqrt(alpha);
  if (!x0) {
    alpha = (a.c0 - *s) * half;
    x0 = Fp::sqrt(alpha);
    if (!x0) return std::nullopt;
  }
  Fp x1 = a.c1 * half * x0->inv();
  Fp2 r{*x0, x1};
  if (r.square() != a) return std::nullopt;
  return r;
}

namespace {

Fp12FrobCtx build_frob_ctx() {
  Fp12FrobCtx c;
  const FpCtx& f = fp_ctx();
  mpz_t e;
  mpz_init(e);

  // gamma = xi^{(p-1)/6}
  mpz_sub_ui(e, f.p_z, 1);
  mpz_tdiv_q_ui(e, e, 6);
  Fp2 g = fp2_pow_mpz(Fp2::xi(), e);
  c.g1[0] = Fp2::one();
  for (int j = 1; j < 6; ++j) c.g1[j] = c.g1[j - 1] * g;

  // gamma2 = xi^{(p^2-1)/6}
  mpz_mul(e, f.p_z, f.p_z);
  mpz_sub_ui(e, e, 1);
  mpz_tdiv_q_ui(e, e, 6);
  Fp2 g2 = fp2_pow_mpz(Fp2::xi(), e);
  c.g2[0] = Fp2::one();
  for (int j = 1; j < 6; ++j) c.g2[j] = c.g2[j - 1] * g2;

  mpz_clear(e);
  return c;
}

}  // namespace

const Fp12FrobCtx& fp12_frob_ctx() {
  static const Fp12FrobCtx ctx = build_frob_ctx();
  return ctx;
}

Fp12 Fp12::frobenius() const {
  const auto& k = fp12_frob_ctx();
  // Flat w-power coefficients: (c0.c0, c1.c0, c0.c1, c1.c1, c0.c2, c1.c2)
  // are the w^0..w^5 coordinates; ^p conjugates each and scales by gamma^j.
  Fp12 r;
  r.c0.c0 = c0.c0.conj();
  r.c1.c0 = c1.c0.conj() * k.g1[1];
  r.c0.c1 = c0.c1.conj() * k.g1[2];
  r.c1.c1 = c1.c1.conj() * k.g1[3];
  r.c0.c2 = c0.c2.conj() * k.g1[4];
  r.c1.c2 = c1.c2.conj() * k.g1[5];
  return r;
}

Fp12 Fp12::frobenius2() const {
  const auto& k = fp12_frob_ctx();
  Fp12 r;
  r.c0.c0 = c0.c0;
  r.c1.c0 = c1.c0 * k.g2[1];
  r.c0.c1 = c0.c1 * k.g2[2];
  r.c1.c1 = c1.c1 * k.g2[3];
  r.c0.c2 = c0.c2 * k.g2[4];
  r.c1.c2 = c1.c2 * k.g2[5];
  return r;
}

Fp12 Fp12::pow_u64(uint64_t e) const {
  if (e == 0) return one();
  int top = 63;
  while (!((e >> top) & 1)) --top;
  Fp12 acc = *this;
  for (int i = top - 1; i >= 0; --i) {
    acc = acc.square();
    if ((e >> i) & 1) acc = acc * *this;
  }
  return acc;
}

void Fp12::to_bytes(uint8_t out[12 * FP_BYTES]) const {
  const Fp* coeffs[12] = {&c0.c0.c0, &c0.c0.c1, &c0.c1.c0, &c0.c1.c1,
                          &c0.c2.c0, &c0.c2.c1, &c1.c0.c0, &c1.c0.c1,
                          &c1.c1.c0, &c1.c1.c1, &c1.c2.c0, &c1.c2.c1};
  for (int i = 0; i < 12; ++i) coeffs[i]->to_bytes(out + i * FP_BYTES);
}

}  // namespace nicbe::ec
