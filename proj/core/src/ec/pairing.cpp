#include "ec/pairing.hpp"

namespace nicbe::ec {

namespace {

// Simultaneous inversion (Montgomery's trick): one field inversion total.
void fp2_batch_inv(std::vector<Fp2>& xs) {
  if (xs.empty()) return;
  std::vector<Fp2> prefix(xs.size());
  Fp2 acc = Fp2::one();
  for (size_t i = 0; i < xs.size(); ++i) {
    prefix[i] = acc;
    acc = acc * xs[i];
  }
  Fp2 inv = acc.inv();
  for (size_t i = xs.size(); i-- > 0;) {
    Fp2 xi = xs[i];
    xs[i] = inv * prefix[i];
    inv = inv * xi;
  }
}

struct LineEval {
  Fp2 a0, a1, b1;  // line scaled by w^3: a0 + a1*v + b1*v*w
};

}  // namespace

Fp12 miller_loop(const std::vector<std::pair<G1Affine, G2Affine>>& legs_in) {
  // Identity on either side pairs to 1; such legs contribute no line.
  std::vector<std::pair<G1Affine, G2Affine>> legs;
  legs.reserve(legs_in.size());
  for (const auto& l : legs_in)
    if (!l.first.inf && !l.second.inf) legs.push_back(l);
  if (legs.empty()) return Fp12::one();

  const size_t m = legs.size();
  std::vector<G2Affine> T(m);
  for (size_t j = 0; j < m; ++j) T[j] = legs[j].second;

  std::vector<Fp2> denom(m);
  std::vector<LineEval> lines(m);
  Fp12 f = Fp12::one();

  auto dbl_steps = [&] {
    for (size_t j = 0; j < m; ++j) denom[j] = T[j].y.dbl();
    fp2_batch_inv(denom);
    for (size_t j = 0; j < m; ++j) {
      const Fp2& xt = T[j].x;
      const Fp2& yt = T[j].y;
      Fp2 xt2 = xt.square();
      Fp2 lam = (xt2 + xt2.dbl()) * denom[j];  // 3 x_T^2 / (2 y_T)
      Fp2 x3 = lam.square() - xt.dbl();
      Fp2 y3 = lam * (xt - x3) - yt;
      lines[j].a0 = lam * xt - yt;
      lines[j].a1 = lam.mul_fp(legs[j].first.x).neg();
      lines[j].b1 = Fp2{legs[j].first.y, Fp::zero()};
      T[j].x = x3;
      T[j].y = y3;
    }
    for (size_t j = 0; j < m; ++j) f = f.mul_by_014(lines[j].a0, lines[j].a1, lines[j].b1);
  };

  auto add_steps = [&] {
    for (size_t j = 0; j < m; ++j) denom[j] = T[j].x - legs[j].second.x;
    fp2_batch_inv(denom);
    for (size_t j = 0; j < m; ++j) {
      const Fp2& xq = legs[j].second.x;
      const Fp2& yq = legs[j].second.y;
      Fp2 lam = (T[j].y - yq) * denom[j];
      Fp2 x3 = lam.square() - T[j].x - xq;
      Fp2 y3 = lam * (T[j].x - x3) - T[j].y;
      lines[j].a0 = lam * xq - yq;
      lines[j].a1 = lam.mul_fp(legs[j].first.x).neg();
      lines[j].b1 = Fp2{legs[j].first.y, Fp::zero()};
      T[j].x = x3;
      T[j].y = y3;
    }
    for (size_t j = 0; j < m; ++j) f = f.mul_by_014(lines[j].a0, lines[j].a1, lines[j].b1);
  };

  for (int i = 62; i >= 0; --i) {
    f = f.square();
    dbl_steps();
    if ((kXAbs >> i) & 1) add_steps();
  }
  // x < 0: conjugation inverts the loop result within the cyclotomic image.
  return f.conj();
}

Fp12 final_exponentiation(const Fp12& f_in) {
  if (f_in == Fp12::zero()) return Fp12::zero();  // defensive; never pairable
  // Easy part: f^{(p^6-1)(p^2+1)}.
  Fp12 t = f_in.inv();
  Fp12 f = f_in.conj() * t;
  f = f.frobenius2() * f;

  // Hard part: f^{(x-1)^2 (x+p) (x^2+p^2-1)} * f^3 = f^{3(p^4-p^2+1)/r}.
  // All operands live in the cyclotomic subgroup, where inverse = conjugate
  // and ^x (x negative) is pow(|x|) then conjugate.
  auto pow_x = [](const Fp12& a) { return a.pow_u64(kXAbs).conj(); };
  Fp12 a = pow_x(f) * f.conj();       // f^{x-1}
  Fp12 b = pow_x(a) * a.conj();       // f^{(x-1)^2}
  Fp12 c = pow_x(b) * b.frobenius();  // b^{x+p}
  Fp12 d = pow_x(pow_x(c)) * c.frobenius2() * c.conj();  // c^{x^2+p^2-1}
  return d * f.square() * f;
}

}  // namespace nicbe::ec
