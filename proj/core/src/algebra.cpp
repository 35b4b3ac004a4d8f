#include "nicbe/algebra.hpp"

#include <gmp.h>

#include <cstring>

#include "algebra_detail.hpp"
#include "ec/pairing.hpp"

namespace nicbe {

namespace {

thread_local OpTallyDetail g_tally;

// r as an mpz, for scalar arithmetic (cold paths only).
struct OrderCtx {
  mpz_t r;
  OrderCtx() {
    mpz_init(r);
    mpz_import(r, ec::SCALAR_BYTES, 1, 1, 1, 0, ec::kOrderBytes);
  }
};
const OrderCtx& order_ctx() {
  static OrderCtx ctx;
  return ctx;
}

void scalar_to_mpz(mpz_t out, const std::array<uint8_t, Scalar::kBytes>& be) {
  mpz_import(out, be.size(), 1, 1, 1, 0, be.data());
}

std::array<uint8_t, Scalar::kBytes> mpz_to_scalar_bytes(const mpz_t v) {
  std::array<uint8_t, Scalar::kBytes> out{};
  size_t count = 0;
  size_t bytes = (mpz_sizeinbase(v, 2) + 7) / 8;
  if (bytes > out.size()) throw Error(ErrorCode::internal, "scalar overflow");
  mpz_export(out.data() + (out.size() - bytes), &count, 1, 1, 1, 0, v);
  return out;
}

static_assert(sizeof(ec::Fp) == 48, "Fp must be six packed limbs");
static_assert(sizeof(ec::Fp12) == 576, "Fp12 must be twelve packed Fp coefficients");

}  // namespace

namespace detail {

OpTallyDetail& tally() { return g_tally; }

ec::G1Affine Access::g1(const G1Elem& e) {
  ec::G1Affine a;
  a.inf = e.inf_;
  std::memcpy(a.x.v, e.x_.data(), sizeof(a.x.v));
  std::memcpy(a.y.v, e.y_.data(), sizeof(a.y.v));
  return a;
}

G1Elem Access::g1(const ec::G1Affine& a) {
  G1Elem e;
  e.inf_ = a.inf;
  if (!a.inf) {
    std::memcpy(e.x_.data(), a.x.v, sizeof(a.x.v));
    std::memcpy(e.y_.data(), a.y.v, sizeof(a.y.v));
  }
  return e;
}

ec::G2Affine Access::g2(const G2Elem& e) {
  ec::G2Affine a;
  a.inf = e.inf_;
  std::memcpy(a.x.c0.v, e.x_.data(), 48);
  std::memcpy(a.x.c1.v, e.x_.data() + 6, 48);
  std::memcpy(a.y.c0.v, e.y_.data(), 48);
  std::memcpy(a.y.c1.v, e.y_.data() + 6, 48);
  return a;
}

G2Elem Access::g2(const ec::G2Affine& a) {
  G2Elem e;
  e.inf_ = a.inf;
  if (!a.inf) {
    std::memcpy(e.x_.data(), a.x.c0.v, 48);
    std::memcpy(e.x_.data() + 6, a.x.c1.v, 48);
    std::memcpy(e.y_.data(), a.y.c0.v, 48);
    std::memcpy(e.y_.data() + 6, a.y.c1.v, 48);
  }
  return e;
}

ec::Fp12 Access::gt(const GTElem& e) {
  ec::Fp12 f;
  std::memcpy(&f, e.v_.data(), sizeof(f));
  return f;
}

GTElem Access::gt(const ec::Fp12& f) {
  GTElem e;
  std::memcpy(e.v_.data(), &f, sizeof(f));
  return e;
}

Scalar Access::scalar_from_be(const std::array<uint8_t, 32>& be) {
  Scalar s;
  s.be_ = be;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------- Scalar --

Scalar Scalar::from_u64(uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.be_[31 - i] = uint8_t(v >> (8 * i));
  return s;
}

Scalar Scalar::from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kBytes) throw Error(ErrorCode::format, "scalar: wrong length");
  if (std::memcmp(in.data(), ec::kOrderBytes, kBytes) >= 0)
    throw Error(ErrorCode::format, "scalar: not reduced mod the group order");
  Scalar s;
  std::memcpy(s.be_.data(), in.data(), kBytes);
  return s;
}

bool Scalar::is_zero() const {
  uint8_t acc = 0;
  for (uint8_t b : be_) acc |= b;
  return acc == 0;
}

namespace {
template <class F>
Scalar scalar_binop(const Scalar& a, const Scalar& b, F&& f) {
  mpz_t x, y;
  mpz_init(x);
  mpz_init(y);
  scalar_to_mpz(x, a.to_bytes());
  scalar_to_mpz(y, b.to_bytes());
  f(x, y);
  mpz_mod(x, x, order_ctx().r);
  auto be = mpz_to_scalar_bytes(x);
  mpz_clear(x);
  mpz_clear(y);
  return detail::Access::scalar_from_be(be);
}
}  // namespace

Scalar Scalar::add(const Scalar& o) const {
  return scalar_binop(*this, o, [](mpz_t x, mpz_t y) { mpz_add(x, x, y); });
}

Scalar Scalar::mul(const Scalar& o) const {
  return scalar_binop(*this, o, [](mpz_t x, mpz_t y) { mpz_mul(x, x, y); });
}

Scalar Scalar::negate() const {
  return scalar_binop(*this, Scalar(), [](mpz_t x, mpz_t) { mpz_neg(x, x); });
}

Scalar Scalar::inverse() const {
  if (is_zero()) return Scalar();
  return scalar_binop(*this, Scalar(), [](mpz_t x, mpz_t) {
    mpz_invert(x, x, order_ctx().r);
  });
}

// ---------------------------------------------------------------- G1Elem --

G1Elem G1Elem::generator() { return detail::Access::g1(ec::g1_generator()); }

bool G1Elem::operator==(const G1Elem& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return x_ == o.x_ && y_ == o.y_;
}

G1Elem G1Elem::operator*(const G1Elem& o) const {
  ++detail::tally().g1_mul;
  ec::G1Jac r = ec::jac_add_affine(ec::G1Jac::from_affine(detail::Access::g1(*this)),
                                   detail::Access::g1(o));
  return detail::Access::g1(ec::jac_to_affine(r));
}

G1Elem G1Elem::pow(const Scalar& e) const {
  ++detail::tally().g1_exp;
  ec::G1Jac r = ec::scalar_mul(detail::Access::g1(*this), e.to_bytes().data());
  return detail::Access::g1(ec::jac_to_affine(r));
}

G1Elem G1Elem::inverse() const {
  ++detail::tally().inversions;
  if (inf_) return *this;
  ec::G1Affine a = detail::Access::g1(*this);
  a.y = a.y.neg();
  return detail::Access::g1(a);
}

std::array<uint8_t, G1Elem::kBytes> G1Elem::to_bytes() const {
  std::array<uint8_t, kBytes> out{};
  ec::g1_to_bytes(detail::Access::g1(*this), out.data());
  return out;
}

G1Elem G1Elem::from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kBytes) throw Error(ErrorCode::format, "G1 point: wrong length");
  auto p = ec::g1_from_bytes(in.data());
  if (!p) throw Error(ErrorCode::format, "G1 point: invalid encoding");
  return detail::Access::g1(*p);
}

// ---------------------------------------------------------------- G2Elem --

G2Elem G2Elem::generator() { return detail::Access::g2(ec::g2_generator()); }

bool G2Elem::operator==(const G2Elem& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return x_ == o.x_ && y_ == o.y_;
}

G2Elem G2Elem::operator*(const G2Elem& o) const {
  ++detail::tally().g2_mul;
  ec::G2Jac r = ec::jac_add_affine(ec::G2Jac::from_affine(detail::Access::g2(*this)),
                                   detail::Access::g2(o));
  return detail::Access::g2(ec::jac_to_affine(r));
}

G2Elem G2Elem::pow(const Scalar& e) const {
  ++detail::tally().g2_exp;
  ec::G2Jac r = ec::scalar_mul(detail::Access::g2(*this), e.to_bytes().data());
  return detail::Access::g2(ec::jac_to_affine(r));
}

G2Elem G2Elem::inverse() const {
  ++detail::tally().inversions;
  if (inf_) return *this;
  ec::G2Affine a = detail::Access::g2(*this);
  a.y = a.y.neg();
  return detail::Access::g2(a);
}

std::array<uint8_t, G2Elem::kBytes> G2Elem::to_bytes() const {
  std::array<uint8_t, kBytes> out{};
  ec::g2_to_bytes(detail::Access::g2(*this), out.data());
  return out;
}

G2Elem G2Elem::from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kBytes) throw Error(ErrorCode::format, "G2 point: wrong length");
  auto p = ec::g2_from_bytes(in.data());
  if (!p) throw Error(ErrorCode::format, "G2 point: invalid encoding");
  return detail::Access::g2(*p);
}

// ---------------------------------------------------------------- GTElem --

GTElem::GTElem() {
  ec::Fp12 one = ec::Fp12::one();
  static_assert(sizeof(one) == sizeof(v_));
  std::memcpy(v_.data(), &one, sizeof(one));
}

bool GTElem::is_identity() const { return *this == GTElem(); }

GTElem GTElem::operator*(const GTElem& o) const {
  ++detail::tally().gt_mul;
  return detail::Access::gt(detail::Access::gt(*this) * detail::Access::gt(o));
}

GTElem GTElem::pow(const Scalar& e) const {
  ++detail::tally().gt_exp;
  ec::Fp12 base = detail::Access::gt(*this);

  // Fixed 4-bit-window exponentiation mirroring the curve-side ladder:
  // uniform square/select/multiply pattern with a masked table scan.
  ec::Fp12 table[16];
  table[0] = ec::Fp12::one();
  table[1] = base;
  for (int i = 2; i < 16; ++i) table[i] = table[i - 1] * base;

  auto select = [&](unsigned digit) {
    ec::Fp12 out;
    std::memset(static_cast<void*>(&out), 0, sizeof(out));
    auto* dst = reinterpret_cast<unsigned char*>(&out);
    for (unsigned i = 0; i < 16; ++i) {
      unsigned char mask = (unsigned char)(0) - (unsigned char)(i == digit);
      const auto* src = reinterpret_cast<const unsigned char*>(&table[i]);
      for (size_t b = 0; b < sizeof(ec::Fp12); ++b) dst[b] |= (unsigned char)(src[b] & mask);
    }
    return out;
  };

  auto be = e.to_bytes();
  ec::Fp12 acc = ec::Fp12::one();
  for (size_t byte = 0; byte < be.size(); ++byte) {
    for (int half = 0; half < 2; ++half) {
      for (int d = 0; d < 4; ++d) acc = acc.square();
      unsigned digit = half == 0 ? (be[byte] >> 4) : (be[byte] & 0x0f);
      acc = acc * select(digit);
    }
  }
  return detail::Access::gt(acc);
}

GTElem GTElem::inverse() const {
  ++detail::tally().inversions;
  // Every reachable GT value lies in the cyclotomic subgroup (pairing
  // outputs and their products/powers), where inversion is conjugation.
  return detail::Access::gt(detail::Access::gt(*this).conj());
}

std::array<uint8_t, GTElem::kBytes> GTElem::to_bytes() const {
  std::array<uint8_t, kBytes> out{};
  detail::Access::gt(*this).to_bytes(out.data());
  return out;
}

// --------------------------------------------------------------- pairing --

GTElem pairing(const G1Elem& a, const G2Elem& b) {
  std::array<std::pair<G1Elem, G2Elem>, 1> legs{{{a, b}}};
  return pairing_product(legs);
}

GTElem pairing_product(std::span<const std::pair<G1Elem, G2Elem>> legs) {
  detail::tally().pairings += legs.size();
  std::vector<std::pair<ec::G1Affine, ec::G2Affine>> ec_legs;
  ec_legs.reserve(legs.size());
  for (const auto& [p, q] : legs)
    ec_legs.emplace_back(detail::Access::g1(p), detail::Access::g2(q));
  return detail::Access::gt(ec::pairing_product(ec_legs));
}

// --------------------------------------------------------- multi-combine --

G1Elem g1_multi_combine(std::span<const G1Elem> elems, std::span<const int> signs) {
  if (elems.size() != signs.size())
    throw Error(ErrorCode::validation, "multi-combine: length mismatch");
  for (int s : signs)
    if (s != 1 && s != -1)
      throw Error(ErrorCode::validation, "multi-combine: sign outside {+1,-1}");
  if (elems.empty()) return G1Elem::identity();

  detail::tally().g1_mul += elems.size() - 1;
  ec::G1Jac acc = ec::G1Jac::infinity();
  for (size_t i = 0; i < elems.size(); ++i) {
    ec::G1Affine a = detail::Access::g1(elems[i]);
    if (signs[i] < 0) {
      ++detail::tally().inversions;
      a.y = a.y.neg();
    }
    acc = ec::jac_add_affine(acc, a);
  }
  return detail::Access::g1(ec::jac_to_affine(acc));
}

G2Elem g2_multi_combine(std::span<const G2Elem> elems, std::span<const int> signs) {
  if (elems.size() != signs.size())
    throw Error(ErrorCode::validation, "multi-combine: length mismatch");
  for (int s : signs)
    if (s != 1 && s != -1)
      throw Error(ErrorCode::validation, "multi-combine: sign outside {+1,-1}");
  if (elems.empty()) return G2Elem::identity();

  detail::tally().g2_mul += elems.size() - 1;
  ec::G2Jac acc = ec::G2Jac::infinity();
  for (size_t i = 0; i < elems.size(); ++i) {
    ec::G2Affine a = detail::Access::g2(elems[i]);
    if (signs[i] < 0) {
      ++detail::tally().inversions;
      a.y = a.y.neg();
    }
    acc = ec::jac_add_affine(acc, a);
  }
  return detail::Access::g2(ec::jac_to_affine(acc));
}

G1Elem g1_product(std::span<const G1Elem> elems) {
  std::vector<int> signs(elems.size(), 1);
  return g1_multi_combine(elems, signs);
}

G2Elem g2_product(std::span<const G2Elem> elems) {
  std::vector<int> signs(elems.size(), 1);
  return g2_multi_combine(elems, signs);
}

// ----------------------------------------------------------------- tally --

void op_tally_reset() { g_tally = OpTallyDetail{}; }

OpCounters op_tally_counters() {
  OpCounters c;
  c.pairings = g_tally.pairings;
  c.g1_exponentiations = g_tally.g1_exp + g_tally.g2_exp;
  c.g1_multiplications = g_tally.g1_mul + g_tally.g2_mul;
  return c;
}

OpTallyDetail op_tally_detail() { return g_tally; }

std::array<uint8_t, 32> group_order_bytes() {
  std::array<uint8_t, 32> out{};
  std::memcpy(out.data(), ec::kOrderBytes, out.size());
  return out;
}

}  // namespace nicbe
