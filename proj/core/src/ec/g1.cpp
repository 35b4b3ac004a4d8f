#include "ec/g1.hpp"

#include <cstring>

namespace nicbe::ec {

const uint8_t kOrderBytes[SCALAR_BYTES] = {
    0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8, 0x08, 0x09, 0xa1, 0xd8, 0x05,
    0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe, 0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0x01};

namespace {

const char* kGenX =
    "17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb";
const char* kGenY =
    "08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1";

Fp fp_from_hex(const char* hex) {
  mpz_t z;
  mpz_init_set_str(z, hex, 16);
  Fp r = Fp::from_mpz(z);
  mpz_clear(z);
  return r;
}

}  // namespace

Fp g1_b() { return Fp::from_u64(4); }

const G1Affine& g1_generator() {
  static const G1Affine gen = [] {
    G1Affine g;
    g.x = fp_from_hex(kGenX);
    g.y = fp_from_hex(kGenY);
    g.inf = false;
    return g;
  }();
  return gen;
}

bool g1_valid(const G1Affine& p) {
  return on_curve(p, g1_b()) && in_order_r_subgroup(p);
}

void g1_to_bytes(const G1Affine& p, uint8_t out[G1_BYTES]) {
  if (p.inf) {
    std::memset(out, 0, G1_BYTES);
    out[0] = 0xc0;
    return;
  }
  p.x.to_bytes(out);
  out[0] |= 0x80;
  if (p.y.is_lex_largest()) out[0] |= 0x20;
}

std::optional<G1Affine> g1_from_bytes(const uint8_t in[G1_BYTES]) {
  uint8_t flags = in[0] & 0xe0;
  if (!(flags & 0x80)) return std::nullopt;  // only compressed form exists
  if (flags & 0x40) {
    if (flags & 0x20) return std::nullopt;
    uint8_t acc = uint8_t(in[0] & 0x1f);
    for (int i = 1; i < G1_BYTES; ++i) acc |= in[i];
    if (acc != 0) return std::nullopt;
    return G1Affine{};
  }
  uint8_t xb[G1_BYTES];
  std::memcpy(xb, in, G1_BYTES);
  xb[0] &= 0x1f;
  auto x = Fp::from_bytes(xb);
  if (!x) return std::nullopt;
  auto y = Fp::sqrt(x->square() * *x + g1_b());
  if (!y) return std::nullopt;  // x not on the curve
  bool want_largest = (flags & 0x20) != 0;
  if (y->is_lex_largest() != want_largest) *y = y->neg();
  G1Affine p{*x, *y, false};
  if (!in_order_r_subgroup(p)) return std::nullopt;
  return p;
}

}  // namespace nicbe::ec
