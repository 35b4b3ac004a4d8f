#include "ec/g2.hpp"

#include <cstring>

namespace nicbe::ec {

namespace {

const char* kGenX0 =
    "024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8";
const char* kGenX1 =
    "13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e";
const char* kGenY0 =
    "0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c923ac9cc3baca289e193548608b82801";
const char* kGenY1 =
    "0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be";

Fp fp_from_hex(const char* hex) {
  mpz_t z;
  mpz_init_set_str(z, hex, 16);
  Fp r = Fp::from_mpz(z);
  mpz_clear(z);
  return r;
}

}  // namespace

Fp2 g2_b() { return Fp2{Fp::from_u64(4), Fp::from_u64(4)}; }

const G2Affine& g2_generator() {
  static const G2Affine gen = [] {
    G2Affine g;
    g.x = Fp2{fp_from_hex(kGenX0), fp_from_hex(kGenX1)};
    g.y = Fp2{fp_from_hex(kGenY0), fp_from_hex(kGenY1)};
    g.inf = false;
    return g;
  }();
  return gen;
}

bool g2_valid(const G2Affine& p) {
  return on_curve(p, g2_b()) && in_order_r_subgroup(p);
}

void g2_to_bytes(const G2Affine& p, uint8_t out[G2_BYTES]) {
  if (p.inf) {
    std::memset(out, 0, G2_BYTES);
    out[0] = 0xc0;
    return;
  }
  p.x.c1.to_bytes(out);
  p.x.c0.to_bytes(out + FP_BYTES);
  out[0] |= 0x80;
  if (p.y.is_lex_largest()) out[0] |= 0x20;
}

std::optional<G2Affine> g2_from_bytes(const uint8_t in[G2_BYTES]) {
  uint8_t flags = in[0] & 0xe0;
  if (!(flags & 0x80)) return std::nullopt;
  if (flags & 0x40) {
    if (flags & 0x20) return std::nullopt;
    uint8_t acc = uint8_t(in[0] & 0x1f);
    for (int i = 1; i < G2_BYTES; ++i) acc |= in[i];
    if (acc != 0) return std::nullopt;
    return G2Affine{};
  }
  uint8_t c1b[FP_BYTES];
  std::memcpy(c1b, in, FP_BYTES);
  c1b[0] &= 0x1f;
  auto x1 = Fp::from_bytes(c1b);
  auto x0 = Fp::from_bytes(in + FP_BYTES);
  if (!x0 || !x1) return std::nullopt;
  Fp2 x{*x0, *x1};
  auto y = Fp2::sqrt(x.square() * x + g2_b());
  if (!y) return std::nullopt;
  bool want_largest = (flags & 0x20) != 0;
  if (y->is_lex_largest() != want_largest) *y = y->neg();
  G2Affine p{x, *y, false};
  if (!in_order_r_subgroup(p)) return std::nullopt;
  return p;
}

}  // namespace nicbe::ec
