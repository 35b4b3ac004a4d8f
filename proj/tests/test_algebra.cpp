// Public algebra API: scalar arithmetic against a GMP oracle, the signed
// combination helpers, deterministic randomness, and the operation tally.

#include <gmp.h>

#include <algorithm>
#include <cstring>
#include <set>
#include <vector>

#include "doctest.h"
#include "nicbe/algebra.hpp"
#include "util.hpp"

using namespace nicbe;
using testutil::code_of;
using testutil::from_hex;

namespace {

constexpr const char* kOrderHex =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

struct ScalarOracle {
  mpz_t r;
  gmp_randstate_t rs;
  ScalarOracle() {
    mpz_init_set_str(r, kOrderHex, 16);
    gmp_randinit_default(rs);
    gmp_randseed_ui(rs, 99);
  }
  ~ScalarOracle() {
    mpz_clear(r);
    gmp_randclear(rs);
  }
  Scalar draw(mpz_t keep) {
    mpz_urandomm(keep, rs, r);
    return to_scalar(keep);
  }
  static Scalar to_scalar(const mpz_t v) {
    std::array<uint8_t, 32> be{};
    size_t bytes = mpz_sgn(v) == 0 ? 0 : (mpz_sizeinbase(v, 2) + 7) / 8;
    size_t count = 0;
    if (bytes) mpz_export(be.data() + (32 - bytes), &count, 1, 1, 1, 0, v);
    return Scalar::from_bytes(be);
  }
  static bool eq(const Scalar& s, const mpz_t expect) {
    return s == to_scalar(expect);
  }
};

}  // namespace

TEST_CASE("group order bytes match the frozen constant") {
  auto r = group_order_bytes();
  auto expect = from_hex(kOrderHex);
  CHECK(std::memcmp(r.data(), expect.data(), r.size()) == 0);
}

TEST_CASE("scalar arithmetic agrees with GMP mod r") {
  ScalarOracle o;
  mpz_t a, b, expect;
  mpz_inits(a, b, expect, nullptr);
  for (int i = 0; i < 200; ++i) {
    Scalar sa = o.draw(a), sb = o.draw(b);

    mpz_add(expect, a, b);
    mpz_mod(expect, expect, o.r);
    CHECK(ScalarOracle::eq(sa.add(sb), expect));

    mpz_mul(expect, a, b);
    mpz_mod(expect, expect, o.r);
    CHECK(ScalarOracle::eq(sa.mul(sb), expect));

    mpz_neg(expect, a);
    mpz_mod(expect, expect, o.r);
    CHECK(ScalarOracle::eq(sa.negate(), expect));

    if (mpz_sgn(a) != 0) {
      mpz_invert(expect, a, o.r);
      CHECK(ScalarOracle::eq(sa.inverse(), expect));
      CHECK(sa.mul(sa.inverse()) == Scalar::from_u64(1));
    }
  }
  mpz_clears(a, b, expect, nullptr);

  CHECK(Scalar().is_zero());
  CHECK(Scalar().inverse().is_zero());  // documented convention
  CHECK(Scalar::from_u64(0) == Scalar());
}

TEST_CASE("scalar encoding rejects values >= r") {
  auto r = group_order_bytes();
  CHECK(code_of([&] { Scalar::from_bytes(r); }) == ErrorCode::format);
  std::vector<uint8_t> ff(32, 0xff);
  CHECK(code_of([&] { Scalar::from_bytes(ff); }) == ErrorCode::format);
  std::vector<uint8_t> short_buf(31, 0);
  CHECK(code_of([&] { Scalar::from_bytes(short_buf); }) == ErrorCode::format);

  auto rm1 = r;
  rm1[31] = 0x00;  // r - 1, the largest canonical scalar
  Scalar top = Scalar::from_bytes(rm1);
  CHECK(top.to_bytes() == rm1);
  CHECK(top.add(Scalar::from_u64(1)).is_zero());
}

TEST_CASE("power laws written as repeated products") {
  // g^2 * g^3 == g^5 in both source groups.
  const G1Elem g = G1Elem::generator();
  CHECK(g.pow(Scalar::from_u64(2)) * g.pow(Scalar::from_u64(3)) == g.pow(Scalar::from_u64(5)));
  CHECK(g * g == g.pow(Scalar::from_u64(2)));
  CHECK(g * g * g == g.pow(Scalar::from_u64(3)));

  const G2Elem gh = G2Elem::generator();
  CHECK(gh.pow(Scalar::from_u64(2)) * gh.pow(Scalar::from_u64(3)) == gh.pow(Scalar::from_u64(5)));
  CHECK(gh * gh == gh.pow(Scalar::from_u64(2)));
}

TEST_CASE("signed combination: empty input, inverse law, mixed signs") {
  auto rng = DeterministicRandom::from_u64(17);

  CHECK(g1_multi_combine({}, {}).is_identity());
  CHECK(g2_multi_combine({}, {}).is_identity());
  CHECK(g1_product({}).is_identity());

  G1Elem x = G1Elem::generator().pow(random_scalar(rng));
  std::vector<G1Elem> xx = {x, x};
  std::vector<int> pm = {1, -1};
  CHECK(g1_multi_combine(xx, pm).is_identity());

  G1Elem y = G1Elem::generator().pow(random_scalar(rng));
  G1Elem z = G1Elem::generator().pow(random_scalar(rng));
  std::vector<G1Elem> xyz = {x, y, z};
  std::vector<int> signs = {1, -1, 1};
  CHECK(g1_multi_combine(xyz, signs) == x * y.inverse() * z);
  CHECK(g1_product(xyz) == x * y * z);

  G2Elem q = G2Elem::generator().pow(random_scalar(rng));
  std::vector<G2Elem> qq = {q, q};
  CHECK(g2_multi_combine(qq, pm).is_identity());
  std::vector<G2Elem> qv = {q};
  std::vector<int> one = {1};
  CHECK(g2_multi_combine(qv, one) == q);
  CHECK(g2_product(qv) == q);

  // Contract violations.
  std::vector<int> bad_len = {1};
  CHECK(code_of([&] { g1_multi_combine(xyz, bad_len); }) == ErrorCode::validation);
  std::vector<int> bad_sign = {1, 0, 1};
  CHECK(code_of([&] { g1_multi_combine(xyz, bad_sign); }) == ErrorCode::validation);
  std::vector<int> bad_sign2 = {1, 2, 1};
  CHECK(code_of([&] { g2_multi_combine(qq, {bad_sign2.data(), 2}); }) == ErrorCode::validation);
}

TEST_CASE("deterministic randomness replays exactly") {
  auto a = DeterministicRandom::from_u64(7);
  auto b = DeterministicRandom::from_u64(7);
  uint8_t ba[97], bb[97];
  a.fill(ba, sizeof(ba));
  b.fill(bb, sizeof(bb));
  CHECK(std::memcmp(ba, bb, sizeof(ba)) == 0);

  // Chunked reads see the same stream as one large read.
  auto c = DeterministicRandom::from_u64(7);
  uint8_t bc[97];
  for (size_t off = 0; off < sizeof(bc);) {
    size_t take = std::min<size_t>(13, sizeof(bc) - off);
    c.fill(bc + off, take);
    off += take;
  }
  CHECK(std::memcmp(ba, bc, sizeof(ba)) == 0);

  // Different seeds diverge immediately.
  auto d = DeterministicRandom::from_u64(8);
  uint8_t bd[97];
  d.fill(bd, sizeof(bd));
  CHECK(std::memcmp(ba, bd, sizeof(ba)) != 0);

  // Scalar streams replay too.
  auto e = DeterministicRandom::from_u64(7);
  auto f = DeterministicRandom::from_u64(7);
  for (int i = 0; i < 8; ++i) CHECK(random_scalar(e) == random_scalar(f));
}

TEST_CASE("ten thousand scalar draws are nonzero, canonical, and diverse") {
  auto rng = DeterministicRandom::from_u64(4242);
  auto r = group_order_bytes();
  std::set<std::array<uint8_t, 32>> seen;
  for (int i = 0; i < 10000; ++i) {
    Scalar s = random_scalar(rng);
    CHECK(!s.is_zero());
    auto be = s.to_bytes();
    CHECK(std::memcmp(be.data(), r.data(), 32) < 0);
    seen.insert(be);
  }
  CHECK(seen.size() == 10000);  // collisions are astronomically unlikely
}

TEST_CASE("source-group element encodings reject garbage") {
  std::vector<uint8_t> junk(G1Elem::kBytes, 0xaa);
  CHECK(code_of([&] { G1Elem::from_bytes(junk); }) == ErrorCode::format);
  std::vector<uint8_t> junk2(G2Elem::kBytes, 0x55);
  CHECK(code_of([&] { G2Elem::from_bytes(junk2); }) == ErrorCode::format);
}

TEST_CASE("operation tally: exponentiations, multiplications, inversions") {
  auto rng = DeterministicRandom::from_u64(5);
  G1Elem x = G1Elem::generator().pow(random_scalar(rng));
  G2Elem q = G2Elem::generator().pow(random_scalar(rng));
  Scalar s = random_scalar(rng);

  op_tally_reset();
  (void)(x * x);
  (void)x.pow(s);
  (void)(q * q);
  (void)q.pow(s);
  OpCounters c = op_tally_counters();
  CHECK(c.g1_multiplications == 2);   // both source groups combined
  CHECK(c.g1_exponentiations == 2);
  CHECK(c.pairings == 0);

  OpTallyDetail d = op_tally_detail();
  CHECK(d.g1_mul == 1);
  CHECK(d.g2_mul == 1);
  CHECK(d.g1_exp == 1);
  CHECK(d.g2_exp == 1);

  // multi_combine: m-1 multiplications plus one inversion per -1 sign.
  std::vector<G1Elem> elems = {x, x, x, x};
  std::vector<int> signs = {1, -1, 1, -1};
  op_tally_reset();
  g1_multi_combine(elems, signs);
  d = op_tally_detail();
  CHECK(d.g1_mul == 3);
  CHECK(d.inversions == 2);

  op_tally_reset();
  (void)x.inverse();
  (void)q.inverse();
  GTElem k = GTElem();
  (void)k.inverse();
  d = op_tally_detail();
  CHECK(d.inversions == 3);

  op_tally_reset();
  (void)k.pow(s);
  (void)(k * k);
  d = op_tally_detail();
  CHECK(d.gt_exp == 1);
  CHECK(d.gt_mul == 1);
}
