// Trusted setup: structure of the published parameters, the per-cell
// pairing consistency law, deep validation, and the parameter file codec.

#include <string>

#include "doctest.h"
#include "nicbe/codec.hpp"
#include "nicbe/params.hpp"
#include "util.hpp"

using namespace nicbe;
using testutil::code_of;

namespace {

SystemParams small_params(uint32_t n = 4, uint32_t l_s = 2) {
  auto rng = DeterministicRandom::from_u64(1001);
  return globe_setup(128, n, l_s, 4 * n, rng);
}

}  // namespace

TEST_CASE("setup produces the advertised structure") {
  SystemParams p = small_params(5, 2);
  CHECK(p.n == 5);
  CHECK(p.l_s == 2);
  CHECK(p.n_pop == 20);
  CHECK(p.order == group_order_bytes());
  CHECK(p.g == G1Elem::generator());
  CHECK(p.ghat == G2Elem::generator());
  CHECK(!p.u.is_identity());
  REQUIRE(p.h.size() == 5);
  for (const auto& h : p.h) CHECK(!h.is_identity());
  REQUIRE(p.tuples.size() == 2);
  for (uint32_t gamma = 1; gamma <= 2; ++gamma) {
    const PlaceholderTuple& t = p.tuple(gamma);
    CHECK(t.gamma == gamma);
    REQUIRE(t.a.size() == 5);
    REQUIRE(t.b.size() == 5);
    REQUIRE(t.k.size() == 5);
    for (uint32_t i = 1; i <= 5; ++i) {
      CHECK(!t.a[i - 1].is_identity());
      CHECK(!t.b[i - 1].is_identity());
      REQUIRE(t.k[i - 1].size() == 5);
      for (uint32_t j = 1; j <= 5; ++j) {
        if (i == j)
          CHECK(!t.k[i - 1][j - 1].has_value());
        else
          CHECK(t.k[i - 1][j - 1].has_value());
      }
    }
  }
  CHECK(code_of([&] { p.tuple(0); }) == ErrorCode::validation);
  CHECK(code_of([&] { p.tuple(3); }) == ErrorCode::validation);
}

TEST_CASE("every tuple cell satisfies its pairing equation") {
  SystemParams p = small_params(4, 1);
  const PlaceholderTuple& t = p.tuple(1);
  for (uint32_t i = 1; i <= 4; ++i) {
    for (uint32_t j = 1; j <= 4; ++j) {
      if (i == j) continue;
      // e(K[i][j], ghat) == e(h_j, A_i) * e(u, B_i), checked unfused.
      GTElem lhs = pairing(*t.k[i - 1][j - 1], p.ghat);
      GTElem rhs = pairing(p.h[j - 1], t.a[i - 1]) * pairing(p.u, t.b[i - 1]);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("setup rejects out-of-contract arguments") {
  auto rng = DeterministicRandom::from_u64(2);
  CHECK(code_of([&] { globe_setup(256, 4, 1, 16, rng); }) == ErrorCode::validation);
  CHECK(code_of([&] { globe_setup(128, 1, 1, 16, rng); }) == ErrorCode::validation);
  CHECK(code_of([&] { globe_setup(128, 5000, 1, 16000, rng); }) == ErrorCode::validation);
  CHECK(code_of([&] { globe_setup(128, 4, 0, 16, rng); }) == ErrorCode::validation);
  CHECK(code_of([&] { globe_setup(128, 4, 5000, 16, rng); }) == ErrorCode::validation);
  CHECK(code_of([&] { globe_setup(128, 4, 1, 3, rng); }) == ErrorCode::validation);
}

TEST_CASE("deep validation passes honest parameters") {
  SystemParams p = small_params(4, 1);
  ValidationReport rep = validate_params(p);
  CHECK(rep.ok());
}

TEST_CASE("deep validation localizes a perturbed cell") {
  SystemParams p = small_params(4, 1);
  // Multiply one K cell by the generator: exactly that equation must break.
  p.tuples[0].k[1][2] = *p.tuples[0].k[1][2] * G1Elem::generator();
  ValidationReport rep = validate_params(p);
  REQUIRE(!rep.ok());
  REQUIRE(rep.issues.size() == 1);
  CHECK(rep.issues[0].find("tuple 1") != std::string::npos);
  CHECK(rep.issues[0].find("(2,3)") != std::string::npos);
}

TEST_CASE("deep validation names structural violations") {
  SystemParams p = small_params(4, 1);
  p.h.pop_back();
  ValidationReport rep = validate_params(p);
  REQUIRE(!rep.ok());
  bool mentions_length = false;
  for (const auto& i : rep.issues)
    if (i.find("length violation") != std::string::npos) mentions_length = true;
  CHECK(mentions_length);

  SystemParams q = small_params(4, 1);
  q.u = G1Elem::identity();
  CHECK(!validate_params(q).ok());

  SystemParams s = small_params(4, 1);
  s.tuples[0].k[0][1].reset();  // missing off-diagonal cell
  CHECK(!validate_params(s).ok());

  SystemParams d = small_params(4, 1);
  d.tuples[0].k[1][1] = G1Elem::generator();  // diagonal must stay empty
  CHECK(!validate_params(d).ok());
}

TEST_CASE("parameter files round-trip exactly") {
  SystemParams p = small_params(4, 2);
  auto bytes = params_to_bytes(p);
  SystemParams back = params_from_bytes(bytes);
  CHECK(back == p);

  // Same logical value serializes identically (bit-exact determinism).
  CHECK(params_to_bytes(back) == bytes);

  // And a separately generated system with the same seed is byte-identical.
  auto rng1 = DeterministicRandom::from_u64(777);
  auto rng2 = DeterministicRandom::from_u64(777);
  auto a = globe_setup(128, 3, 1, 12, rng1);
  auto b = globe_setup(128, 3, 1, 12, rng2);
  CHECK(params_to_bytes(a) == params_to_bytes(b));
}

TEST_CASE("parameter parsing rejects malformed and inconsistent bytes") {
  SystemParams p = small_params(3, 1);
  auto good = params_to_bytes(p);

  // Bad magic.
  auto bad = good;
  bad[0] = 'X';
  CHECK(code_of([&] { params_from_bytes(bad); }) == ErrorCode::format);

  // Unknown version.
  bad = good;
  bad[4] = 9;
  CHECK(code_of([&] { params_from_bytes(bad); }) == ErrorCode::format);

  // Wrong kind byte (a well-formed envelope of the wrong file type).
  bad = good;
  bad[5] = uint8_t(FileKind::registry);
  CHECK(code_of([&] { params_from_bytes(bad); }) == ErrorCode::format);

  // Truncation at every boundary class: header, mid-element, end.
  for (size_t cut : {size_t(3), size_t(20), good.size() - 1}) {
    std::vector<uint8_t> t(good.begin(), good.begin() + cut);
    CHECK(code_of([&] { params_from_bytes(t); }) == ErrorCode::format);
  }

  // Trailing garbage.
  bad = good;
  bad.push_back(0);
  CHECK(code_of([&] { params_from_bytes(bad); }) == ErrorCode::format);

  // Corrupt a point encoding (inside h_1, after envelope + counts + order +
  // g + ghat + u). Flip a low bit so flags stay plausible.
  bad = good;
  bad[bad.size() / 2] ^= 0x01;
  ErrorCode c = code_of([&] { params_from_bytes(bad); });
  CHECK((c == ErrorCode::format || c == ErrorCode::validation));

  // A declared n outside the legal range.
  bad = good;
  // n is the first u32 after the 6-byte envelope.
  bad[6] = 0xff;
  bad[7] = 0xff;
  bad[8] = 0xff;
  bad[9] = 0xff;
  CHECK(code_of([&] { params_from_bytes(bad); }) == ErrorCode::validation);
}
