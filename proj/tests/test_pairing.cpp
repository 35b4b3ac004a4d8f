// The bilinear map: bilinearity, non-degeneracy, identity handling, the
// fused product form, and target-group arithmetic.

#include <utility>
#include <vector>

#include "doctest.h"
#include "nicbe/algebra.hpp"
#include "util.hpp"

using namespace nicbe;

namespace {
DeterministicRandom test_rng() { return DeterministicRandom::from_u64(0xbead); }
}  // namespace

TEST_CASE("non-degeneracy and order") {
  GTElem e = pairing(G1Elem::generator(), G2Elem::generator());
  CHECK(!e.is_identity());

  // e has order dividing r: e^(r-1) * e == 1.
  auto r = group_order_bytes();
  auto rm1 = r;
  rm1[31] = 0x00;
  CHECK((e.pow(Scalar::from_bytes(rm1)) * e).is_identity());
}

TEST_CASE("bilinearity over 100 random exponent pairs") {
  auto rng = test_rng();
  const G1Elem g = G1Elem::generator();
  const G2Elem gh = G2Elem::generator();
  const GTElem base = pairing(g, gh);
  for (int i = 0; i < 100; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    CHECK(pairing(g.pow(a), gh.pow(b)) == base.pow(a.mul(b)));
  }
}

TEST_CASE("exponents move freely between the two arguments") {
  auto rng = test_rng();
  const G1Elem g = G1Elem::generator();
  const G2Elem gh = G2Elem::generator();
  for (int i = 0; i < 10; ++i) {
    Scalar a = random_scalar(rng);
    CHECK(pairing(g.pow(a), gh) == pairing(g, gh.pow(a)));
    CHECK(pairing(g.pow(a).inverse(), gh) == pairing(g.pow(a), gh).inverse());
  }
}

TEST_CASE("identity in either argument yields the identity") {
  auto rng = test_rng();
  G1Elem P = G1Elem::generator().pow(random_scalar(rng));
  G2Elem Q = G2Elem::generator().pow(random_scalar(rng));
  CHECK(pairing(G1Elem::identity(), Q).is_identity());
  CHECK(pairing(P, G2Elem::identity()).is_identity());
  CHECK(pairing(G1Elem::identity(), G2Elem::identity()).is_identity());
}

TEST_CASE("pairing_product equals the product of individual pairings") {
  auto rng = test_rng();
  std::vector<std::pair<G1Elem, G2Elem>> legs;
  GTElem expect;
  for (int i = 0; i < 4; ++i) {
    G1Elem P = G1Elem::generator().pow(random_scalar(rng));
    G2Elem Q = G2Elem::generator().pow(random_scalar(rng));
    legs.emplace_back(P, Q);
    expect = expect * pairing(P, Q);
  }
  CHECK(pairing_product(legs) == expect);

  // Empty product is the identity; identity legs contribute nothing.
  CHECK(pairing_product({}).is_identity());
  legs.emplace_back(G1Elem::identity(), G2Elem::generator());
  CHECK(pairing_product(legs) == expect);
}

TEST_CASE("the cancellation shape used by acceptance checks") {
  // e(x, ghat) * e(x^-1, ghat) == 1 as a fused product.
  auto rng = test_rng();
  G1Elem x = G1Elem::generator().pow(random_scalar(rng));
  std::vector<std::pair<G1Elem, G2Elem>> legs = {
      {x, G2Elem::generator()},
      {x.inverse(), G2Elem::generator()},
  };
  CHECK(pairing_product(legs).is_identity());
}

TEST_CASE("target-group arithmetic") {
  auto rng = test_rng();
  GTElem k = pairing(G1Elem::generator(), G2Elem::generator());
  Scalar a = random_scalar(rng), b = random_scalar(rng);

  CHECK(GTElem().is_identity());
  CHECK(GTElem::identity() == GTElem());
  CHECK(k * GTElem() == k);
  CHECK((k * k.inverse()).is_identity());
  CHECK(k.pow(a).pow(b) == k.pow(a.mul(b)));
  CHECK(k.pow(a) * k.pow(b) == k.pow(a.add(b)));
  CHECK(k.pow(Scalar()).is_identity());
  CHECK(k.pow(Scalar::from_u64(1)) == k);

  // Serialization is total and size-stable.
  auto bytes = k.to_bytes();
  CHECK(bytes.size() == GTElem::kBytes);
  CHECK(bytes != GTElem().to_bytes());
}

TEST_CASE("operation tally counts pairings per leg") {
  auto rng = test_rng();
  G1Elem P = G1Elem::generator().pow(random_scalar(rng));
  G2Elem Q = G2Elem::generator().pow(random_scalar(rng));

  op_tally_reset();
  pairing(P, Q);
  CHECK(op_tally_counters().pairings == 1);

  op_tally_reset();
  std::vector<std::pair<G1Elem, G2Elem>> legs = {{P, Q}, {P, Q}, {P, Q}};
  pairing_product(legs);
  CHECK(op_tally_counters().pairings == 3);
}
