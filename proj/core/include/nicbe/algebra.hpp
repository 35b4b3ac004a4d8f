#pragma once

// Pairing-group abstraction: scalars mod the group order r, the two source
// groups G1/G2, the target group GT, and a bilinear map G1 x G2 -> GT.
// Elements are immutable values in canonical (affine) form, so value
// equality and byte equality coincide. Every operation is pure; the only
// global state is a thread-local operation tally used by the benchmarks.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nicbe/errors.hpp"

namespace nicbe {

namespace detail {
struct Access;
}

class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(uint8_t* out, size_t n) = 0;
};

// OS randomness; fill failures raise ErrorCode::rng_failure.
class SystemRandom final : public RandomSource {
 public:
  void fill(uint8_t* out, size_t n) override;
};

// SHA-256 counter stream over a fixed seed: identical seeds yield identical
// byte sequences on every platform. For tests and --insecure-deterministic.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::span<const uint8_t> seed);
  static DeterministicRandom from_u64(uint64_t seed);
  void fill(uint8_t* out, size_t n) override;

 private:
  std::array<uint8_t, 32> key_{};
  std::array<uint8_t, 32> block_{};
  uint64_t counter_ = 0;
  size_t avail_ = 0;
};

// Integer mod r (the prime order of G1/G2/GT), canonical 32-byte big-endian.
class Scalar {
 public:
  static constexpr size_t kBytes = 32;

  Scalar() = default;  // zero
  static Scalar from_u64(uint64_t v);
  // Rejects encodings >= r with ErrorCode::format.
  static Scalar from_bytes(std::span<const uint8_t> in);

  std::array<uint8_t, kBytes> to_bytes() const { return be_; }
  bool is_zero() const;
  bool operator==(const Scalar& o) const { return be_ == o.be_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Arithmetic mod r (used by property tests; not on any hot path).
  Scalar add(const Scalar& o) const;
  Scalar mul(const Scalar& o) const;
  Scalar negate() const;
  Scalar inverse() const;  // zero maps to zero

 private:
  friend struct detail::Access;
  std::array<uint8_t, kBytes> be_{};
};

// Uniform over [1, r-1]: rejection-sampled, never zero.
Scalar random_scalar(RandomSource& rng);

class G1Elem {
 public:
  static constexpr size_t kBytes = 48;

  G1Elem() = default;  // identity
  static G1Elem generator();
  static G1Elem identity() { return G1Elem(); }

  bool is_identity() const { return inf_; }
  bool operator==(const G1Elem& o) const;
  bool operator!=(const G1Elem& o) const { return !(*this == o); }

  G1Elem operator*(const G1Elem& o) const;  // group operation
  G1Elem pow(const Scalar& e) const;        // constant-time-path exponentiation
  G1Elem inverse() const;

  std::array<uint8_t, kBytes> to_bytes() const;
  // Enforces canonical encoding, curve membership and the prime-order
  // subgroup check; failures raise ErrorCode::format.
  static G1Elem from_bytes(std::span<const uint8_t> in);

 private:
  friend struct detail::Access;
  std::array<uint64_t, 6> x_{}, y_{};
  bool inf_ = true;
};

class G2Elem {
 public:
  static constexpr size_t kBytes = 96;

  G2Elem() = default;
  static G2Elem generator();
  static G2Elem identity() { return G2Elem(); }

  bool is_identity() const { return inf_; }
  bool operator==(const G2Elem& o) const;
  bool operator!=(const G2Elem& o) const { return !(*this == o); }

  G2Elem operator*(const G2Elem& o) const;
  G2Elem pow(const Scalar& e) const;
  G2Elem inverse() const;

  std::array<uint8_t, kBytes> to_bytes() const;
  static G2Elem from_bytes(std::span<const uint8_t> in);

 private:
  friend struct detail::Access;
  std::array<uint64_t, 12> x_{}, y_{};
  bool inf_ = true;
};

class GTElem {
 public:
  static constexpr size_t kBytes = 576;

  GTElem();  // identity
  static GTElem identity() { return GTElem(); }

  bool is_identity() const;
  bool operator==(const GTElem& o) const { return v_ == o.v_; }
  bool operator!=(const GTElem& o) const { return !(*this == o); }

  GTElem operator*(const GTElem& o) const;
  GTElem pow(const Scalar& e) const;
  GTElem inverse() const;

  // Serialize-only: GT values are derived, never transported.
  std::array<uint8_t, kBytes> to_bytes() const;

 private:
  friend struct detail::Access;
  std::array<uint64_t, 72> v_{};
};

// The bilinear map. pairing_product fuses several evaluations into one
// shared final exponentiation; its tally cost is one pairing per leg.
GTElem pairing(const G1Elem& a, const G2Elem& b);
GTElem pairing_product(std::span<const std::pair<G1Elem, G2Elem>> legs);

// Signed product: signs[i] of -1 multiplies by the inverse of elems[i].
// Empty input yields the identity; length mismatch or a sign outside
// {+1,-1} raises ErrorCode::validation.
G1Elem g1_multi_combine(std::span<const G1Elem> elems, std::span<const int> signs);
G2Elem g2_multi_combine(std::span<const G2Elem> elems, std::span<const int> signs);
G1Elem g1_product(std::span<const G1Elem> elems);
G2Elem g2_product(std::span<const G2Elem> elems);

// Spec-facing counters: exponentiations/multiplications are tallied across
// both source groups (the complexity model treats them as one group).
struct OpCounters {
  uint64_t pairings = 0;
  uint64_t g1_exponentiations = 0;
  uint64_t g1_multiplications = 0;
};

struct OpTallyDetail {
  uint64_t g1_mul = 0, g2_mul = 0;
  uint64_t g1_exp = 0, g2_exp = 0;
  uint64_t gt_mul = 0, gt_exp = 0;
  uint64_t inversions = 0;  // group-element inverses across G1/G2/GT
  uint64_t pairings = 0;    // Miller loops
};

void op_tally_reset();
OpCounters op_tally_counters();
OpTallyDetail op_tally_detail();

// Canonical 32-byte big-endian encoding of the group order r.
std::array<uint8_t, 32> group_order_bytes();

}  // namespace nicbe
