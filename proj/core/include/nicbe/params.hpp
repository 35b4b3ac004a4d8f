#pragma once

// System setup: the public parameter list shared by every party. A trusted
// authority generates the generators, the per-slot bases h_1..h_n, and L_s
// placeholder tuples — pre-published key material standing in for every
// unoccupied group slot so that group products always range over a fixed
// size n. The tuple exponents are used once, inside setup, and discarded.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nicbe/algebra.hpp"

namespace nicbe {

// One placeholder tuple, index gamma in [1, L_s]. For slots i, j in [1, n],
// i != j:  A[i] = ghat^{alpha_i},  B[i] = ghat^{beta_i},
//          K[i][j] = h_j^{alpha_i} * u^{beta_i}.
// The diagonal K[i][i] is undefined and stays empty. Publicly checkable via
// e(K[i][j], ghat) == e(h_j, A[i]) * e(u, B[i]).
struct PlaceholderTuple {
  uint32_t gamma = 0;
  std::vector<G2Elem> a;                             // n entries, 0-based slot i-1
  std::vector<G2Elem> b;                             // n entries
  std::vector<std::vector<std::optional<G1Elem>>> k;  // n x n, diagonal empty

  bool operator==(const PlaceholderTuple& o) const = default;
};

struct SystemParams {
  uint32_t n = 0;      // max group size
  uint32_t l_s = 0;    // placeholder tuple count
  uint32_t n_pop = 0;  // advisory user-population bound
  std::array<uint8_t, 32> order{};  // prime group order q, big-endian

  G1Elem g;     // generator of the pairing-left group
  G2Elem ghat;  // generator of the exponent-carrier group
  G1Elem u;     // random base, pairing-left group
  std::vector<G1Elem> h;  // h_1..h_n, pairing-left group, never identity

  std::vector<PlaceholderTuple> tuples;  // L_s tuples, gamma = 1..L_s

  bool operator==(const SystemParams& o) const = default;

  const PlaceholderTuple& tuple(uint32_t gamma) const;  // 1-based, validated
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

// One-shot trusted setup. security_bits must be 128 (the only level the
// backend curve provides); n >= 2, l_s >= 1, n_pop >= n. All placeholder
// exponents are stack-local and never stored: no API exposes them, and
// nothing downstream needs them.
SystemParams globe_setup(uint32_t security_bits, uint32_t n, uint32_t l_s,
                         uint32_t n_pop, RandomSource& rng);

// Deep check of deserialized parameters: structure (lengths, diagonal,
// identity bans) plus every pairing-consistency equation. Failures become
// report entries naming the offending location, e.g. "tuple 2 cell (1,3)".
ValidationReport validate_params(const SystemParams& p);

std::vector<uint8_t> params_to_bytes(const SystemParams& p);
// Enforces structural well-formedness and element validity (curve/subgroup
// checks happen inside element parsing); pairing checks are validate_params.
SystemParams params_from_bytes(std::span<const uint8_t> in);

}  // namespace nicbe
