#pragma once

// Long-term key registration. The trusted authority issues each user a key
// pair bound to one group slot under one placeholder tuple, and keeps an
// append-only ledger of (user, tuple, public key) records, each attested by
// the authority's signature. The per-user secrets a_i, b_i exist only inside
// key generation; everything downstream needs only SK_i.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nicbe/algebra.hpp"
#include "nicbe/params.hpp"

namespace nicbe {

// Public half for slot i:  A = ghat^{a_i},  B = ghat^{b_i},
// K[j] = h_j^{a_i} * u^{b_i} for every j != i. Publicly checkable:
// e(K[j], ghat) == e(h_j, A) * e(u, B).
struct MemberPublicKey {
  uint32_t slot = 0;  // i in [1, n]
  uint32_t n = 0;     // system max group size the key was issued for
  G2Elem a;
  G2Elem b;
  std::map<uint32_t, G1Elem> k;  // j -> K[j], exactly n-1 entries, none at j == slot

  bool operator==(const MemberPublicKey& o) const = default;
};

// Secret half: SK = h_i^{a_i} * u^{b_i}. Satisfies
// e(SK, ghat) == e(h_i, A) * e(u, B) against the matching public key.
struct MemberSecretKey {
  uint32_t slot = 0;
  G1Elem sk;

  bool operator==(const MemberSecretKey& o) const = default;
};

struct RegistryRecord {
  uint32_t user_index = 0;  // i' in [1, N]
  uint32_t gamma = 0;       // placeholder tuple the slot binding lives under
  MemberPublicKey pk;
  std::array<uint8_t, 64> attestation{};  // authority signature, see sig message below

  bool operator==(const RegistryRecord& o) const = default;
};

// The authority's public ledger: its verification key plus all records.
struct Registry {
  std::array<uint8_t, 32> ta_pub{};
  std::vector<RegistryRecord> records;

  bool operator==(const Registry& o) const = default;
};

// Fresh key pair for (gamma, slot). Pure given the rng: no ledger checks
// happen here (uniqueness is the store's job, registry_add below).
// user_index and gamma do not enter the key math; they exist so callers
// cannot mix up which binding they are generating for.
std::pair<MemberPublicKey, MemberSecretKey> key_regis(const SystemParams& params,
                                                      uint32_t gamma, uint32_t user_index,
                                                      uint32_t slot, RandomSource& rng);

// Batch issuance of all n slots at once (count must equal params.n); the
// caller hands pairs to arriving users first-come-first-served.
std::vector<std::pair<MemberPublicKey, MemberSecretKey>> key_regis_batch(
    const SystemParams& params, uint32_t gamma, uint32_t count, RandomSource& rng);

// True iff the key has the right shape and every K[j] passes its pairing
// consistency equation.
bool verify_public_key(const SystemParams& params, const MemberPublicKey& pk);

// True iff e(SK, ghat) == e(h_i, A) * e(u, B) for the matching public key.
bool verify_secret_key(const SystemParams& params, const MemberPublicKey& pk,
                       const MemberSecretKey& sk);

// The byte string the authority signs: a domain tag, the binding integers,
// and the serialized public key.
std::vector<uint8_t> registry_sig_message(uint32_t user_index, uint32_t gamma,
                                          const MemberPublicKey& pk);

// Appends a record, enforcing: one key per (gamma, slot), one binding per
// user_index, a valid signature under ta_pub. First write wins; later
// conflicting writes fail with ErrorCode::collision.
void registry_add(Registry& reg, const RegistryRecord& rec);

// Lookup helpers; empty optional when absent.
std::optional<RegistryRecord> registry_find_user(const Registry& reg, uint32_t user_index);
std::optional<RegistryRecord> registry_find_slot(const Registry& reg, uint32_t gamma,
                                                 uint32_t slot);

std::vector<uint8_t> public_key_to_bytes(const MemberPublicKey& pk);
MemberPublicKey public_key_from_bytes(std::span<const uint8_t> in);

std::vector<uint8_t> registry_to_bytes(const Registry& reg);
// Re-runs registry_add per record, so a parsed ledger satisfies the same
// uniqueness and signature invariants as a live one.
Registry registry_from_bytes(std::span<const uint8_t> in);

// Secret-key payloads travel passphrase-wrapped; see codec wrap_private.
std::vector<uint8_t> secret_key_payload(const MemberSecretKey& sk);
MemberSecretKey secret_key_from_payload(std::span<const uint8_t> in);

}  // namespace nicbe
