#pragma once

// Broadcast encryption to a chosen subset of group members, and the KEM-DEM
// wrap for actual payloads.
//
// With S the occupied slots, U ⊆ S the recipients, Ubar = S \ U the excluded
// members, and Sbar the unoccupied slots:
//   Yhat1 = Y1 * prod_{i in Ubar} A_i^(gamma)     (exclusion swaps real keys
//   Yhat2 = Y2 * prod_{i in Ubar} B_i^(gamma)      for placeholder keys)
//   C1 = ghat^rho,  C2 = Yhat1^rho,  k = e(u, Yhat2)^rho
// A recipient i folds the exclusion helpers into its decryption key,
//   dhat_i = d_i * prod_{l in Ubar} K_li^(gamma)
// and recovers  k = e(dhat_i, C1) * e(h_i, C2)^-1.
// The header is two group elements regardless of n and |U|; only the
// recipient bitmap metadata grows with n.

#include <cstdint>
#include <vector>

#include "nicbe/algebra.hpp"
#include "nicbe/group.hpp"
#include "nicbe/params.hpp"

namespace nicbe {

struct BroadcastHeader {
  GroupId group_id{};
  uint32_t round = 0;
  uint32_t n = 0;
  std::vector<bool> recipients;  // recipients[i-1] for slot i; the set U
  G2Elem c1;
  G2Elem c2;

  bool operator==(const BroadcastHeader& o) const = default;

  bool is_recipient(uint32_t slot) const;
  std::vector<uint32_t> recipient_slots() const;
};

struct SessionKey {
  GTElem k;

  bool operator==(const SessionKey& o) const = default;
};

struct SealedMessage {
  BroadcastHeader header;
  std::array<uint8_t, 12> nonce{};
  std::vector<uint8_t> ciphertext;  // AEAD output (payload + tag)

  bool operator==(const SealedMessage& o) const = default;
};

// Anyone holding params plus the public group record can run this; no
// member secrets are involved. recipients must be a nonempty subset of the
// occupied slots. The fixed-rho variant exists for determinism tests and
// the test oracle; callers wanting secrecy use the rng form.
std::pair<BroadcastHeader, SessionKey> encrypt(const SystemParams& params,
                                               const GroupInfo& g_info,
                                               const std::vector<uint32_t>& recipients,
                                               RandomSource& rng);
std::pair<BroadcastHeader, SessionKey> encrypt_with_rho(const SystemParams& params,
                                                        const GroupInfo& g_info,
                                                        const std::vector<uint32_t>& recipients,
                                                        const Scalar& rho);

// Recovers the sender's session key. Requires current state on all sides:
// the header, the group record, and the member record must agree on the
// round (stale_round otherwise), and my_slot must be in the recipient set
// (not_recipient otherwise — the "outputs null" case).
SessionKey decrypt(const SystemParams& params, const GroupInfo& g_info,
                   const BroadcastHeader& header, uint32_t my_slot, const MemberInfo& m_info);

// KEM-DEM composition: the session key feeds a KDF (bound to group, round,
// and recipient set) whose output keys an AEAD over the payload, with the
// serialized header as associated data.
SealedMessage seal(const SystemParams& params, const GroupInfo& g_info,
                   const std::vector<uint32_t>& recipients, std::span<const uint8_t> plaintext,
                   RandomSource& rng);
std::vector<uint8_t> open_sealed(const SystemParams& params, const GroupInfo& g_info,
                                 const SealedMessage& sealed, uint32_t my_slot,
                                 const MemberInfo& m_info);

// The DEM key derivation, exposed for the domain-separation tests.
std::array<uint8_t, 32> derive_dem_key(const SessionKey& k, const BroadcastHeader& header);

// SHA-256 over the canonical session-key encoding; what the CLI prints so
// two parties can compare keys without revealing them.
std::array<uint8_t, 32> session_key_digest(const SessionKey& k);

// Serialized header bytes; doubles as the AEAD associated data.
std::vector<uint8_t> header_to_bytes(const BroadcastHeader& h);
BroadcastHeader header_from_bytes(std::span<const uint8_t> in);

std::vector<uint8_t> message_to_bytes(const SealedMessage& m);
SealedMessage message_from_bytes(std::span<const uint8_t> in);

}  // namespace nicbe
