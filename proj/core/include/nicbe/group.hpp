#pragma once

// Group state: non-interactive derivation of the shared encryption key and
// per-member decryption keys, plus incremental join/leave transitions.
//
// Derivation (occupied set S read from the occupancy string, placeholder
// tuple gamma filling every unoccupied slot):
//   Y1 = prod_{j in S} A_j * prod_{j not in S} A_j^(gamma)
//   Y2 = the same with B values
//   dk[i] = prod_{j in S, j != i} K_ji * prod_{j not in S, j != i} K_ji^(gamma)
//   d    = dk[my_slot] * SK
// accepted only if  e(d, ghat) == e(h_i, Y1) * e(u, Y2).
//
// Join of slot I multiplies Y1 by A_I * (A_I^(gamma))^-1 (likewise Y2), and
// every stored dk[l], l != I, by K_Il * (K_Il^(gamma))^-1; leave applies the
// inverse factors. Each transition bumps the session round by one and is
// recorded in a journal so offline members can replay it later.

#include <cstdint>
#include <map>
#include <vector>

#include "nicbe/algebra.hpp"
#include "nicbe/params.hpp"
#include "nicbe/registry.hpp"

namespace nicbe {

inline constexpr size_t kGroupIdBytes = 16;
using GroupId = std::array<uint8_t, kGroupIdBytes>;

struct GroupEncryptionKey {
  G2Elem y1;
  G2Elem y2;

  bool operator==(const GroupEncryptionKey& o) const = default;
};

// One membership transition, embedding the affected public key so that a
// member who was offline can replay the update without a registry lookup
// (the departed key may even have left the registry's working set).
struct UpdateRecord {
  enum class Kind : uint8_t { join = 1, leave = 2 };
  Kind kind = Kind::join;
  uint32_t round_after = 0;  // the round the group entered by this update
  uint32_t slot = 0;
  uint32_t user_index = 0;
  MemberPublicKey pk;

  bool operator==(const UpdateRecord& o) const = default;
};

// Public group record: anyone holding it (plus params) can encrypt.
struct GroupInfo {
  uint32_t pi = 0;  // group index; creation binds it to the consumed tuple
  GroupId id{};
  uint32_t round = 1;  // session round, +1 per join/leave
  uint32_t gamma = 0;  // placeholder tuple backing unoccupied slots
  uint32_t n = 0;
  std::vector<bool> st;  // occupancy, st[i-1] for slot i
  GroupEncryptionKey omega;
  std::map<uint32_t, uint32_t> delta;  // occupied slot -> user_index
  std::vector<UpdateRecord> journal;   // all transitions since round 1

  bool operator==(const GroupInfo& o) const = default;

  bool occupied(uint32_t slot) const;
  uint32_t member_count() const;
  std::vector<uint32_t> occupied_slots() const;
};

// A member's private per-group state: the full helper array (the update
// rules mutate every entry, so all n are kept) and the decryption key.
struct MemberInfo {
  uint32_t slot = 0;
  uint32_t round = 0;  // the group round this state is current for
  GroupId group_id{};
  uint32_t n = 0;
  uint32_t gamma = 0;  // the group's placeholder tuple, needed for replay
  std::vector<G1Elem> dk_hat;  // n entries, dk_hat[i-1] for slot i
  G1Elem d;

  bool operator==(const MemberInfo& o) const = default;
};

// Membership input to derivation: who sits in a slot and their public key.
struct SlotAssignment {
  uint32_t user_index = 0;
  MemberPublicKey pk;

  bool operator==(const SlotAssignment& o) const = default;
};

// Fresh non-interactive derivation over an arbitrary occupied-slot subset.
// Every member running this with the same inputs obtains the identical
// GroupInfo (byte-for-byte) — that is the protocol's central claim, and the
// agreement property tests assert it. Preconditions: my_slot is occupied and
// my_sk matches it; every supplied public key has already passed
// verify_public_key (enforced by the CLI at load time, asserted in tests).
// Throws ErrorCode::consistency if the derived d fails its acceptance check.
std::pair<GroupInfo, MemberInfo> key_derive(const SystemParams& params, const GroupId& group_id,
                                            uint32_t pi, uint32_t gamma,
                                            const std::map<uint32_t, SlotAssignment>& members,
                                            uint32_t my_slot, const MemberSecretKey& my_sk);

// key_derive minus the final acceptance check: the derivation algebra is
// Θ(n²) multiplications while the check is a fixed three-pairing cost, and
// the benchmark times the two separately. Callers must follow up with
// verify_decryption_key before trusting the result.
std::pair<GroupInfo, MemberInfo> key_derive_unverified(
    const SystemParams& params, const GroupId& group_id, uint32_t pi, uint32_t gamma,
    const std::map<uint32_t, SlotAssignment>& members, uint32_t my_slot,
    const MemberSecretKey& my_sk);

// The member-state half of key_derive against an existing group record:
// recomputes omega from the supplied membership, requires it to equal
// g_info.omega (agreement check), then derives and verifies this member's
// state at g_info.round. Used by joiners and by members re-deriving from
// scratch mid-lifecycle.
MemberInfo derive_member_info(const SystemParams& params, const GroupInfo& g_info,
                              const std::map<uint32_t, SlotAssignment>& members,
                              uint32_t my_slot, const MemberSecretKey& my_sk);

// Group-side join transition: occupancy, omega, delta, round, journal.
// Member-side helper arrays are updated separately via refresh_member.
// Throws slot_occupied / group_full per the abort conditions.
std::pair<GroupInfo, UpdateRecord> join(const SystemParams& params, const GroupInfo& g_info,
                                        const MemberPublicKey& new_pk, uint32_t new_user);

// Group-side leave transition; needs the departing member's public key (a
// public value, also embedded in the resulting journal record).
// Throws slot_empty if the slot has no member.
std::pair<GroupInfo, UpdateRecord> leave(const SystemParams& params, const GroupInfo& g_info,
                                         const MemberPublicKey& leaving_pk);

// Applies one journal record to a member's helper array and decryption key.
// Pure state step: no consistency check here (the matching omega for
// intermediate rounds is not stored); refresh_member checks at the end.
MemberInfo apply_update_to_member(const SystemParams& params, const UpdateRecord& rec,
                                  const MemberInfo& m_info);

// Replays every journal record later than m_info.round, then verifies the
// final decryption key against g_info.omega. Throws stale_round if the
// member state is ahead of the group (impossible without file tampering)
// and ErrorCode::consistency if the final check fails.
MemberInfo refresh_member(const SystemParams& params, const GroupInfo& g_info,
                          const MemberInfo& m_info);

// The paper's acceptance test: e(d, ghat) == e(h_slot, Y1) * e(u, Y2).
bool verify_decryption_key(const SystemParams& params, const GroupInfo& g_info, uint32_t slot,
                           const G1Elem& d);

std::vector<uint8_t> group_to_bytes(const GroupInfo& g);
GroupInfo group_from_bytes(std::span<const uint8_t> in);

// Member payloads travel passphrase-wrapped; see codec wrap_private.
std::vector<uint8_t> member_payload(const MemberInfo& m);
MemberInfo member_from_payload(std::span<const uint8_t> in);

}  // namespace nicbe
