#include "nicbe/group.hpp"

#include <algorithm>

#include "nicbe/codec.hpp"

namespace nicbe {

namespace {

constexpr uint32_t kMaxGroupSize = 4096;

void check_group_slot(const GroupInfo& g, uint32_t slot) {
  if (slot < 1 || slot > g.n)
    throw Error(ErrorCode::validation, "slot " + std::to_string(slot) + " out of range [1, " +
                                           std::to_string(g.n) + "]");
}

// Structural sanity for a public key entering group algebra. The pairing
// checks of verify_public_key are a documented caller precondition (they
// cost n-1 pairing products); shape violations are caught here always.
void check_pk_shape(const SystemParams& params, const MemberPublicKey& pk) {
  if (pk.n != params.n)
    throw Error(ErrorCode::validation, "public key was issued for a different group size");
  if (pk.slot < 1 || pk.slot > params.n)
    throw Error(ErrorCode::validation, "public key slot out of range");
  if (pk.k.size() != params.n - 1 || pk.k.count(pk.slot))
    throw Error(ErrorCode::validation, "public key helper entries malformed");
  for (const auto& [j, kj] : pk.k) {
    (void)kj;
    if (j < 1 || j > params.n)
      throw Error(ErrorCode::validation, "public key helper entries malformed");
  }
}

GroupEncryptionKey compute_omega(const SystemParams& params, uint32_t gamma,
                                 const std::vector<bool>& st,
                                 const std::map<uint32_t, SlotAssignment>& members) {
  const PlaceholderTuple& t = params.tuple(gamma);
  std::vector<G2Elem> a_terms, b_terms;
  a_terms.reserve(params.n);
  b_terms.reserve(params.n);
  for (uint32_t j = 1; j <= params.n; ++j) {
    if (st[j - 1]) {
      const MemberPublicKey& pk = members.at(j).pk;
      a_terms.push_back(pk.a);
      b_terms.push_back(pk.b);
    } else {
      a_terms.push_back(t.a[j - 1]);
      b_terms.push_back(t.b[j - 1]);
    }
  }
  GroupEncryptionKey omega;
  omega.y1 = g2_product(a_terms);
  omega.y2 = g2_product(b_terms);
  return omega;
}

// dk[i] = prod over j != i of (member j's K_ji if occupied, else the
// placeholder K_ji^(gamma)) — computed for every i in [1, n], since the
// member record keeps the full helper array.
std::vector<G1Elem> compute_dk_all(const SystemParams& params, uint32_t gamma,
                                   const std::vector<bool>& st,
                                   const std::map<uint32_t, SlotAssignment>& members) {
  const PlaceholderTuple& t = params.tuple(gamma);
  std::vector<G1Elem> dk;
  dk.reserve(params.n);
  std::vector<G1Elem> terms;
  for (uint32_t i = 1; i <= params.n; ++i) {
    terms.clear();
    terms.reserve(params.n - 1);
    for (uint32_t j = 1; j <= params.n; ++j) {
      if (j == i) continue;
      if (st[j - 1])
        terms.push_back(members.at(j).pk.k.at(i));
      else
        terms.push_back(*t.k[j - 1][i - 1]);
    }
    dk.push_back(g1_product(terms));
  }
  return dk;
}

void check_consistency_or_abort(const SystemParams& params, const GroupInfo& g, uint32_t slot,
                                const G1Elem& d) {
  if (!verify_decryption_key(params, g, slot, d))
    throw Error(ErrorCode::consistency,
                "decryption key for slot " + std::to_string(slot) +
                    " failed the acceptance check; aborting");
}

void st_from_members(GroupInfo& g, const std::map<uint32_t, SlotAssignment>& members) {
  g.st.assign(g.n, false);
  for (const auto& [slot, sa] : members) {
    if (slot < 1 || slot > g.n)
      throw Error(ErrorCode::validation, "member slot out of range");
    if (sa.pk.slot != slot)
      throw Error(ErrorCode::validation, "member map slot disagrees with the key's slot");
    if (sa.user_index < 1)
      throw Error(ErrorCode::validation, "user index must be at least 1");
    g.st[slot - 1] = true;
    g.delta[slot] = sa.user_index;
  }
  // delta: one slot per user
  std::vector<uint32_t> users;
  users.reserve(g.delta.size());
  for (const auto& [slot, user] : g.delta) {
    (void)slot;
    users.push_back(user);
  }
  std::sort(users.begin(), users.end());
  if (std::adjacent_find(users.begin(), users.end()) != users.end())
    throw Error(ErrorCode::validation, "a user index appears in two slots");
}

}  // namespace

bool GroupInfo::occupied(uint32_t slot) const {
  return slot >= 1 && slot <= n && st[slot - 1];
}

uint32_t GroupInfo::member_count() const {
  return uint32_t(std::count(st.begin(), st.end(), true));
}

std::vector<uint32_t> GroupInfo::occupied_slots() const {
  std::vector<uint32_t> out;
  for (uint32_t i = 1; i <= n; ++i)
    if (st[i - 1]) out.push_back(i);
  return out;
}

namespace {
MemberInfo derive_member_impl(const SystemParams& params, const GroupInfo& g_info,
                              const std::map<uint32_t, SlotAssignment>& members,
                              uint32_t my_slot, const MemberSecretKey& my_sk, bool accept_check);
}  // namespace

std::pair<GroupInfo, MemberInfo> key_derive_unverified(
    const SystemParams& params, const GroupId& group_id, uint32_t pi, uint32_t gamma,
    const std::map<uint32_t, SlotAssignment>& members, uint32_t my_slot,
    const MemberSecretKey& my_sk) {
  if (members.empty()) throw Error(ErrorCode::validation, "cannot derive an empty group");
  for (const auto& [slot, sa] : members) {
    (void)slot;
    check_pk_shape(params, sa.pk);
  }
  GroupInfo g;
  g.pi = pi;
  g.id = group_id;
  g.round = 1;
  g.gamma = gamma;
  g.n = params.n;
  params.tuple(gamma);  // range check
  st_from_members(g, members);
  g.omega = compute_omega(params, gamma, g.st, members);

  MemberInfo m = derive_member_impl(params, g, members, my_slot, my_sk, false);
  return {std::move(g), std::move(m)};
}

std::pair<GroupInfo, MemberInfo> key_derive(const SystemParams& params, const GroupId& group_id,
                                            uint32_t pi, uint32_t gamma,
                                            const std::map<uint32_t, SlotAssignment>& members,
                                            uint32_t my_slot, const MemberSecretKey& my_sk) {
  auto out = key_derive_unverified(params, group_id, pi, gamma, members, my_slot, my_sk);
  check_consistency_or_abort(params, out.first, my_slot, out.second.d);
  return out;
}

MemberInfo derive_member_info(const SystemParams& params, const GroupInfo& g_info,
                              const std::map<uint32_t, SlotAssignment>& members,
                              uint32_t my_slot, const MemberSecretKey& my_sk) {
  return derive_member_impl(params, g_info, members, my_slot, my_sk, true);
}

namespace {
MemberInfo derive_member_impl(const SystemParams& params, const GroupInfo& g_info,
                              const std::map<uint32_t, SlotAssignment>& members,
                              uint32_t my_slot, const MemberSecretKey& my_sk,
                              bool accept_check) {
  if (params.n != g_info.n)
    throw Error(ErrorCode::validation, "group record does not match these parameters");
  if (!g_info.occupied(my_slot))
    throw Error(ErrorCode::slot_empty,
                "slot " + std::to_string(my_slot) + " is not occupied in this group");
  if (my_sk.slot != my_slot)
    throw Error(ErrorCode::validation, "secret key belongs to a different slot");
  for (uint32_t j = 1; j <= g_info.n; ++j) {
    bool have = members.count(j) != 0;
    if (have != g_info.occupied(j))
      throw Error(ErrorCode::validation,
                  "membership input disagrees with the group occupancy string");
  }
  for (const auto& [slot, sa] : members) {
    (void)slot;
    check_pk_shape(params, sa.pk);
  }

  // Independent recomputation of omega: all derivers must agree.
  GroupEncryptionKey omega = compute_omega(params, g_info.gamma, g_info.st, members);
  if (!(omega == g_info.omega))
    throw Error(ErrorCode::consistency,
                "derived group encryption key disagrees with the published record");

  MemberInfo m;
  m.slot = my_slot;
  m.round = g_info.round;
  m.group_id = g_info.id;
  m.n = g_info.n;
  m.gamma = g_info.gamma;
  m.dk_hat = compute_dk_all(params, g_info.gamma, g_info.st, members);
  m.d = m.dk_hat[my_slot - 1] * my_sk.sk;
  if (accept_check) check_consistency_or_abort(params, g_info, my_slot, m.d);
  return m;
}
}  // namespace

std::pair<GroupInfo, UpdateRecord> join(const SystemParams& params, const GroupInfo& g_info,
                                        const MemberPublicKey& new_pk, uint32_t new_user) {
  if (params.n != g_info.n)
    throw Error(ErrorCode::validation, "group record does not match these parameters");
  check_pk_shape(params, new_pk);
  uint32_t slot = new_pk.slot;
  // The abort condition ([st]_I = 1) or (t+1 > n): report a full group as
  // such, an occupied slot in a non-full group as the slot conflict.
  if (g_info.member_count() + 1 > g_info.n)
    throw Error(ErrorCode::group_full, "group already holds all " + std::to_string(g_info.n) +
                                           " members");
  if (g_info.occupied(slot))
    throw Error(ErrorCode::slot_occupied,
                "slot " + std::to_string(slot) + " is already occupied");
  if (new_user < 1) throw Error(ErrorCode::validation, "user index must be at least 1");
  for (const auto& [s, user] : g_info.delta) {
    (void)s;
    if (user == new_user)
      throw Error(ErrorCode::validation,
                  "user " + std::to_string(new_user) + " is already a member");
  }

  const PlaceholderTuple& t = params.tuple(g_info.gamma);
  GroupInfo g = g_info;
  // Y1' = Y1 * A_I * (A_I^(gamma))^-1, same for Y2 with B values.
  {
    std::array<G2Elem, 3> elems{g.omega.y1, new_pk.a, t.a[slot - 1]};
    std::array<int, 3> signs{1, 1, -1};
    g.omega.y1 = g2_multi_combine(elems, signs);
  }
  {
    std::array<G2Elem, 3> elems{g.omega.y2, new_pk.b, t.b[slot - 1]};
    std::array<int, 3> signs{1, 1, -1};
    g.omega.y2 = g2_multi_combine(elems, signs);
  }
  g.st[slot - 1] = true;
  g.delta[slot] = new_user;
  g.round += 1;

  UpdateRecord rec;
  rec.kind = UpdateRecord::Kind::join;
  rec.round_after = g.round;
  rec.slot = slot;
  rec.user_index = new_user;
  rec.pk = new_pk;
  g.journal.push_back(rec);
  return {std::move(g), std::move(rec)};
}

std::pair<GroupInfo, UpdateRecord> leave(const SystemParams& params, const GroupInfo& g_info,
                                         const MemberPublicKey& leaving_pk) {
  if (params.n != g_info.n)
    throw Error(ErrorCode::validation, "group record does not match these parameters");
  check_pk_shape(params, leaving_pk);
  uint32_t slot = leaving_pk.slot;
  check_group_slot(g_info, slot);
  if (!g_info.occupied(slot))
    throw Error(ErrorCode::slot_empty, "slot " + std::to_string(slot) + " has no member");

  const PlaceholderTuple& t = params.tuple(g_info.gamma);
  GroupInfo g = g_info;
  // Y1' = Y1 * A_J^-1 * A_J^(gamma), same for Y2.
  {
    std::array<G2Elem, 3> elems{g.omega.y1, leaving_pk.a, t.a[slot - 1]};
    std::array<int, 3> signs{1, -1, 1};
    g.omega.y1 = g2_multi_combine(elems, signs);
  }
  {
    std::array<G2Elem, 3> elems{g.omega.y2, leaving_pk.b, t.b[slot - 1]};
    std::array<int, 3> signs{1, -1, 1};
    g.omega.y2 = g2_multi_combine(elems, signs);
  }
  uint32_t user = g.delta.at(slot);
  g.st[slot - 1] = false;
  g.delta.erase(slot);
  g.round += 1;

  UpdateRecord rec;
  rec.kind = UpdateRecord::Kind::leave;
  rec.round_after = g.round;
  rec.slot = slot;
  rec.user_index = user;
  rec.pk = leaving_pk;
  g.journal.push_back(rec);
  return {std::move(g), std::move(rec)};
}

MemberInfo apply_update_to_member(const SystemParams& params, const UpdateRecord& rec,
                                  const MemberInfo& m_info) {
  if (params.n != m_info.n)
    throw Error(ErrorCode::validation, "member record does not match these parameters");
  check_pk_shape(params, rec.pk);
  if (rec.slot == m_info.slot)
    throw Error(ErrorCode::validation,
                "a member does not replay its own join/leave through the journal");
  if (rec.round_after != m_info.round + 1)
    throw Error(ErrorCode::stale_round,
                "journal replay out of order: member at round " + std::to_string(m_info.round) +
                    ", record enters round " + std::to_string(rec.round_after));
  if (m_info.dk_hat.size() != m_info.n)
    throw Error(ErrorCode::validation, "member record: helper array must hold n entries");

  const PlaceholderTuple& t = params.tuple(m_info.gamma);
  uint32_t s = rec.slot;
  MemberInfo m = m_info;
  if (rec.kind == UpdateRecord::Kind::join) {
    // dk[l] *= K_Il * (K_Il^(gamma))^-1 for every l != I; dk[I] is untouched
    // (slot I's own helper never depended on slot I's key material).
    for (uint32_t l = 1; l <= m.n; ++l) {
      if (l == s) continue;
      std::array<G1Elem, 3> elems{m.dk_hat[l - 1], rec.pk.k.at(l), *t.k[s - 1][l - 1]};
      std::array<int, 3> signs{1, 1, -1};
      m.dk_hat[l - 1] = g1_multi_combine(elems, signs);
    }
    std::array<G1Elem, 3> elems{m.d, rec.pk.k.at(m.slot), *t.k[s - 1][m.slot - 1]};
    std::array<int, 3> signs{1, 1, -1};
    m.d = g1_multi_combine(elems, signs);
  } else {
    // Leave applies the inverse factors: dk[l] *= (K_Jl)^-1 * K_Jl^(gamma).
    for (uint32_t l = 1; l <= m.n; ++l) {
      if (l == s) continue;
      std::array<G1Elem, 3> elems{m.dk_hat[l - 1], rec.pk.k.at(l), *t.k[s - 1][l - 1]};
      std::array<int, 3> signs{1, -1, 1};
      m.dk_hat[l - 1] = g1_multi_combine(elems, signs);
    }
    std::array<G1Elem, 3> elems{m.d, rec.pk.k.at(m.slot), *t.k[s - 1][m.slot - 1]};
    std::array<int, 3> signs{1, -1, 1};
    m.d = g1_multi_combine(elems, signs);
  }
  m.round = rec.round_after;
  return m;
}

MemberInfo refresh_member(const SystemParams& params, const GroupInfo& g_info,
                          const MemberInfo& m_info) {
  if (m_info.group_id != g_info.id)
    throw Error(ErrorCode::validation, "member record belongs to a different group");
  if (m_info.gamma != g_info.gamma || m_info.n != g_info.n)
    throw Error(ErrorCode::validation, "member record disagrees with the group record");
  if (m_info.round > g_info.round)
    throw Error(ErrorCode::stale_round, "member state is ahead of the group record");

  MemberInfo m = m_info;
  for (const auto& rec : g_info.journal) {
    if (rec.round_after <= m.round) continue;
    m = apply_update_to_member(params, rec, m);
  }
  if (m.round != g_info.round)
    throw Error(ErrorCode::validation, "group journal has a gap; cannot reach the current round");
  check_consistency_or_abort(params, g_info, m.slot, m.d);
  return m;
}

bool verify_decryption_key(const SystemParams& params, const GroupInfo& g_info, uint32_t slot,
                           const G1Elem& d) {
  if (slot < 1 || slot > params.n || params.n != g_info.n) return false;
  // e(d, ghat)^-1 * e(h_slot, Y1) * e(u, Y2) == 1
  std::array<std::pair<G1Elem, G2Elem>, 3> legs{{
      {d.inverse(), params.ghat},
      {params.h[slot - 1], g_info.omega.y1},
      {params.u, g_info.omega.y2},
  }};
  return pairing_product(legs).is_identity();
}

std::vector<uint8_t> group_to_bytes(const GroupInfo& g) {
  ByteWriter w;
  w.envelope(FileKind::group);
  w.u32(g.pi);
  w.bytes(g.id);
  w.u32(g.round);
  w.u32(g.gamma);
  w.u32(g.n);
  write_bits(w, g.st);
  w.bytes(g.omega.y1.to_bytes());
  w.bytes(g.omega.y2.to_bytes());
  w.u32(uint32_t(g.delta.size()));
  for (const auto& [slot, user] : g.delta) {
    w.u32(slot);
    w.u32(user);
  }
  w.u32(uint32_t(g.journal.size()));
  for (const auto& rec : g.journal) {
    w.u8(uint8_t(rec.kind));
    w.u32(rec.round_after);
    w.u32(rec.slot);
    w.u32(rec.user_index);
    auto pk_bytes = public_key_to_bytes(rec.pk);
    w.var_bytes(pk_bytes);
  }
  return w.take();
}

GroupInfo group_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::group);
  GroupInfo g;
  g.pi = r.u32();
  auto id = r.bytes(g.id.size());
  std::copy(id.begin(), id.end(), g.id.begin());
  g.round = r.u32();
  g.gamma = r.u32();
  g.n = r.u32();
  if (g.n < 2 || g.n > kMaxGroupSize)
    throw Error(ErrorCode::validation, "group: size out of range");
  if (g.round < 1) throw Error(ErrorCode::validation, "group: round must be at least 1");
  g.st = read_bits(r, g.n);
  g.omega.y1 = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  g.omega.y2 = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  uint32_t dn = r.u32();
  if (dn > g.n) throw Error(ErrorCode::validation, "group: membership map larger than n");
  uint32_t prev_slot = 0;
  for (uint32_t c = 0; c < dn; ++c) {
    uint32_t slot = r.u32();
    uint32_t user = r.u32();
    if (slot < 1 || slot > g.n || slot <= prev_slot)
      throw Error(ErrorCode::format, "group: membership map not in canonical slot order");
    prev_slot = slot;
    if (user < 1) throw Error(ErrorCode::validation, "group: user index must be at least 1");
    g.delta[slot] = user;
  }
  for (uint32_t i = 1; i <= g.n; ++i)
    if (g.st[i - 1] != (g.delta.count(i) != 0))
      throw Error(ErrorCode::validation,
                  "group: occupancy string and membership map disagree at slot " +
                      std::to_string(i));
  uint32_t jn = r.u32();
  if (g.round != 1 + jn)
    throw Error(ErrorCode::validation, "group: journal length disagrees with the round");
  for (uint32_t c = 0; c < jn; ++c) {
    UpdateRecord rec;
    uint8_t kind = r.u8();
    if (kind != uint8_t(UpdateRecord::Kind::join) && kind != uint8_t(UpdateRecord::Kind::leave))
      throw Error(ErrorCode::format, "group: unknown journal record kind");
    rec.kind = UpdateRecord::Kind(kind);
    rec.round_after = r.u32();
    if (rec.round_after != c + 2)
      throw Error(ErrorCode::validation, "group: journal rounds not contiguous");
    rec.slot = r.u32();
    rec.user_index = r.u32();
    auto pk_bytes = r.var_bytes(1u << 24);
    rec.pk = public_key_from_bytes(pk_bytes);
    if (rec.pk.n != g.n || rec.pk.slot != rec.slot)
      throw Error(ErrorCode::validation, "group: journal record key does not match its slot");
    g.journal.push_back(std::move(rec));
  }
  r.expect_end();
  return g;
}

std::vector<uint8_t> member_payload(const MemberInfo& m) {
  ByteWriter w;
  w.u32(m.slot);
  w.u32(m.round);
  w.bytes(m.group_id);
  w.u32(m.n);
  w.u32(m.gamma);
  w.u32(uint32_t(m.dk_hat.size()));
  for (const auto& e : m.dk_hat) w.bytes(e.to_bytes());
  w.bytes(m.d.to_bytes());
  return w.take();
}

MemberInfo member_from_payload(std::span<const uint8_t> in) {
  ByteReader r(in);
  MemberInfo m;
  m.slot = r.u32();
  m.round = r.u32();
  auto id = r.bytes(m.group_id.size());
  std::copy(id.begin(), id.end(), m.group_id.begin());
  m.n = r.u32();
  m.gamma = r.u32();
  if (m.n < 2 || m.n > kMaxGroupSize)
    throw Error(ErrorCode::validation, "member record: group size out of range");
  if (m.slot < 1 || m.slot > m.n)
    throw Error(ErrorCode::validation, "member record: slot out of range");
  if (m.round < 1) throw Error(ErrorCode::validation, "member record: bad round");
  if (m.gamma < 1) throw Error(ErrorCode::validation, "member record: bad tuple index");
  uint32_t dn = r.u32();
  if (dn != m.n)
    throw Error(ErrorCode::validation, "member record: helper array must hold n entries");
  m.dk_hat.reserve(dn);
  for (uint32_t i = 0; i < dn; ++i)
    m.dk_hat.push_back(G1Elem::from_bytes(r.bytes(G1Elem::kBytes)));
  m.d = G1Elem::from_bytes(r.bytes(G1Elem::kBytes));
  r.expect_end();
  return m;
}

}  // namespace nicbe
