// Group lifecycle: non-interactive derivation, join/leave transitions,
// journal replay, and the five core invariants — consistency, oracle
// equivalence (incremental == fresh), the join/leave inverse law, round
// monotonicity, and multi-party agreement.

#include <cstdlib>
#include <map>
#include <vector>

#include "doctest.h"
#include "nicbe/group.hpp"
#include "nicbe/params.hpp"
#include "nicbe/registry.hpp"
#include "oracle.hpp"
#include "util.hpp"

using namespace nicbe;
using testutil::code_of;

namespace {

struct System {
  SystemParams params;
  std::vector<std::pair<MemberPublicKey, MemberSecretKey>> keys;  // slot-1 indexed
};

// One shared system per size: setup is expensive and immutable.
const System& system_for(uint32_t n) {
  static std::map<uint32_t, System> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    System s;
    auto rng = DeterministicRandom::from_u64(0x5e7 + n);
    s.params = globe_setup(128, n, 2, 4 * n, rng);
    s.keys = key_regis_batch(s.params, 1, n, rng);
    it = cache.emplace(n, std::move(s)).first;
  }
  return it->second;
}

uint32_t user_of(uint32_t slot) { return 100 + slot; }

std::map<uint32_t, SlotAssignment> members_for(const System& s,
                                               const std::vector<uint32_t>& slots) {
  std::map<uint32_t, SlotAssignment> m;
  for (uint32_t slot : slots) m.emplace(slot, SlotAssignment{user_of(slot), s.keys[slot - 1].first});
  return m;
}

GroupId make_id(uint64_t tag) {
  GroupId id{};
  id[0] = uint8_t(tag >> 8);
  id[1] = uint8_t(tag);
  id[15] = 0x77;
  return id;
}

// Maintains the full live state of every member through a lifecycle, the
// way real parties would: transitions propagate via journal records.
struct Sim {
  const System& sys;
  GroupInfo g;
  std::map<uint32_t, SlotAssignment> members;
  std::map<uint32_t, MemberInfo> infos;

  Sim(const System& s, const std::vector<uint32_t>& initial, uint64_t tag) : sys(s) {
    members = members_for(s, initial);
    uint32_t first = initial.front();
    auto [gi, mi] = key_derive(s.params, make_id(tag), 1, 1, members, first,
                               s.keys[first - 1].second);
    g = gi;
    infos.emplace(first, mi);
    for (uint32_t slot : initial) {
      if (slot == first) continue;
      infos.emplace(slot,
                    derive_member_info(s.params, g, members, slot, s.keys[slot - 1].second));
    }
  }

  void join_slot(uint32_t slot) {
    auto [g2, rec] = join(sys.params, g, sys.keys[slot - 1].first, user_of(slot));
    for (auto& [l, info] : infos) info = apply_update_to_member(sys.params, rec, info);
    g = g2;
    members.emplace(slot, SlotAssignment{user_of(slot), sys.keys[slot - 1].first});
    infos.emplace(slot,
                  derive_member_info(sys.params, g, members, slot, sys.keys[slot - 1].second));
  }

  void leave_slot(uint32_t slot) {
    auto [g2, rec] = leave(sys.params, g, sys.keys[slot - 1].first);
    infos.erase(slot);
    members.erase(slot);
    for (auto& [l, info] : infos) info = apply_update_to_member(sys.params, rec, info);
    g = g2;
  }

  std::vector<uint32_t> free_slots() const {
    std::vector<uint32_t> out;
    for (uint32_t i = 1; i <= g.n; ++i)
      if (!g.occupied(i)) out.push_back(i);
    return out;
  }
};

// Simple deterministic PRNG for shaping test sequences (not key material).
struct SeqRand {
  uint64_t s;
  explicit SeqRand(uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  uint32_t below(uint32_t n) { return uint32_t(next() % n); }
  template <class T>
  T pick(const std::vector<T>& v) {
    return v[below(uint32_t(v.size()))];
  }
};

std::vector<uint32_t> random_subset(SeqRand& rnd, uint32_t n, uint32_t min_count) {
  std::vector<uint32_t> out;
  while (out.size() < min_count) {
    out.clear();
    for (uint32_t i = 1; i <= n; ++i)
      if (rnd.below(2)) out.push_back(i);
  }
  return out;
}

void run_random_updates(Sim& sim, SeqRand& rnd, int count) {
  for (int u = 0; u < count; ++u) {
    auto free = sim.free_slots();
    bool can_join = !free.empty();
    bool can_leave = sim.g.member_count() > 1;
    if (!can_join && !can_leave) break;
    bool do_join = can_join && (!can_leave || rnd.below(2) == 0);
    if (do_join)
      sim.join_slot(rnd.pick(free));
    else
      sim.leave_slot(rnd.pick(sim.g.occupied_slots()));
  }
}

}  // namespace

TEST_CASE("consistency: every live member passes the acceptance check after random lifecycles") {
  const uint32_t sizes[] = {4, 8, 16};
  for (int seq = 0; seq < 36; ++seq) {
    const System& sys = system_for(sizes[seq % 3]);
    SeqRand rnd(1000 + seq);
    Sim sim(sys, random_subset(rnd, sys.params.n, 1), 0x1000 + seq);
    run_random_updates(sim, rnd, 20);

    for (const auto& [slot, info] : sim.infos) {
      REQUIRE(info.round == sim.g.round);
      REQUIRE(verify_decryption_key(sys.params, sim.g, slot, info.d));
    }
  }
}

TEST_CASE("consistency check rejects single-element perturbations") {
  const System& sys = system_for(4);
  Sim sim(sys, {1, 3}, 0xbad);

  const MemberInfo& m = sim.infos.at(1);
  CHECK(verify_decryption_key(sys.params, sim.g, 1, m.d));
  CHECK(!verify_decryption_key(sys.params, sim.g, 1, m.d * G1Elem::generator()));

  GroupInfo t = sim.g;
  t.omega.y1 = t.omega.y1 * G2Elem::generator();
  CHECK(!verify_decryption_key(sys.params, t, 1, m.d));

  t = sim.g;
  t.omega.y2 = t.omega.y2 * G2Elem::generator();
  CHECK(!verify_decryption_key(sys.params, t, 1, m.d));

  // A perturbed published omega is also caught at derivation time.
  t = sim.g;
  t.omega.y1 = t.omega.y1 * G2Elem::generator();
  CHECK(code_of([&] {
          derive_member_info(sys.params, t, sim.members, 1, sys.keys[0].second);
        }) == ErrorCode::consistency);

  // A forged secret key fails the acceptance check inside derivation.
  MemberSecretKey forged{1, G1Elem::generator()};
  CHECK(code_of([&] {
          derive_member_info(sys.params, sim.g, sim.members, 1, forged);
        }) == ErrorCode::consistency);
}

TEST_CASE("oracle equivalence: incremental state equals fresh derivation") {
  const uint32_t sizes[] = {4, 8, 16};
  for (int seq = 0; seq < 9; ++seq) {
    const System& sys = system_for(sizes[seq % 3]);
    SeqRand rnd(7000 + seq);
    Sim sim(sys, random_subset(rnd, sys.params.n, 1), 0x2000 + seq);
    run_random_updates(sim, rnd, 12);

    // Fresh derivation over the final membership by some live member.
    uint32_t who = sim.infos.begin()->first;
    auto [fresh_g, fresh_m] = key_derive(sys.params, sim.g.id, sim.g.pi, sim.g.gamma,
                                         sim.members, who, sys.keys[who - 1].second);

    CHECK(fresh_g.omega == sim.g.omega);
    CHECK(fresh_g.st == sim.g.st);
    CHECK(fresh_g.delta == sim.g.delta);

    for (const auto& [slot, info] : sim.infos) {
      MemberInfo fresh = derive_member_info(sys.params, sim.g, sim.members, slot,
                                            sys.keys[slot - 1].second);
      CHECK(info.dk_hat == fresh.dk_hat);
      CHECK(info.d == fresh.d);
    }

    // And both equal the literal-product oracle.
    oracle::GroupKey ok = oracle::group_key(sys.params, sim.g.gamma, sim.members);
    CHECK(ok.y1 == sim.g.omega.y1);
    CHECK(ok.y2 == sim.g.omega.y2);
    for (const auto& [slot, info] : sim.infos) {
      G1Elem dk = oracle::dk_hat(sys.params, sim.g.gamma, sim.members, slot);
      CHECK(dk == info.dk_hat[slot - 1]);
      CHECK(dk * sys.keys[slot - 1].second.sk == info.d);
    }
  }
}

TEST_CASE("inverse law: leave after join restores all algebraic state") {
  const System& sys = system_for(8);
  Sim sim(sys, {2, 5, 7}, 0x3000);
  GroupInfo before = sim.g;
  MemberInfo m5_before = sim.infos.at(5);

  auto [g1, join_rec] = join(sys.params, sim.g, sys.keys[3].first, user_of(4));  // slot 4
  auto [g2, leave_rec] = leave(sys.params, g1, sys.keys[3].first);

  CHECK(g2.omega == before.omega);
  CHECK(g2.st == before.st);
  CHECK(g2.delta == before.delta);
  CHECK(g2.round == before.round + 2);
  CHECK(g2.journal.size() == before.journal.size() + 2);

  MemberInfo m5_mid = apply_update_to_member(sys.params, join_rec, m5_before);
  MemberInfo m5_after = apply_update_to_member(sys.params, leave_rec, m5_mid);
  CHECK(m5_after.dk_hat == m5_before.dk_hat);
  CHECK(m5_after.d == m5_before.d);
  CHECK(m5_after.round == m5_before.round + 2);
}

TEST_CASE("round monotonicity: +1 per update, occupancy changes by one") {
  const System& sys = system_for(4);
  Sim sim(sys, {1}, 0x4000);
  CHECK(sim.g.round == 1);
  uint32_t count = sim.g.member_count();

  sim.join_slot(3);
  CHECK(sim.g.round == 2);
  CHECK(sim.g.member_count() == count + 1);

  sim.join_slot(2);
  CHECK(sim.g.round == 3);
  CHECK(sim.g.member_count() == count + 2);

  sim.leave_slot(3);
  CHECK(sim.g.round == 4);
  CHECK(sim.g.member_count() == count + 1);

  // Journal records carry the entered round, in order.
  REQUIRE(sim.g.journal.size() == 3);
  CHECK(sim.g.journal[0].round_after == 2);
  CHECK(sim.g.journal[1].round_after == 3);
  CHECK(sim.g.journal[2].round_after == 4);
  CHECK(sim.g.journal[2].kind == UpdateRecord::Kind::leave);
}

TEST_CASE("agreement: independent derivations are byte-identical") {
  const System& sys = system_for(8);
  auto members = members_for(sys, {1, 4, 6, 8});
  GroupId id = make_id(0x5000);

  auto [ga, ma] = key_derive(sys.params, id, 1, 1, members, 4, sys.keys[3].second);
  auto [gb, mb] = key_derive(sys.params, id, 1, 1, members, 8, sys.keys[7].second);
  CHECK(ga == gb);
  CHECK(group_to_bytes(ga) == group_to_bytes(gb));

  // Their member states agree on the shared helper array.
  CHECK(ma.dk_hat == mb.dk_hat);
  CHECK(ma.d != mb.d);  // but the decryption keys are their own
}

TEST_CASE("abort conditions carry the advertised error classes") {
  const System& sys = system_for(4);
  Sim sim(sys, {1, 2, 3}, 0x6000);

  // Join into an occupied slot.
  CHECK(code_of([&] { join(sys.params, sim.g, sys.keys[1].first, 42); }) ==
        ErrorCode::slot_occupied);
  // Same user joining twice.
  CHECK(code_of([&] { join(sys.params, sim.g, sys.keys[3].first, user_of(1)); }) ==
        ErrorCode::validation);

  // Full group: group_full wins over slot_occupied.
  sim.join_slot(4);
  CHECK(code_of([&] { join(sys.params, sim.g, sys.keys[0].first, 99); }) ==
        ErrorCode::group_full);

  // Leave from an empty slot.
  sim.leave_slot(4);
  CHECK(code_of([&] { leave(sys.params, sim.g, sys.keys[3].first); }) == ErrorCode::slot_empty);

  // Empty derivation.
  std::map<uint32_t, SlotAssignment> none;
  CHECK(code_of([&] {
          key_derive(sys.params, make_id(1), 1, 1, none, 1, sys.keys[0].second);
        }) == ErrorCode::validation);

  // Membership input disagreeing with occupancy.
  auto wrong = sim.members;
  wrong.erase(2);
  CHECK(code_of([&] {
          derive_member_info(sys.params, sim.g, wrong, 1, sys.keys[0].second);
        }) == ErrorCode::validation);

  // Secret key for the wrong slot.
  CHECK(code_of([&] {
          derive_member_info(sys.params, sim.g, sim.members, 1, sys.keys[2].second);
        }) == ErrorCode::validation);

  // Deriving for an unoccupied slot.
  sim.leave_slot(3);
  CHECK(code_of([&] {
          derive_member_info(sys.params, sim.g, sim.members, 3, sys.keys[2].second);
        }) == ErrorCode::slot_empty);
}

TEST_CASE("journal replay: offline members catch up exactly") {
  const System& sys = system_for(8);
  Sim sim(sys, {1, 2, 3}, 0x7000);

  // Member 1 goes offline here.
  MemberInfo offline = sim.infos.at(1);

  sim.join_slot(5);
  sim.join_slot(7);
  sim.leave_slot(2);
  sim.join_slot(4);

  MemberInfo caught_up = refresh_member(sys.params, sim.g, offline);
  CHECK(caught_up == sim.infos.at(1));
  CHECK(verify_decryption_key(sys.params, sim.g, 1, caught_up.d));

  // Refreshing an already-current member is the identity.
  CHECK(refresh_member(sys.params, sim.g, sim.infos.at(1)) == sim.infos.at(1));

  // A joiner's own record is skipped naturally (it predates their state).
  MemberInfo joiner = sim.infos.at(5);
  CHECK(refresh_member(sys.params, sim.g, joiner) == joiner);
}

TEST_CASE("replay guards: wrong round, own record, departed member") {
  const System& sys = system_for(4);
  Sim sim(sys, {1, 2}, 0x8000);
  MemberInfo m1 = sim.infos.at(1);

  auto [g2, rec] = join(sys.params, sim.g, sys.keys[2].first, user_of(3));

  // Applying a record twice: round mismatch.
  MemberInfo stepped = apply_update_to_member(sys.params, rec, m1);
  CHECK(code_of([&] { apply_update_to_member(sys.params, rec, stepped); }) ==
        ErrorCode::stale_round);

  // A member never replays its own transition.
  MemberInfo m3{3, 1, sim.g.id, 4, 1, std::vector<G1Elem>(4), G1Elem()};
  CHECK(code_of([&] { apply_update_to_member(sys.params, rec, m3); }) ==
        ErrorCode::validation);

  // Member state ahead of the group record.
  GroupInfo old_g = sim.g;
  CHECK(code_of([&] { refresh_member(sys.params, old_g, stepped); }) ==
        ErrorCode::stale_round);

  // A departed member cannot replay its own leave.
  sim.join_slot(3);
  auto [g3, leave_rec] = leave(sys.params, sim.g, sys.keys[1].first);  // slot 2 departs
  MemberInfo m2 = sim.infos.at(2);
  CHECK(code_of([&] { apply_update_to_member(sys.params, leave_rec, m2); }) ==
        ErrorCode::validation);

  // Mismatched identity: wrong group id.
  MemberInfo alien = sim.infos.at(1);
  alien.group_id[0] ^= 0xff;
  CHECK(code_of([&] { refresh_member(sys.params, sim.g, alien); }) == ErrorCode::validation);
}

TEST_CASE("group records round-trip through their codec") {
  const System& sys = system_for(4);
  Sim sim(sys, {1, 2}, 0x9000);
  sim.join_slot(4);
  sim.leave_slot(2);

  auto bytes = group_to_bytes(sim.g);
  GroupInfo back = group_from_bytes(bytes);
  CHECK(back == sim.g);
  CHECK(group_to_bytes(back) == bytes);

  auto mbytes = member_payload(sim.infos.at(1));
  MemberInfo mback = member_from_payload(mbytes);
  CHECK(mback == sim.infos.at(1));
}
