#include "nicbe/registry.hpp"

#include <algorithm>
#include <string_view>

#include "nicbe/codec.hpp"
#include "opaque.hpp"

namespace nicbe {

namespace {

constexpr std::string_view kSigDomain = "NICBE-reg";

void check_slot(const SystemParams& params, uint32_t slot) {
  if (slot < 1 || slot > params.n)
    throw Error(ErrorCode::validation, "slot " + std::to_string(slot) + " out of range [1, " +
                                           std::to_string(params.n) + "]");
}

}  // namespace

std::pair<MemberPublicKey, MemberSecretKey> key_regis(const SystemParams& params,
                                                      uint32_t gamma, uint32_t user_index,
                                                      uint32_t slot, RandomSource& rng) {
  check_slot(params, slot);
  params.tuple(gamma);  // range check; the tuple itself does not enter key generation
  if (user_index < 1)
    throw Error(ErrorCode::validation, "user index must be at least 1");

  // a, b exist only in this scope; only SK = h_i^a * u^b and the public
  // images survive.
  Scalar a = random_scalar(rng);
  Scalar b = random_scalar(rng);

  MemberPublicKey pk;
  pk.slot = slot;
  pk.n = params.n;
  pk.a = params.ghat.pow(a);
  pk.b = params.ghat.pow(b);
  G1Elem u_b = params.u.pow(b);
  for (uint32_t j = 1; j <= params.n; ++j) {
    if (j == slot) continue;
    pk.k.emplace(j, params.h[j - 1].pow(a) * u_b);
  }

  MemberSecretKey sk;
  sk.slot = slot;
  sk.sk = params.h[slot - 1].pow(a) * u_b;
  return {std::move(pk), std::move(sk)};
}

std::vector<std::pair<MemberPublicKey, MemberSecretKey>> key_regis_batch(
    const SystemParams& params, uint32_t gamma, uint32_t count, RandomSource& rng) {
  if (count != params.n)
    throw Error(ErrorCode::validation,
                "batch issuance must cover all " + std::to_string(params.n) + " slots");
  std::vector<std::pair<MemberPublicKey, MemberSecretKey>> out;
  out.reserve(count);
  for (uint32_t slot = 1; slot <= count; ++slot)
    out.push_back(key_regis(params, gamma, slot, slot, rng));
  return out;
}

bool verify_public_key(const SystemParams& params, const MemberPublicKey& pk) {
  if (pk.slot < 1 || pk.slot > params.n) return false;
  if (pk.n != params.n) return false;
  if (pk.k.size() != params.n - 1) return false;
  if (pk.k.count(pk.slot)) return false;
  if (pk.a.is_identity() || pk.b.is_identity()) return false;
  G1Elem u_inv = params.u.inverse();
  for (const auto& [j, kj] : pk.k) {
    if (j < 1 || j > params.n) return false;
    // e(K[j], ghat) * e(h_j^-1, A) * e(u^-1, B) == 1
    std::array<std::pair<G1Elem, G2Elem>, 3> legs{{
        {kj, params.ghat},
        {params.h[j - 1].inverse(), pk.a},
        {u_inv, pk.b},
    }};
    if (!pairing_product(legs).is_identity()) return false;
  }
  return true;
}

bool verify_secret_key(const SystemParams& params, const MemberPublicKey& pk,
                       const MemberSecretKey& sk) {
  if (sk.slot != pk.slot || pk.slot < 1 || pk.slot > params.n) return false;
  std::array<std::pair<G1Elem, G2Elem>, 3> legs{{
      {sk.sk, params.ghat},
      {params.h[pk.slot - 1].inverse(), pk.a},
      {params.u.inverse(), pk.b},
  }};
  return pairing_product(legs).is_identity();
}

std::vector<uint8_t> registry_sig_message(uint32_t user_index, uint32_t gamma,
                                          const MemberPublicKey& pk) {
  ByteWriter w;
  w.bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kSigDomain.data()),
                                   kSigDomain.size()));
  w.u32(user_index);
  w.u32(gamma);
  auto pk_bytes = public_key_to_bytes(pk);
  w.var_bytes(pk_bytes);
  return w.take();
}

void registry_add(Registry& reg, const RegistryRecord& rec) {
  for (const auto& r : reg.records) {
    if (r.user_index == rec.user_index)
      throw Error(ErrorCode::collision,
                  "user " + std::to_string(rec.user_index) + " is already registered");
    if (r.gamma == rec.gamma && r.pk.slot == rec.pk.slot)
      throw Error(ErrorCode::collision, "slot " + std::to_string(rec.pk.slot) +
                                            " under tuple " + std::to_string(rec.gamma) +
                                            " is already registered");
  }
  auto msg = registry_sig_message(rec.user_index, rec.gamma, rec.pk);
  if (!opaque::sig_verify(std::span<const uint8_t, 32>(reg.ta_pub), msg,
                          std::span<const uint8_t, 64>(rec.attestation)))
    throw Error(ErrorCode::auth_failed, "registry record attestation does not verify");
  reg.records.push_back(rec);
}

std::optional<RegistryRecord> registry_find_user(const Registry& reg, uint32_t user_index) {
  for (const auto& r : reg.records)
    if (r.user_index == user_index) return r;
  return std::nullopt;
}

std::optional<RegistryRecord> registry_find_slot(const Registry& reg, uint32_t gamma,
                                                 uint32_t slot) {
  for (const auto& r : reg.records)
    if (r.gamma == gamma && r.pk.slot == slot) return r;
  return std::nullopt;
}

std::vector<uint8_t> public_key_to_bytes(const MemberPublicKey& pk) {
  ByteWriter w;
  w.envelope(FileKind::public_key);
  w.u32(pk.slot);
  w.u32(pk.n);
  w.bytes(pk.a.to_bytes());
  w.bytes(pk.b.to_bytes());
  w.u32(uint32_t(pk.k.size()));
  for (const auto& [j, kj] : pk.k) {  // std::map iterates ascending: canonical order
    w.u32(j);
    w.bytes(kj.to_bytes());
  }
  return w.take();
}

MemberPublicKey public_key_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::public_key);
  MemberPublicKey pk;
  pk.slot = r.u32();
  pk.n = r.u32();
  if (pk.n < 2 || pk.n > 4096)
    throw Error(ErrorCode::validation, "public key: group size out of range");
  if (pk.slot < 1 || pk.slot > pk.n)
    throw Error(ErrorCode::validation, "public key: slot out of range");
  pk.a = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  pk.b = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  uint32_t kn = r.u32();
  if (kn != pk.n - 1)
    throw Error(ErrorCode::validation, "public key: K must hold exactly n-1 entries");
  uint32_t prev = 0;
  for (uint32_t c = 0; c < kn; ++c) {
    uint32_t j = r.u32();
    if (j < 1 || j > pk.n || j == pk.slot)
      throw Error(ErrorCode::validation, "public key: K entry index out of range");
    if (j <= prev)
      throw Error(ErrorCode::format, "public key: K entries out of canonical order");
    prev = j;
    pk.k.emplace(j, G1Elem::from_bytes(r.bytes(G1Elem::kBytes)));
  }
  r.expect_end();
  return pk;
}

std::vector<uint8_t> registry_to_bytes(const Registry& reg) {
  ByteWriter w;
  w.envelope(FileKind::registry);
  w.bytes(reg.ta_pub);
  w.u32(uint32_t(reg.records.size()));
  for (const auto& rec : reg.records) {
    w.u32(rec.user_index);
    w.u32(rec.gamma);
    auto pk_bytes = public_key_to_bytes(rec.pk);
    w.var_bytes(pk_bytes);
    w.bytes(rec.attestation);
  }
  return w.take();
}

Registry registry_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::registry);
  Registry reg;
  auto pub = r.bytes(reg.ta_pub.size());
  std::copy(pub.begin(), pub.end(), reg.ta_pub.begin());
  uint32_t count = r.u32();
  if (count > 1u << 20) throw Error(ErrorCode::format, "registry: record count exceeds limit");
  for (uint32_t c = 0; c < count; ++c) {
    RegistryRecord rec;
    rec.user_index = r.u32();
    rec.gamma = r.u32();
    auto pk_bytes = r.var_bytes(1u << 24);
    rec.pk = public_key_from_bytes(pk_bytes);
    auto sig = r.bytes(rec.attestation.size());
    std::copy(sig.begin(), sig.end(), rec.attestation.begin());
    registry_add(reg, rec);  // re-enforces uniqueness and attestation
  }
  r.expect_end();
  return reg;
}

std::vector<uint8_t> secret_key_payload(const MemberSecretKey& sk) {
  ByteWriter w;
  w.u32(sk.slot);
  w.bytes(sk.sk.to_bytes());
  return w.take();
}

MemberSecretKey secret_key_from_payload(std::span<const uint8_t> in) {
  ByteReader r(in);
  MemberSecretKey sk;
  sk.slot = r.u32();
  sk.sk = G1Elem::from_bytes(r.bytes(G1Elem::kBytes));
  r.expect_end();
  return sk;
}

}  // namespace nicbe
