#include "nicbe/broadcast.hpp"

#include <algorithm>
#include <string_view>

#include "nicbe/codec.hpp"
#include "opaque.hpp"

namespace nicbe {

namespace {

constexpr std::string_view kKemDomain = "NICBE-v1-KEM";
constexpr std::string_view kDemDomain = "NICBE-v1-DEM";

// Excluded occupied slots: S \ U.
std::vector<uint32_t> excluded_slots(const GroupInfo& g_info,
                                     const std::vector<bool>& recipients) {
  std::vector<uint32_t> ubar;
  for (uint32_t i = 1; i <= g_info.n; ++i)
    if (g_info.st[i - 1] && !recipients[i - 1]) ubar.push_back(i);
  return ubar;
}

std::vector<bool> recipient_bits(const GroupInfo& g_info,
                                 const std::vector<uint32_t>& recipients) {
  if (recipients.empty())
    throw Error(ErrorCode::validation, "recipient set must not be empty");
  std::vector<bool> bits(g_info.n, false);
  for (uint32_t slot : recipients) {
    if (slot < 1 || slot > g_info.n)
      throw Error(ErrorCode::validation,
                  "recipient slot " + std::to_string(slot) + " out of range");
    if (!g_info.st[slot - 1])
      throw Error(ErrorCode::validation,
                  "recipient slot " + std::to_string(slot) + " is not an occupied slot");
    bits[slot - 1] = true;
  }
  return bits;
}

}  // namespace

bool BroadcastHeader::is_recipient(uint32_t slot) const {
  return slot >= 1 && slot <= n && recipients[slot - 1];
}

std::vector<uint32_t> BroadcastHeader::recipient_slots() const {
  std::vector<uint32_t> out;
  for (uint32_t i = 1; i <= n; ++i)
    if (recipients[i - 1]) out.push_back(i);
  return out;
}

std::pair<BroadcastHeader, SessionKey> encrypt(const SystemParams& params,
                                               const GroupInfo& g_info,
                                               const std::vector<uint32_t>& recipients,
                                               RandomSource& rng) {
  return encrypt_with_rho(params, g_info, recipients, random_scalar(rng));
}

std::pair<BroadcastHeader, SessionKey> encrypt_with_rho(const SystemParams& params,
                                                        const GroupInfo& g_info,
                                                        const std::vector<uint32_t>& recipients,
                                                        const Scalar& rho) {
  if (params.n != g_info.n)
    throw Error(ErrorCode::validation, "group record does not match these parameters");
  if (rho.is_zero()) throw Error(ErrorCode::validation, "blinding exponent must be nonzero");
  std::vector<bool> bits = recipient_bits(g_info, recipients);
  std::vector<uint32_t> ubar = excluded_slots(g_info, bits);
  const PlaceholderTuple& t = params.tuple(g_info.gamma);

  // Yhat1 = Y1 * prod_{i in Ubar} A_i^(gamma); Yhat2 likewise with B.
  std::vector<G2Elem> y1_terms{g_info.omega.y1};
  std::vector<G2Elem> y2_terms{g_info.omega.y2};
  for (uint32_t i : ubar) {
    y1_terms.push_back(t.a[i - 1]);
    y2_terms.push_back(t.b[i - 1]);
  }
  G2Elem yhat1 = g2_product(y1_terms);
  G2Elem yhat2 = g2_product(y2_terms);

  BroadcastHeader h;
  h.group_id = g_info.id;
  h.round = g_info.round;
  h.n = g_info.n;
  h.recipients = std::move(bits);
  h.c1 = params.ghat.pow(rho);
  h.c2 = yhat1.pow(rho);

  // k = e(u, Yhat2)^rho — one pairing and one target-group exponentiation;
  // equal to the term-by-term product form (the test oracle evaluates that
  // form literally and compares).
  SessionKey k{pairing(params.u, yhat2).pow(rho)};
  return {std::move(h), std::move(k)};
}

SessionKey decrypt(const SystemParams& params, const GroupInfo& g_info,
                   const BroadcastHeader& header, uint32_t my_slot, const MemberInfo& m_info) {
  if (params.n != g_info.n || header.n != g_info.n)
    throw Error(ErrorCode::validation, "header/group/parameter size mismatch");
  if (header.group_id != g_info.id)
    throw Error(ErrorCode::validation, "header belongs to a different group");
  if (m_info.group_id != g_info.id)
    throw Error(ErrorCode::validation, "member record belongs to a different group");
  if (header.round != g_info.round)
    throw Error(ErrorCode::stale_round,
                "header round " + std::to_string(header.round) +
                    " does not match the group round " + std::to_string(g_info.round));
  if (m_info.round != header.round)
    throw Error(ErrorCode::stale_round,
                "member state at round " + std::to_string(m_info.round) +
                    " is stale for a header at round " + std::to_string(header.round) +
                    "; refresh first");
  if (m_info.slot != my_slot)
    throw Error(ErrorCode::validation, "member record belongs to a different slot");
  // U must name occupied slots only.
  for (uint32_t i = 1; i <= g_info.n; ++i)
    if (header.recipients[i - 1] && !g_info.st[i - 1])
      throw Error(ErrorCode::validation,
                  "header names unoccupied slot " + std::to_string(i) + " as a recipient");
  if (!header.is_recipient(my_slot))
    throw Error(ErrorCode::not_recipient,
                "slot " + std::to_string(my_slot) + " is not in the recipient set");

  std::vector<uint32_t> ubar = excluded_slots(g_info, header.recipients);
  const PlaceholderTuple& t = params.tuple(g_info.gamma);

  // dhat = d * prod_{l in Ubar} K_{l,my}^(gamma). l != my_slot always:
  // my_slot is a recipient, Ubar members are not.
  std::vector<G1Elem> terms{m_info.d};
  for (uint32_t l : ubar) terms.push_back(*t.k[l - 1][my_slot - 1]);
  G1Elem dhat = g1_product(terms);

  // k = e(dhat, C1) * e(h_i, C2)^-1, fused into one two-leg evaluation.
  std::array<std::pair<G1Elem, G2Elem>, 2> legs{{
      {dhat, header.c1},
      {params.h[my_slot - 1].inverse(), header.c2},
  }};
  return SessionKey{pairing_product(legs)};
}

std::array<uint8_t, 32> derive_dem_key(const SessionKey& k, const BroadcastHeader& header) {
  // Extract-then-expand over the canonical session-key encoding. The
  // context (group, round, recipient set) rides in the expand info, so equal
  // k under different context yields an unrelated DEM key.
  auto ikm = k.k.to_bytes();
  ByteWriter info;
  info.bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kDemDomain.data()),
                                      kDemDomain.size()));
  info.bytes(header.group_id);
  info.u32(header.round);
  write_bits(info, header.recipients);
  auto salt = std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kKemDomain.data()),
                                       kKemDomain.size());
  auto okm = opaque::hkdf_sha256(ikm, salt, info.data(), opaque::kAeadKeyBytes);
  std::array<uint8_t, 32> key{};
  std::copy(okm.begin(), okm.end(), key.begin());
  return key;
}

std::array<uint8_t, 32> session_key_digest(const SessionKey& k) {
  auto enc = k.k.to_bytes();
  return opaque::sha256(enc);
}

SealedMessage seal(const SystemParams& params, const GroupInfo& g_info,
                   const std::vector<uint32_t>& recipients, std::span<const uint8_t> plaintext,
                   RandomSource& rng) {
  auto [header, k] = encrypt(params, g_info, recipients, rng);
  SealedMessage m;
  m.header = std::move(header);
  rng.fill(m.nonce.data(), m.nonce.size());
  auto key = derive_dem_key(k, m.header);
  auto aad = header_to_bytes(m.header);
  m.ciphertext = opaque::aead_seal(key.data(), m.nonce.data(), aad, plaintext);
  return m;
}

std::vector<uint8_t> open_sealed(const SystemParams& params, const GroupInfo& g_info,
                                 const SealedMessage& sealed, uint32_t my_slot,
                                 const MemberInfo& m_info) {
  // Recipient-set and staleness gating happens inside decrypt, before any
  // AEAD work.
  SessionKey k = decrypt(params, g_info, sealed.header, my_slot, m_info);
  auto key = derive_dem_key(k, sealed.header);
  auto aad = header_to_bytes(sealed.header);
  auto pt = opaque::aead_open(key.data(), sealed.nonce.data(), aad, sealed.ciphertext);
  if (!pt)
    throw Error(ErrorCode::auth_failed,
                "payload authentication failed (tampered message or wrong key)");
  return *pt;
}

std::vector<uint8_t> header_to_bytes(const BroadcastHeader& h) {
  ByteWriter w;
  w.envelope(FileKind::message);
  w.bytes(h.group_id);
  w.u32(h.round);
  w.u32(h.n);
  write_bits(w, h.recipients);
  w.bytes(h.c1.to_bytes());
  w.bytes(h.c2.to_bytes());
  return w.take();
}

namespace {

BroadcastHeader header_from_reader(ByteReader& r) {
  BroadcastHeader h;
  auto id = r.bytes(h.group_id.size());
  std::copy(id.begin(), id.end(), h.group_id.begin());
  h.round = r.u32();
  h.n = r.u32();
  if (h.n < 2 || h.n > 4096) throw Error(ErrorCode::validation, "message: group size out of range");
  if (h.round < 1) throw Error(ErrorCode::validation, "message: bad round");
  h.recipients = read_bits(r, h.n);
  if (std::none_of(h.recipients.begin(), h.recipients.end(), [](bool b) { return b; }))
    throw Error(ErrorCode::validation, "message: empty recipient set");
  h.c1 = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  h.c2 = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  return h;
}

}  // namespace

BroadcastHeader header_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::message);
  BroadcastHeader h = header_from_reader(r);
  r.expect_end();
  return h;
}

std::vector<uint8_t> message_to_bytes(const SealedMessage& m) {
  ByteWriter w;
  auto hb = header_to_bytes(m.header);
  w.bytes(hb);
  w.bytes(m.nonce);
  w.var_bytes(m.ciphertext);
  return w.take();
}

SealedMessage message_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::message);
  SealedMessage m;
  m.header = header_from_reader(r);
  auto nonce = r.bytes(m.nonce.size());
  std::copy(nonce.begin(), nonce.end(), m.nonce.begin());
  m.ciphertext = r.var_bytes(1u << 30);
  r.expect_end();
  return m;
}

}  // namespace nicbe
