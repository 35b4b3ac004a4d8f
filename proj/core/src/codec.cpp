#include "nicbe/codec.hpp"

#include <algorithm>

#include "opaque.hpp"

namespace nicbe {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::usage: return "usage";
    case ErrorCode::io: return "io";
    case ErrorCode::format: return "format";
    case ErrorCode::validation: return "validation";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::not_recipient: return "not-a-recipient";
    case ErrorCode::stale_round: return "stale-round";
    case ErrorCode::slot_occupied: return "slot-occupied";
    case ErrorCode::group_full: return "group-full";
    case ErrorCode::slot_empty: return "slot-empty";
    case ErrorCode::collision: return "collision";
    case ErrorCode::auth_failed: return "auth-failed";
    case ErrorCode::rng_failure: return "rng-failure";
    case ErrorCode::lock_failed: return "lock-failed";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

const char* file_kind_name(FileKind k) {
  switch (k) {
    case FileKind::params: return "params";
    case FileKind::public_key: return "public-key";
    case FileKind::secret_key: return "secret-key";
    case FileKind::registry: return "registry";
    case FileKind::group: return "group";
    case FileKind::member: return "member";
    case FileKind::message: return "message";
    case FileKind::ta_secret: return "ta-secret";
  }
  return "unknown";
}

void ByteWriter::u32(uint32_t v) {
  buf_.push_back(uint8_t(v >> 24));
  buf_.push_back(uint8_t(v >> 16));
  buf_.push_back(uint8_t(v >> 8));
  buf_.push_back(uint8_t(v));
}

void ByteWriter::u64(uint64_t v) {
  u32(uint32_t(v >> 32));
  u32(uint32_t(v));
}

void ByteWriter::var_bytes(std::span<const uint8_t> b) {
  if (b.size() > 0xffffffffu) throw Error(ErrorCode::internal, "var_bytes too long");
  u32(uint32_t(b.size()));
  bytes(b);
}

void ByteWriter::envelope(FileKind kind) {
  bytes(kMagic);
  u8(kFormatVersion);
  u8(uint8_t(kind));
}

uint8_t ByteReader::u8() {
  if (remaining() < 1) throw Error(ErrorCode::format, "truncated input: expected 1 more byte");
  return data_[pos_++];
}

uint32_t ByteReader::u32() {
  if (remaining() < 4) throw Error(ErrorCode::format, "truncated input: expected a 4-byte integer");
  uint32_t v = (uint32_t(data_[pos_]) << 24) | (uint32_t(data_[pos_ + 1]) << 16) |
               (uint32_t(data_[pos_ + 2]) << 8) | uint32_t(data_[pos_ + 3]);
  pos_ += 4;
  return v;
}

uint64_t ByteReader::u64() {
  uint64_t hi = u32();
  return (hi << 32) | u32();
}

std::span<const uint8_t> ByteReader::bytes(size_t n) {
  if (remaining() < n) throw Error(ErrorCode::format, "truncated input: expected " + std::to_string(n) + " more bytes");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::vector<uint8_t> ByteReader::var_bytes(size_t max_len) {
  uint32_t len = u32();
  if (len > max_len) throw Error(ErrorCode::format, "length prefix " + std::to_string(len) + " exceeds limit");
  auto b = bytes(len);
  return std::vector<uint8_t>(b.begin(), b.end());
}

FileKind ByteReader::envelope() {
  auto m = bytes(4);
  if (!std::equal(m.begin(), m.end(), kMagic.begin()))
    throw Error(ErrorCode::format, "bad magic: not a NICB file");
  uint8_t ver = u8();
  if (ver != kFormatVersion)
    throw Error(ErrorCode::format, "unsupported format version " + std::to_string(ver));
  uint8_t kind = u8();
  if (kind < 1 || kind > 8)
    throw Error(ErrorCode::format, "unknown file kind " + std::to_string(kind));
  return FileKind(kind);
}

void ByteReader::envelope_expect(FileKind kind) {
  FileKind got = envelope();
  if (got != kind)
    throw Error(ErrorCode::format, std::string("wrong file kind: expected ") + file_kind_name(kind) +
                                       ", got " + file_kind_name(got));
}

void ByteReader::expect_end() const {
  if (remaining() != 0)
    throw Error(ErrorCode::format, std::to_string(remaining()) + " trailing bytes after end of structure");
}

void write_bits(ByteWriter& w, const std::vector<bool>& bits) {
  std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= uint8_t(0x80u >> (i % 8));
  w.bytes(bytes);
}

std::vector<bool> read_bits(ByteReader& r, uint32_t n) {
  auto bytes = r.bytes((n + 7) / 8);
  std::vector<bool> bits(n, false);
  for (uint32_t i = 0; i < n; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
  for (size_t i = n; i < bytes.size() * 8; ++i)
    if ((bytes[i / 8] >> (7 - i % 8)) & 1)
      throw Error(ErrorCode::format, "nonzero padding in bit string");
  return bits;
}

std::string hex_str(std::span<const uint8_t> b) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (uint8_t v : b) {
    out.push_back(digits[v >> 4]);
    out.push_back(digits[v & 0x0f]);
  }
  return out;
}

namespace {

constexpr size_t kWrapSaltBytes = 16;
constexpr std::string_view kWrapDomain = "NICBE-v1-wrap";

std::array<uint8_t, opaque::kAeadKeyBytes> wrap_key(std::string_view passphrase,
                                                    std::span<const uint8_t> salt) {
  auto ikm = std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(passphrase.data()),
                                      passphrase.size());
  auto info = std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kWrapDomain.data()),
                                       kWrapDomain.size());
  auto okm = opaque::hkdf_sha256(ikm, salt, info, opaque::kAeadKeyBytes);
  std::array<uint8_t, opaque::kAeadKeyBytes> key{};
  std::copy(okm.begin(), okm.end(), key.begin());
  return key;
}

}  // namespace

std::vector<uint8_t> wrap_private(FileKind kind, std::span<const uint8_t> payload,
                                  std::string_view passphrase, RandomSource& rng) {
  ByteWriter w;
  w.envelope(kind);
  uint8_t salt[kWrapSaltBytes];
  uint8_t nonce[opaque::kAeadNonceBytes];
  rng.fill(salt, sizeof(salt));
  rng.fill(nonce, sizeof(nonce));
  auto key = wrap_key(passphrase, std::span<const uint8_t>(salt, sizeof(salt)));
  // The envelope prefix is the associated data: kind confusion fails the tag.
  auto aad = std::span<const uint8_t>(w.data().data(), w.size());
  auto ct = opaque::aead_seal(key.data(), nonce, aad, payload);
  w.bytes(std::span<const uint8_t>(salt, sizeof(salt)));
  w.bytes(std::span<const uint8_t>(nonce, sizeof(nonce)));
  w.var_bytes(ct);
  return w.take();
}

std::vector<uint8_t> unwrap_private(FileKind kind, std::span<const uint8_t> in,
                                    std::string_view passphrase) {
  ByteReader r(in);
  r.envelope_expect(kind);
  auto salt = r.bytes(kWrapSaltBytes);
  auto nonce = r.bytes(opaque::kAeadNonceBytes);
  auto ct = r.var_bytes(1u << 30);
  r.expect_end();
  auto key = wrap_key(passphrase, salt);
  auto aad = in.subspan(0, 6);
  auto pt = opaque::aead_open(key.data(), nonce.data(), aad, ct);
  if (!pt)
    throw Error(ErrorCode::auth_failed,
                "cannot unlock " + std::string(file_kind_name(kind)) +
                    " payload: wrong passphrase or corrupted file");
  return *pt;
}

}  // namespace nicbe
