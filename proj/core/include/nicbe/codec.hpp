#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nicbe/algebra.hpp"
#include "nicbe/errors.hpp"

namespace nicbe {

// All integers are big-endian on the wire. Sequences carry a 4-byte count.
// Every file starts with the envelope: magic "NICB", format version byte,
// kind byte.

inline constexpr std::array<uint8_t, 4> kMagic = {'N', 'I', 'C', 'B'};
inline constexpr uint8_t kFormatVersion = 1;

enum class FileKind : uint8_t {
  params = 1,
  public_key = 2,
  secret_key = 3,
  registry = 4,
  group = 5,
  member = 6,
  message = 7,
  ta_secret = 8,
};

const char* file_kind_name(FileKind k);

class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v);
  void u64(uint64_t v);
  void bytes(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void var_bytes(std::span<const uint8_t> b);  // u32 length prefix + bytes
  void envelope(FileKind kind);
  std::vector<uint8_t> take() { return std::move(buf_); }
  const std::vector<uint8_t>& data() const { return buf_; }
  size_t size() const { return buf_.size(); }

 private:
  std::vector<uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8();
  uint32_t u32();
  uint64_t u64();
  std::span<const uint8_t> bytes(size_t n);
  std::vector<uint8_t> var_bytes(size_t max_len);
  FileKind envelope();                 // parses and returns the kind
  void envelope_expect(FileKind kind); // parses and enforces the kind
  size_t remaining() const { return data_.size() - pos_; }
  size_t offset() const { return pos_; }
  void expect_end() const;

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

// Fixed-width bit strings (occupancy, recipient sets): ceil(n/8) bytes,
// MSB-first; read enforces zero padding so the encoding is canonical.
void write_bits(ByteWriter& w, const std::vector<bool>& bits);
std::vector<bool> read_bits(ByteReader& r, uint32_t n);

std::string hex_str(std::span<const uint8_t> b);

// Passphrase wrapping for secrets stored at rest (secret keys, member state,
// the authority key). Layout: envelope(kind) | salt(16) | nonce(12) |
// var_bytes(AEAD ciphertext+tag). The AEAD key is derived from the
// passphrase and salt; the 6-byte envelope prefix is bound as associated
// data so a wrapped payload cannot be replayed under another kind.
// An empty passphrase is permitted (protects integrity, not secrecy).
std::vector<uint8_t> wrap_private(FileKind kind, std::span<const uint8_t> payload,
                                  std::string_view passphrase, RandomSource& rng);
// Throws ErrorCode::auth_failed on a wrong passphrase or tampered bytes.
std::vector<uint8_t> unwrap_private(FileKind kind, std::span<const uint8_t> in,
                                    std::string_view passphrase);

}  // namespace nicbe
