#pragma once

// Opaque cryptographic primitives consumed as black boxes: hashing, HKDF,
// AEAD, and the registry signature. All are thin OpenSSL wrappers.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nicbe::opaque {

inline constexpr size_t kAeadKeyBytes = 32;   // AES-256-GCM
inline constexpr size_t kAeadNonceBytes = 12;
inline constexpr size_t kAeadTagBytes = 16;
inline constexpr size_t kSigBytes = 64;       // Ed25519
inline constexpr size_t kSigKeyBytes = 32;

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data);

std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm,
                                 std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info, size_t out_len);

// Returns ciphertext || 16-byte tag.
std::vector<uint8_t> aead_seal(const uint8_t key[kAeadKeyBytes],
                               const uint8_t nonce[kAeadNonceBytes],
                               std::span<const uint8_t> aad,
                               std::span<const uint8_t> plaintext);
// Empty optional on authentication failure.
std::optional<std::vector<uint8_t>> aead_open(const uint8_t key[kAeadKeyBytes],
                                              const uint8_t nonce[kAeadNonceBytes],
                                              std::span<const uint8_t> aad,
                                              std::span<const uint8_t> sealed);

struct SigKeyPair {
  std::array<uint8_t, kSigKeyBytes> pub;
  std::array<uint8_t, kSigKeyBytes> priv;
};

// Key material comes from the caller's randomness source so that seeded
// runs produce identical registries.
SigKeyPair sig_keygen(std::span<const uint8_t, kSigKeyBytes> seed);
std::array<uint8_t, kSigBytes> sig_sign(std::span<const uint8_t, kSigKeyBytes> priv,
                                        std::span<const uint8_t> msg);
bool sig_verify(std::span<const uint8_t, kSigKeyBytes> pub, std::span<const uint8_t> msg,
                std::span<const uint8_t, kSigBytes> sig);

}  // namespace nicbe::opaque
