#include "opaque.hpp"

#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/sha.h>

#include <cstring>
#include <memory>
#include <stdexcept>

#include "nicbe/errors.hpp"

namespace nicbe::opaque {

namespace {

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
  void operator()(EVP_PKEY* c) const { EVP_PKEY_free(c); }
};

[[noreturn]] void fail(const char* what) { throw Error(ErrorCode::internal, what); }

}  // namespace

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data) {
  std::array<uint8_t, 32> out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm, std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info, size_t out_len) {
  std::unique_ptr<EVP_PKEY_CTX, CtxFree> ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) <= 0 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), salt.data(), (int)salt.size()) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), ikm.data(), (int)ikm.size()) <= 0 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), info.data(), (int)info.size()) <= 0)
    fail("HKDF setup failed");
  std::vector<uint8_t> out(out_len);
  size_t len = out_len;
  if (EVP_PKEY_derive(ctx.get(), out.data(), &len) <= 0 || len != out_len)
    fail("HKDF derive failed");
  return out;
}

std::vector<uint8_t> aead_seal(const uint8_t key[kAeadKeyBytes],
                               const uint8_t nonce[kAeadNonceBytes],
                               std::span<const uint8_t> aad, std::span<const uint8_t> plaintext) {
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key, nonce) != 1)
    fail("AEAD init failed");
  int len = 0;
  if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), (int)aad.size()) != 1)
    fail("AEAD aad failed");
  std::vector<uint8_t> out(plaintext.size() + kAeadTagBytes);
  int ct_len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &ct_len, plaintext.data(), (int)plaintext.size()) != 1)
    fail("AEAD encrypt failed");
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + ct_len, &fin) != 1) fail("AEAD final failed");
  ct_len += fin;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagBytes,
                          out.data() + ct_len) != 1)
    fail("AEAD tag failed");
  out.resize(ct_len + kAeadTagBytes);
  return out;
}

std::optional<std::vector<uint8_t>> aead_open(const uint8_t key[kAeadKeyBytes],
                                              const uint8_t nonce[kAeadNonceBytes],
                                              std::span<const uint8_t> aad,
                                              std::span<const uint8_t> sealed) {
  if (sealed.size() < kAeadTagBytes) return std::nullopt;
  size_t ct_len = sealed.size() - kAeadTagBytes;
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key, nonce) != 1)
    fail("AEAD init failed");
  int len = 0;
  if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), (int)aad.size()) != 1)
    fail("AEAD aad failed");
  std::vector<uint8_t> out(ct_len);
  int pt_len = 0;
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &pt_len, sealed.data(), (int)ct_len) != 1)
    return std::nullopt;
  uint8_t tag[kAeadTagBytes];
  std::memcpy(tag, sealed.data() + ct_len, kAeadTagBytes);
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagBytes, tag) != 1)
    fail("AEAD tag set failed");
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + pt_len, &fin) != 1) return std::nullopt;
  out.resize(pt_len + fin);
  return out;
}

SigKeyPair sig_keygen(std::span<const uint8_t, kSigKeyBytes> seed) {
  std::unique_ptr<EVP_PKEY, CtxFree> pkey(
      EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
  if (!pkey) fail("Ed25519 keygen failed");
  SigKeyPair kp;
  std::copy(seed.begin(), seed.end(), kp.priv.begin());
  size_t len = kp.pub.size();
  if (EVP_PKEY_get_raw_public_key(pkey.get(), kp.pub.data(), &len) != 1 || len != kp.pub.size())
    fail("Ed25519 pubkey extract failed");
  return kp;
}

std::array<uint8_t, kSigBytes> sig_sign(std::span<const uint8_t, kSigKeyBytes> priv,
                                        std::span<const uint8_t> msg) {
  std::unique_ptr<EVP_PKEY, CtxFree> pkey(
      EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, priv.data(), priv.size()));
  std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
  std::array<uint8_t, kSigBytes> sig;
  size_t len = sig.size();
  if (!pkey || !ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1 ||
      EVP_DigestSign(ctx.get(), sig.data(), &len, msg.data(), msg.size()) != 1 || len != sig.size())
    fail("Ed25519 sign failed");
  return sig;
}

bool sig_verify(std::span<const uint8_t, kSigKeyBytes> pub, std::span<const uint8_t> msg,
                std::span<const uint8_t, kSigBytes> sig) {
  std::unique_ptr<EVP_PKEY, CtxFree> pkey(
      EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pub.data(), pub.size()));
  if (!pkey) return false;
  std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1)
    return false;
  return EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), msg.data(), msg.size()) == 1;
}

}  // namespace nicbe::opaque
