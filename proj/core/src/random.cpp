#include <openssl/rand.h>

#include <cstring>

#include "algebra_detail.hpp"
#include "ec/curve.hpp"
#include "nicbe/algebra.hpp"
#include "opaque.hpp"

namespace nicbe {

void SystemRandom::fill(uint8_t* out, size_t n) {
  if (n == 0) return;
  if (RAND_bytes(out, static_cast<int>(n)) != 1)
    throw Error(ErrorCode::rng_failure, "system randomness unavailable");
}

DeterministicRandom::DeterministicRandom(std::span<const uint8_t> seed) {
  key_ = opaque::sha256(seed);
}

DeterministicRandom DeterministicRandom::from_u64(uint64_t seed) {
  uint8_t be[8];
  for (int i = 0; i < 8; ++i) be[7 - i] = uint8_t(seed >> (8 * i));
  return DeterministicRandom(std::span<const uint8_t>(be, sizeof(be)));
}

void DeterministicRandom::fill(uint8_t* out, size_t n) {
  while (n > 0) {
    if (avail_ == 0) {
      uint8_t msg[40];
      std::memcpy(msg, key_.data(), 32);
      for (int i = 0; i < 8; ++i) msg[32 + 7 - i] = uint8_t(counter_ >> (8 * i));
      block_ = opaque::sha256(std::span<const uint8_t>(msg, sizeof(msg)));
      ++counter_;
      avail_ = block_.size();
    }
    size_t take = n < avail_ ? n : avail_;
    std::memcpy(out, block_.data() + (block_.size() - avail_), take);
    avail_ -= take;
    out += take;
    n -= take;
  }
}

Scalar random_scalar(RandomSource& rng) {
  std::array<uint8_t, Scalar::kBytes> buf{};
  for (;;) {
    rng.fill(buf.data(), buf.size());
    buf[0] &= 0x7f;  // trim to 255 bits; r is just below 2^255
    bool zero = true;
    for (uint8_t b : buf) zero = zero && b == 0;
    if (zero) continue;
    if (std::memcmp(buf.data(), ec::kOrderBytes, buf.size()) >= 0) continue;
    return detail::Access::scalar_from_be(buf);
  }
}

}  // namespace nicbe
