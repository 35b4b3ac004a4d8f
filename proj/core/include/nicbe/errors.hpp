#pragma once

#include <stdexcept>
#include <string>

namespace nicbe {

// Error classes double as CLI exit codes; keep values stable.
enum class ErrorCode : int {
  ok = 0,
  usage = 2,           // bad command-line arguments
  io = 3,              // file missing/unreadable/unwritable
  format = 4,          // malformed bytes: bad magic/version/length/point encoding
  validation = 5,      // well-formed but violates a structural invariant
  consistency = 6,     // a pairing consistency check failed (protocol abort)
  not_recipient = 7,   // decrypt attempted by a slot outside the recipient set
  stale_round = 8,     // state/header round mismatch
  slot_occupied = 9,   // join into an occupied slot
  group_full = 10,     // join when all n slots are taken
  slot_empty = 11,     // leave/derive referencing an unoccupied slot
  collision = 12,      // duplicate registration for a (tuple, slot)
  auth_failed = 13,    // AEAD tag or signature verification failure
  rng_failure = 14,    // randomness source failed
  lock_failed = 15,    // could not acquire the group file lock
  internal = 16,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nicbe
