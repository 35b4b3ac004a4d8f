#pragma once

// Instrumented benchmark harness: wall-clock timing plus exact operation
// counts per protocol algorithm across group sizes. Setup work (parameter
// generation, key issuance, base group state) happens outside every timed
// region; only the algorithm under measurement is on the clock.

#include <cstdint>
#include <string>
#include <vector>

namespace nicbe {

struct BenchConfig {
  std::vector<uint32_t> sizes;  // group sizes n, ascending
  double occupancy = 0.8;       // fraction of slots occupied (t = round(n * occupancy))
  uint32_t trials = 10;         // timed trials per cell, after one warmup
  uint32_t l_s = 1;             // placeholder tuples per parameter set
  uint64_t seed = 42;           // deterministic inputs; timings stay real
};

struct BenchRow {
  std::string algorithm;
  uint32_t n = 0;
  uint32_t t = 0;       // occupied members
  uint32_t u_size = 0;  // recipient-set size (broadcast rows; 0 otherwise)
  uint32_t trials = 0;
  double mean_us = 0;
  double stddev_us = 0;
  // Mean operation counts per trial (exact integers in practice; the
  // recipient draw varies membership, not set size, so counts are stable).
  double pairings = 0;
  double g1_exponentiations = 0;
  double g1_multiplications = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string to_csv() const;
  // Least-squares slope of log10(value) against log10(n) over this
  // algorithm's rows; the complexity-shape assertions consume it.
  double loglog_slope(const std::string& algorithm, const char* field) const;
  double time_ratio_max_min(const std::string& algorithm) const;
};

// Benchmarked algorithms, one row per (algorithm, n):
//   KeyRegis  — one key issuance
//   KeyDerive — one member's full derivation including the acceptance check
//   Join      — the group transition plus the joiner's own derivation
//   Leave     — the group transition plus one remaining member's replay+check
//   Encrypt   — header and session-key computation
//   Decrypt   — session-key recovery by one recipient
BenchReport run_bench(const BenchConfig& cfg);

}  // namespace nicbe
