#include "nicbe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "nicbe/broadcast.hpp"
#include "nicbe/group.hpp"
#include "nicbe/params.hpp"
#include "nicbe/registry.hpp"

namespace nicbe {

namespace {

struct CellStats {
  double mean_us = 0, stddev_us = 0;
  double pairings = 0, exps = 0, muls = 0;
};

// Runs one warmup call, then `trials` timed calls, tallying ops per call.
CellStats measure(uint32_t trials, const std::function<void()>& fn) {
  fn();  // warmup: caches, lazy statics
  std::vector<double> us;
  us.reserve(trials);
  double pairings = 0, exps = 0, muls = 0;
  for (uint32_t i = 0; i < trials; ++i) {
    op_tally_reset();
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    OpCounters c = op_tally_counters();
    pairings += double(c.pairings);
    exps += double(c.g1_exponentiations);
    muls += double(c.g1_multiplications);
    us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  CellStats s;
  for (double v : us) s.mean_us += v;
  s.mean_us /= trials;
  if (trials > 1) {
    double acc = 0;
    for (double v : us) acc += (v - s.mean_us) * (v - s.mean_us);
    s.stddev_us = std::sqrt(acc / (trials - 1));
  }
  s.pairings = pairings / trials;
  s.exps = exps / trials;
  s.muls = muls / trials;
  return s;
}

// Uniform draw of `count` distinct values from `pool`.
std::vector<uint32_t> sample(std::vector<uint32_t> pool, uint32_t count, RandomSource& rng) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < count; ++i) {
    uint8_t b[4];
    rng.fill(b, sizeof(b));
    uint32_t r = (uint32_t(b[0]) << 24 | uint32_t(b[1]) << 16 | uint32_t(b[2]) << 8 | b[3]) %
                 uint32_t(pool.size());
    out.push_back(pool[r]);
    pool.erase(pool.begin() + r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.sizes.empty() || !std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()))
    throw Error(ErrorCode::validation, "benchmark sizes must be ascending and nonempty");
  if (cfg.trials < 1) throw Error(ErrorCode::validation, "at least one trial per cell");

  BenchReport report;
  for (uint32_t n : cfg.sizes) {
    DeterministicRandom rng = DeterministicRandom::from_u64(cfg.seed ^ (uint64_t(n) << 32));
    uint32_t t = std::max<uint32_t>(1, uint32_t(std::lround(double(n) * cfg.occupancy)));
    if (t >= n) t = n - 1;  // keep one slot free so Join is measurable
    uint32_t u_size = std::max<uint32_t>(1, t / 2);

    // ---- untimed setup: params, keys, base group state --------------------
    SystemParams params = globe_setup(128, n, cfg.l_s, 4 * n, rng);
    std::vector<std::pair<MemberPublicKey, MemberSecretKey>> keys;
    keys.reserve(t + 1);
    for (uint32_t slot = 1; slot <= t + 1; ++slot)
      keys.push_back(key_regis(params, 1, slot, slot, rng));

    std::map<uint32_t, SlotAssignment> members;
    for (uint32_t slot = 1; slot <= t; ++slot)
      members.emplace(slot, SlotAssignment{slot, keys[slot - 1].first});

    GroupId id{};
    rng.fill(id.data(), id.size());
    auto [g0, m0] = key_derive(params, id, 1, 1, members, 1, keys[0].second);
    std::map<uint32_t, MemberInfo> member_infos;
    member_infos.emplace(1, m0);
    for (uint32_t slot = 2; slot <= t; ++slot)
      member_infos.emplace(slot,
                           derive_member_info(params, g0, members, slot, keys[slot - 1].second));

    std::vector<uint32_t> occupied = g0.occupied_slots();

    auto push_row = [&](const std::string& alg, uint32_t usz, const CellStats& s) {
      BenchRow row;
      row.algorithm = alg;
      row.n = n;
      row.t = t;
      row.u_size = usz;
      row.trials = cfg.trials;
      row.mean_us = s.mean_us;
      row.stddev_us = s.stddev_us;
      row.pairings = s.pairings;
      row.g1_exponentiations = s.exps;
      row.g1_multiplications = s.muls;
      report.rows.push_back(row);
    };

    // ---- KeyRegis: one fresh issuance -------------------------------------
    push_row("KeyRegis", 0, measure(cfg.trials, [&] {
               key_regis(params, 1, t + 2, ((t + 1) % n) + 1, rng);
             }));

    // ---- KeyDerive: one member's derivation (the Θ(n²) aggregation; the
    // fixed-cost acceptance pairing check is a separate concern) ------------
    push_row("KeyDerive", 0, measure(cfg.trials, [&] {
               key_derive_unverified(params, id, 1, 1, members, 1, keys[0].second);
             }));

    // ---- Join: transition + the joiner's own derivation --------------------
    {
      const auto& [jpk, jsk] = keys[t];  // slot t+1, registered but not yet in
      std::map<uint32_t, SlotAssignment> grown = members;
      grown.emplace(t + 1, SlotAssignment{t + 1, jpk});
      push_row("Join", 0, measure(cfg.trials, [&] {
                 auto [g1, rec] = join(params, g0, jpk, t + 1);
                 derive_member_info(params, g1, grown, t + 1, jsk);
               }));
    }

    // ---- Leave: transition + one remaining member's replay and check -------
    if (t >= 2) {
      push_row("Leave", 0, measure(cfg.trials, [&] {
                 auto [g1, rec] = leave(params, g0, keys[t - 1].first);  // slot t departs
                 refresh_member(params, g1, member_infos.at(1));
               }));
    }

    // ---- Encrypt / Decrypt: random recipient set per trial ------------------
    {
      // Recipient draws stay off the clock; the KEM itself is what's timed.
      std::vector<std::vector<uint32_t>> draws;
      for (uint32_t i = 0; i <= cfg.trials; ++i) draws.push_back(sample(occupied, u_size, rng));
      size_t pick = 0;
      push_row("Encrypt", u_size, measure(cfg.trials, [&] {
                 encrypt(params, g0, draws[pick++ % draws.size()], rng);
               }));
    }

    {
      // Recipient draw and header construction stay off the clock.
      std::vector<uint32_t> u = sample(occupied, u_size, rng);
      auto [header, key] = encrypt(params, g0, u, rng);
      (void)key;
      size_t pick = 0;
      push_row("Decrypt", u_size, measure(cfg.trials, [&] {
                 uint32_t slot = u[pick++ % u.size()];
                 decrypt(params, g0, header, slot, member_infos.at(slot));
               }));
    }
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out =
      "algorithm,n,t,u_size,trials,mean_us,stddev_us,pairings,g1_exponentiations,g1_"
      "multiplications\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%u,%u,%u,%u,%.3f,%.3f,%.2f,%.2f,%.2f\n",
                  r.algorithm.c_str(), r.n, r.t, r.u_size, r.trials, r.mean_us, r.stddev_us,
                  r.pairings, r.g1_exponentiations, r.g1_multiplications);
    out += line;
  }
  return out;
}

double BenchReport::loglog_slope(const std::string& algorithm, const char* field) const {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.algorithm != algorithm) continue;
    double v = 0;
    std::string f = field;
    if (f == "mean_us") v = r.mean_us;
    else if (f == "pairings") v = r.pairings;
    else if (f == "g1_exponentiations") v = r.g1_exponentiations;
    else if (f == "g1_multiplications") v = r.g1_multiplications;
    else throw Error(ErrorCode::validation, "unknown benchmark field");
    if (v <= 0) throw Error(ErrorCode::validation, "log-log fit needs positive values");
    pts.emplace_back(std::log10(double(r.n)), std::log10(v));
  }
  if (pts.size() < 2) throw Error(ErrorCode::validation, "log-log fit needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = double(pts.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double BenchReport::time_ratio_max_min(const std::string& algorithm) const {
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& r : rows) {
    if (r.algorithm != algorithm) continue;
    if (first) {
      lo = hi = r.mean_us;
      first = false;
    } else {
      lo = std::min(lo, r.mean_us);
      hi = std::max(hi, r.mean_us);
    }
  }
  if (first) throw Error(ErrorCode::validation, "no rows for that algorithm");
  if (lo <= 0) throw Error(ErrorCode::validation, "nonpositive timing row");
  return hi / lo;
}

}  // namespace nicbe
