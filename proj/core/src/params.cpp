#include "nicbe/params.hpp"

#include <algorithm>
#include <cstdio>

#include "nicbe/codec.hpp"

namespace nicbe {

namespace {

// Hard ceilings so a hostile length field cannot drive allocation.
constexpr uint32_t kMaxGroupSize = 4096;
constexpr uint32_t kMaxTuples = 4096;

std::string cell_name(uint32_t gamma, uint32_t i, uint32_t j) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "tuple %u cell (%u,%u)", gamma, i, j);
  return buf;
}

}  // namespace

const PlaceholderTuple& SystemParams::tuple(uint32_t gamma) const {
  if (gamma < 1 || gamma > tuples.size())
    throw Error(ErrorCode::validation, "placeholder tuple index out of range");
  return tuples[gamma - 1];
}

SystemParams globe_setup(uint32_t security_bits, uint32_t n, uint32_t l_s,
                         uint32_t n_pop, RandomSource& rng) {
  if (security_bits != 128)
    throw Error(ErrorCode::validation, "unsupported security level (only 128 bits)");
  if (n < 2) throw Error(ErrorCode::validation, "max group size must be at least 2");
  if (n > kMaxGroupSize) throw Error(ErrorCode::validation, "max group size too large");
  if (l_s < 1) throw Error(ErrorCode::validation, "tuple count must be at least 1");
  if (l_s > kMaxTuples) throw Error(ErrorCode::validation, "tuple count too large");
  if (n_pop < n)
    throw Error(ErrorCode::validation, "population bound must be at least the group size");

  SystemParams p;
  p.n = n;
  p.l_s = l_s;
  p.n_pop = n_pop;
  p.order = group_order_bytes();
  p.g = G1Elem::generator();
  p.ghat = G2Elem::generator();
  p.u = p.g.pow(random_scalar(rng));

  p.h.reserve(n);
  for (uint32_t i = 0; i < n; ++i) p.h.push_back(p.g.pow(random_scalar(rng)));

  p.tuples.reserve(l_s);
  for (uint32_t gamma = 1; gamma <= l_s; ++gamma) {
    PlaceholderTuple t;
    t.gamma = gamma;
    t.a.reserve(n);
    t.b.reserve(n);
    t.k.assign(n, std::vector<std::optional<G1Elem>>(n));
    for (uint32_t i = 0; i < n; ++i) {
      // alpha/beta live only in this scope; only their group images survive.
      Scalar alpha = random_scalar(rng);
      Scalar beta = random_scalar(rng);
      t.a.push_back(p.ghat.pow(alpha));
      t.b.push_back(p.ghat.pow(beta));
      G1Elem u_beta = p.u.pow(beta);  // shared across this row's cells
      for (uint32_t j = 0; j < n; ++j) {
        if (j == i) continue;
        t.k[i][j] = p.h[j].pow(alpha) * u_beta;
      }
    }
    p.tuples.push_back(std::move(t));
  }
  return p;
}

ValidationReport validate_params(const SystemParams& p) {
  ValidationReport rep;
  auto issue = [&](const std::string& s) { rep.issues.push_back(s); };

  if (p.n < 2) issue("max group size below 2");
  if (p.order != group_order_bytes()) issue("group order mismatches the backend curve");
  if (p.g.is_identity()) issue("generator g is the identity");
  if (p.ghat.is_identity()) issue("generator ghat is the identity");
  if (p.u.is_identity()) issue("base u is the identity");
  if (p.h.size() != p.n) {
    issue("H length violation: expected " + std::to_string(p.n) + " elements, found " +
          std::to_string(p.h.size()));
  }
  for (size_t i = 0; i < p.h.size(); ++i)
    if (p.h[i].is_identity()) issue("h[" + std::to_string(i + 1) + "] is the identity");
  if (p.tuples.size() != p.l_s) {
    issue("tuple count violation: expected " + std::to_string(p.l_s) + ", found " +
          std::to_string(p.tuples.size()));
  }

  G1Elem u_inv = p.u.inverse();
  for (size_t ti = 0; ti < p.tuples.size(); ++ti) {
    const PlaceholderTuple& t = p.tuples[ti];
    std::string tn = "tuple " + std::to_string(ti + 1);
    if (t.gamma != ti + 1) issue(tn + ": gamma index out of order");
    if (t.a.size() != p.n || t.b.size() != p.n) {
      issue(tn + ": A/B length violation");
      continue;
    }
    if (t.k.size() != p.n) {
      issue(tn + ": K row count violation");
      continue;
    }
    bool shape_ok = true;
    for (uint32_t i = 0; i < p.n; ++i) {
      if (t.k[i].size() != p.n) {
        issue(tn + ": K column count violation in row " + std::to_string(i + 1));
        shape_ok = false;
        continue;
      }
      for (uint32_t j = 0; j < p.n; ++j) {
        bool present = t.k[i][j].has_value();
        if (i == j && present) {
          issue(cell_name(t.gamma, i + 1, j + 1) + ": diagonal entry must be absent");
          shape_ok = false;
        }
        if (i != j && !present) {
          issue(cell_name(t.gamma, i + 1, j + 1) + ": entry missing");
          shape_ok = false;
        }
      }
    }
    if (!shape_ok || p.h.size() != p.n) continue;
    for (uint32_t i = 0; i < p.n; ++i) {
      for (uint32_t j = 0; j < p.n; ++j) {
        if (i == j) continue;
        // e(K[i][j], ghat) == e(h_j, A[i]) * e(u, B[i]), checked fused:
        // e(K, ghat) * e(h_j^-1, A[i]) * e(u^-1, B[i]) == 1.
        std::array<std::pair<G1Elem, G2Elem>, 3> legs{{
            {*t.k[i][j], p.ghat},
            {p.h[j].inverse(), t.a[i]},
            {u_inv, t.b[i]},
        }};
        if (!pairing_product(legs).is_identity())
          issue(cell_name(t.gamma, i + 1, j + 1) + ": pairing consistency check failed");
      }
    }
  }
  return rep;
}

std::vector<uint8_t> params_to_bytes(const SystemParams& p) {
  ByteWriter w;
  w.envelope(FileKind::params);
  w.u32(p.n);
  w.u32(p.l_s);
  w.u32(p.n_pop);
  w.var_bytes(std::span<const uint8_t>(p.order.data(), p.order.size()));
  w.bytes(p.g.to_bytes());
  w.bytes(p.ghat.to_bytes());
  w.bytes(p.u.to_bytes());
  w.u32(uint32_t(p.h.size()));
  for (const auto& h : p.h) w.bytes(h.to_bytes());
  w.u32(uint32_t(p.tuples.size()));
  for (const auto& t : p.tuples) {
    w.u32(t.gamma);
    w.u32(uint32_t(t.a.size()));
    for (const auto& e : t.a) w.bytes(e.to_bytes());
    w.u32(uint32_t(t.b.size()));
    for (const auto& e : t.b) w.bytes(e.to_bytes());
    w.u32(uint32_t(p.n) * (uint32_t(p.n) - 1));
    for (uint32_t i = 0; i < p.n; ++i)
      for (uint32_t j = 0; j < p.n; ++j) {
        if (i == j) continue;
        if (!t.k[i][j])
          throw Error(ErrorCode::validation, "params: tuple K entry missing, cannot serialize");
        w.bytes(t.k[i][j]->to_bytes());
      }
  }
  return w.take();
}

SystemParams params_from_bytes(std::span<const uint8_t> in) {
  ByteReader r(in);
  r.envelope_expect(FileKind::params);
  SystemParams p;
  p.n = r.u32();
  p.l_s = r.u32();
  p.n_pop = r.u32();
  if (p.n < 2 || p.n > kMaxGroupSize)
    throw Error(ErrorCode::validation, "params: group size out of range");
  if (p.l_s < 1 || p.l_s > kMaxTuples)
    throw Error(ErrorCode::validation, "params: tuple count out of range");
  auto order = r.var_bytes(64);
  if (order.size() != p.order.size() ||
      !std::equal(order.begin(), order.end(), group_order_bytes().begin()))
    throw Error(ErrorCode::validation, "params: group order mismatches the backend curve");
  std::copy(order.begin(), order.end(), p.order.begin());
  p.g = G1Elem::from_bytes(r.bytes(G1Elem::kBytes));
  p.ghat = G2Elem::from_bytes(r.bytes(G2Elem::kBytes));
  p.u = G1Elem::from_bytes(r.bytes(G1Elem::kBytes));
  uint32_t hn = r.u32();
  if (hn != p.n) throw Error(ErrorCode::validation, "params: H length mismatches n");
  p.h.reserve(hn);
  for (uint32_t i = 0; i < hn; ++i) p.h.push_back(G1Elem::from_bytes(r.bytes(G1Elem::kBytes)));
  uint32_t tn = r.u32();
  if (tn != p.l_s)
    throw Error(ErrorCode::validation, "params: tuple count mismatches L_s");
  p.tuples.reserve(tn);
  for (uint32_t ti = 0; ti < tn; ++ti) {
    PlaceholderTuple t;
    t.gamma = r.u32();
    if (t.gamma != ti + 1)
      throw Error(ErrorCode::validation, "params: tuple gamma index out of order");
    uint32_t an = r.u32();
    if (an != p.n) throw Error(ErrorCode::validation, "params: tuple A length mismatches n");
    t.a.reserve(an);
    for (uint32_t i = 0; i < an; ++i) t.a.push_back(G2Elem::from_bytes(r.bytes(G2Elem::kBytes)));
    uint32_t bn = r.u32();
    if (bn != p.n) throw Error(ErrorCode::validation, "params: tuple B length mismatches n");
    t.b.reserve(bn);
    for (uint32_t i = 0; i < bn; ++i) t.b.push_back(G2Elem::from_bytes(r.bytes(G2Elem::kBytes)));
    uint32_t kn = r.u32();
    if (kn != p.n * (p.n - 1))
      throw Error(ErrorCode::validation, "params: tuple K cell count violation");
    t.k.assign(p.n, std::vector<std::optional<G1Elem>>(p.n));
    for (uint32_t i = 0; i < p.n; ++i)
      for (uint32_t j = 0; j < p.n; ++j)
        if (i != j) t.k[i][j] = G1Elem::from_bytes(r.bytes(G1Elem::kBytes));
    p.tuples.push_back(std::move(t));
  }
  r.expect_end();
  return p;
}

}  // namespace nicbe
