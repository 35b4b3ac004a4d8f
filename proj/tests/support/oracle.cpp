#include "oracle.hpp"

#include <algorithm>

namespace nicbe::oracle {

GroupKey group_key(const SystemParams& params, uint32_t gamma,
                   const std::map<uint32_t, SlotAssignment>& members) {
  const PlaceholderTuple& t = params.tuple(gamma);
  G2Elem y1 = G2Elem::identity();
  G2Elem y2 = G2Elem::identity();
  for (uint32_t j = 1; j <= params.n; ++j) {
    auto it = members.find(j);
    if (it != members.end()) {
      y1 = y1 * it->second.pk.a;
      y2 = y2 * it->second.pk.b;
    } else {
      y1 = y1 * t.a[j - 1];
      y2 = y2 * t.b[j - 1];
    }
  }
  return {y1, y2};
}

G1Elem dk_hat(const SystemParams& params, uint32_t gamma,
              const std::map<uint32_t, SlotAssignment>& members, uint32_t slot) {
  const PlaceholderTuple& t = params.tuple(gamma);
  G1Elem acc = G1Elem::identity();
  for (uint32_t j = 1; j <= params.n; ++j) {
    if (j == slot) continue;
    auto it = members.find(j);
    if (it != members.end())
      acc = acc * it->second.pk.k.at(slot);
    else
      acc = acc * t.k[j - 1][slot - 1].value();
  }
  return acc;
}

GTElem session_key(const SystemParams& params, uint32_t gamma,
                   const std::map<uint32_t, SlotAssignment>& members,
                   const std::vector<uint32_t>& recipients, const Scalar& rho) {
  // The explicit-product form, term by term over the three index sets:
  //   k = e(u^rho, prod_{i in S} B_i * prod_{i in Ubar} B_i^(gamma)
  //                * prod_{i in Sbar} B_i^(gamma))
  const PlaceholderTuple& t = params.tuple(gamma);
  G2Elem prod = G2Elem::identity();
  for (uint32_t j = 1; j <= params.n; ++j) {
    auto it = members.find(j);
    if (it != members.end()) {
      prod = prod * it->second.pk.b;  // j in S
      bool in_u = std::find(recipients.begin(), recipients.end(), j) != recipients.end();
      if (!in_u) prod = prod * t.b[j - 1];  // j in Ubar: placeholder on top
    } else {
      prod = prod * t.b[j - 1];  // j in Sbar
    }
  }
  return pairing(params.u.pow(rho), prod);
}

}  // namespace nicbe::oracle
