#pragma once

// Independent recomputation of the protocol's derived values, written as
// literal products over the published formulas using only the primitive
// group operations (operator*, pow, pairing). Nothing here calls the
// library's derivation, combination, or product helpers, so agreement
// between these oracles and the library is a real cross-check.

#include <cstdint>
#include <map>
#include <vector>

#include "nicbe/algebra.hpp"
#include "nicbe/group.hpp"
#include "nicbe/params.hpp"

namespace nicbe::oracle {

struct GroupKey {
  G2Elem y1;
  G2Elem y2;
};

// Y1 = prod_{j occupied} A_j * prod_{j unoccupied} A_j^(gamma); Y2 likewise
// with B values. Slot j is occupied iff members holds it.
GroupKey group_key(const SystemParams& params, uint32_t gamma,
                   const std::map<uint32_t, SlotAssignment>& members);

// dk[slot] = prod over j != slot of K_{j,slot} (the member's own K entry
// for occupied j, the tuple's cell for unoccupied j).
G1Elem dk_hat(const SystemParams& params, uint32_t gamma,
              const std::map<uint32_t, SlotAssignment>& members, uint32_t slot);

// Sender-side session key recomputed from scratch for a known rho:
// k = e(u, Y2 * prod_{i occupied, excluded} B_i^(gamma))^rho.
GTElem session_key(const SystemParams& params, uint32_t gamma,
                   const std::map<uint32_t, SlotAssignment>& members,
                   const std::vector<uint32_t>& recipients, const Scalar& rho);

}  // namespace nicbe::oracle
