#pragma once

// Library-internal bridge between the public value types and the EC backend.

#include "ec/pairing.hpp"
#include "nicbe/algebra.hpp"

namespace nicbe::detail {

struct Access {
  static ec::G1Affine g1(const G1Elem& e);
  static G1Elem g1(const ec::G1Affine& a);
  static ec::G2Affine g2(const G2Elem& e);
  static G2Elem g2(const ec::G2Affine& a);
  static ec::Fp12 gt(const GTElem& e);
  static GTElem gt(const ec::Fp12& f);
  static const std::array<uint8_t, 32>& scalar_be(const Scalar& s) { return s.be_; }
  static Scalar scalar_from_be(const std::array<uint8_t, 32>& be);
};

OpTallyDetail& tally();

}  // namespace nicbe::detail
