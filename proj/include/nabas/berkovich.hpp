#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nabas/identity.hpp"

namespace nabas {

// A point of the Berkovich line in the subtree spanned by P^1(k): a type I
// point (center, or infinity when absent), or the closed ball of center c
// and diameter q^{-s}.
class BerkPoint {
 public:
  static BerkPoint type_i(const FieldElement& z);
  static BerkPoint infinity(const FieldModel& m);
  static BerkPoint ball(const FieldElement& center, Q64 s);
  static BerkPoint gauss(const FieldModel& m);

  bool is_type_i() const { return type_i_; }
  bool is_infinity() const { return type_i_ && !center_; }
  bool is_type_ii() const { return !type_i_ && s_.denominator() == 1; }
  bool is_type_iii() const { return !type_i_ && s_.denominator() != 1; }
  const FieldModel& model() const { return model_; }
  // Finite center; throws for infinity.
  const FieldElement& center() const;
  // Diameter exponent of a ball.
  Q64 exponent() const { return s_; }

  std::string to_string() const;

 private:
  FieldModel model_;
  bool type_i_ = true;
  std::optional<FieldElement> center_;
  Q64 s_{0};
};

bool same_point(const BerkPoint& x, const BerkPoint& y);

struct Distance {
  bool infinite = false;
  Q64 value{0};
  bool operator==(const Distance&) const = default;
};

// Least upper bound in the order by inclusion of balls; infinity is the top.
BerkPoint join(const BerkPoint& x, const BerkPoint& y);
Distance dist(const BerkPoint& x, const BerkPoint& y);
// Branch point of three distinct type I points.
BerkPoint median(const BerkPoint& u, const BerkPoint& w, const BerkPoint& z);

struct TriplePoint {
  BerkPoint u, w, z;
  BerkPoint median() const { return nabas::median(u, w, z); }
};

// Three type I points whose median is the given type II point.
TriplePoint triple_of(const BerkPoint& x);

BerkPoint mobius_act(const ProjMatrix& g, const BerkPoint& x);

BerkPoint project_to_axis(const FieldElement& alpha);
// The axis point Ball(0, s).
BerkPoint axis_point(const FieldModel& m, Q64 s);

struct AxisComparison {
  Distance distance;
  long cross_ratio_valuation;
};
AxisComparison axis_distance_vs_crossratio(const FieldElement& a, const FieldElement& b);

// Oriented segment of the axis [0, infinity] between two of its points.
struct AxisInterval {
  BerkPoint from, to;
  // Length, positive when from -> to runs from 0 towards infinity.
  Q64 signed_measure() const;
};

// Displacement of the axis under alpha_j in the normalized frame.
long geometric_length(const Representation& rep, int j);
std::vector<TermRecord> geometric_terms(const Representation& rep, int max_len, bool keep_zero);
IdentityReport geometric_verify(const Representation& rep);

}  // namespace nabas
