#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nabas/valued_field.hpp"

namespace nabas {

using Vec = std::vector<FieldElement>;

// Invertible d x d matrix with exact entries, considered up to scalars.
class ProjMatrix {
 public:
  ProjMatrix() = default;
  ProjMatrix(FieldModel m, int d, std::vector<FieldElement> entries);
  static ProjMatrix identity(const FieldModel& m, int d);
  static ProjMatrix from_integers(const FieldModel& m, int d, const std::vector<long>& entries);

  const FieldModel& model() const { return model_; }
  int dim() const { return d_; }
  const FieldElement& at(int i, int j) const { return e_[static_cast<std::size_t>(i * d_ + j)]; }
  const std::vector<FieldElement>& entries() const { return e_; }

  ProjMatrix operator*(const ProjMatrix& o) const;
  // Adjugate: an inverse up to the scalar det.
  ProjMatrix adjugate() const;
  ProjMatrix transpose() const;
  FieldElement determinant() const;
  FieldElement trace() const;
  bool is_scalar() const;
  // The scalar multiple whose entries are integral with a unit among them.
  ProjMatrix integral_normalized() const;
  bool projectively_equal(const ProjMatrix& o) const;
  Vec apply(const Vec& v) const;
  // Row vector times matrix.
  Vec apply_left(const Vec& row) const;

  std::string to_string() const;

 private:
  ProjMatrix(FieldModel m, int d, std::vector<FieldElement> entries, bool checked);

  FieldModel model_;
  int d_ = 0;
  std::vector<FieldElement> e_;
};

// Homogeneous coordinates of a line in k^d.
struct ProjPoint {
  Vec coords;
};

// Homogeneous coordinates of a linear functional on k^d.
struct DualPoint {
  Vec coords;
};

FieldElement pairing(const DualPoint& phi, const ProjPoint& omega);
ProjPoint apply(const ProjMatrix& g, const ProjPoint& x);
// g acting on functionals: phi -> phi o g^{-1}, up to scalars.
DualPoint apply_dual(const ProjMatrix& g, const DualPoint& phi);
bool projectively_equal(const ProjPoint& a, const ProjPoint& b);

// Points of P^1: [z : 1] and [1 : 0].
ProjPoint p1_point(const FieldElement& z);
ProjPoint p1_infinity(const FieldModel& m);
// The functional on k^2 vanishing exactly at x.
DualPoint p1_dual(const ProjPoint& x);

enum class Pgl2Class { Hyperbolic, Parabolic, StrictlyElliptic, Identity };
std::string_view pgl2_class_name(Pgl2Class c);
Pgl2Class classify_pgl2(const ProjMatrix& m);

// Coefficients c_0..c_d of det(lambda I - M), computed without division.
Vec characteristic_polynomial(const ProjMatrix& m);

struct EigenData {
  ProjPoint attracting_point;
  ProjPoint repelling_point;
  // Vanishes on every eigenline except the repelling one.
  DualPoint attracting_hyperplane;
  // Vanishes on every eigenline except the attracting one.
  DualPoint repelling_hyperplane;
  long top_valuation = 0;
  long bottom_valuation = 0;
  FieldElement top_eigenvalue;
  FieldElement bottom_eigenvalue;
};

EigenData eigen_data(const ProjMatrix& m);

FieldElement cross_ratio(const DualPoint& phi, const DualPoint& phi2, const ProjPoint& omega, const ProjPoint& omega2);
// -v(C), the base-q logarithm of |C|.
long cross_ratio_valuation(const DualPoint& phi, const DualPoint& phi2, const ProjPoint& omega, const ProjPoint& omega2);

// Spread of the eigenvalue valuations; an integer whenever the extreme
// Newton segments have length 1.
Q64 translation_length(const ProjMatrix& m);
long period(const ProjMatrix& m, const ProjPoint& omega);

struct CartanValuations {
  // Invariant-factor valuations after scaling to minimal entry valuation 0.
  std::vector<long> vals;
  // The same without scaling.
  std::vector<long> raw;
  long gap() const { return vals.size() < 2 ? 0 : vals[1] - vals[0]; }
};

CartanValuations cartan_valuations(const ProjMatrix& m);

struct GapRow {
  int length;
  long min_gap;
};

// Minimum of v2 - v1 over reduced words of each length in the free group on
// the given images (letter 2i is image i, letter 2i+1 its inverse).
std::vector<GapRow> anosov_gap_report(const std::vector<ProjMatrix>& generator_images, int max_len);

ProjMatrix veronese(const ProjMatrix& m, int d_target);
ProjPoint veronese_point(const ProjPoint& x, int d_target);
DualPoint veronese_dual(const DualPoint& phi, int d_target);

}  // namespace nabas
