#pragma once

#include <gmpxx.h>

#include <boost/rational.hpp>
#include <compare>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nabas/error.hpp"
#include "nabas/fp_poly.hpp"

namespace nabas {

using Q64 = boost::rational<long long>;

std::string q64_to_string(const Q64& x);

enum class FieldKind { QP, Laurent };

// Q with the p-adic valuation, or F_p(T) with the T-adic valuation.
class FieldModel {
 public:
  FieldModel() = default;
  static FieldModel qp(long p);
  static FieldModel laurent(long p);

  FieldKind kind() const { return kind_; }
  long p() const { return p_; }
  long residue_cardinality() const { return p_; }
  bool operator==(const FieldModel&) const = default;
  std::string to_string() const;

 private:
  FieldModel(FieldKind kind, long p) : kind_(kind), p_(p) {}
  FieldKind kind_ = FieldKind::QP;
  long p_ = 2;
};

class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  long value() const;
  auto operator<=>(const Valuation&) const = default;
  Valuation operator+(const Valuation& o) const;
  std::string to_string() const;

 private:
  Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
  bool infinite_ = false;
  long v_ = 0;
};

void set_precision_cap(long digits);
long precision_cap();

class PrecisionCapScope {
 public:
  explicit PrecisionCapScope(long digits);
  ~PrecisionCapScope();
  PrecisionCapScope(const PrecisionCapScope&) = delete;
  PrecisionCapScope& operator=(const PrecisionCapScope&) = delete;

 private:
  long saved_;
};

// Element of F_p(T) in lowest terms with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(FpPoly num, FpPoly den);
  static RatFunc constant(std::uint32_t p, long long c);
  static RatFunc from_poly(FpPoly num);

  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  std::uint32_t p() const { return num_.p(); }
  bool is_zero() const { return num_.is_zero(); }
  long valuation() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  FpPoly num_, den_;
};

inline constexpr long kUnknownPrecision = -(1L << 40);

// Capped absolute precision approximation pi^val * unit + O(pi^absprec).
// When val >= absprec the value is indistinguishable from zero.
class Local {
 public:
  Local() = default;
  static Local zero(const FieldModel& m, long absprec);
  static Local one(const FieldModel& m, long absprec);
  static Local from_rational(const FieldModel& m, const mpq_class& x, long absprec);
  static Local from_ratfunc(const FieldModel& m, const RatFunc& x, long absprec);
  static Local from_integer_unit(const FieldModel& m, long val, long absprec, const mpz_class& unit);
  static Local from_poly_unit(const FieldModel& m, long val, long absprec, const FpPoly& unit);

  const FieldModel& model() const { return model_; }
  bool is_zero() const { return val_ >= absprec_; }
  long valuation() const { return val_; }
  long absprec() const { return absprec_; }
  long relprec() const { return absprec_ - val_; }
  const mpz_class& unit_z() const { return std::get<mpz_class>(unit_); }
  const FpPoly& unit_poly() const { return std::get<FpPoly>(unit_); }

  Local operator-() const;
  Local operator+(const Local& o) const;
  Local operator-(const Local& o) const;
  Local operator*(const Local& o) const;
  Local operator/(const Local& o) const;
  Local inverse() const;
  Local shifted(long k) const;

  Local reduced(long absprec) const;
  // Declares the missing digits to be zero, raising absprec.
  Local extended(long absprec) const;
  bool congruent(const Local& o, long n) const;

  // Residue of a unit mod pi as an integer in [0, p).
  std::uint32_t unit_residue() const;

  // The represented truncation as an exact element of Q or F_p(T).
  mpq_class to_rational() const;
  RatFunc to_ratfunc() const;

  std::string to_string() const;

 private:
  static Local normalized(const FieldModel& m, long v, long absprec, mpz_class s);
  static Local normalized(const FieldModel& m, long v, long absprec, FpPoly s);

  FieldModel model_;
  long val_ = 0;
  long absprec_ = 0;
  std::variant<mpz_class, FpPoly> unit_;
};

// p^e from a per-thread cache.
const mpz_class& prime_power(long p, long e);

class Refinable {
 public:
  using Generator = std::function<Local(long)>;

  Refinable(FieldModel model, Generator gen, long valuation_lower_bound);

  // Approximation with absprec >= n (reduced to exactly n). Coherent across calls.
  Local approx(long n) const;
  long valuation_lower_bound() const { return lower_; }
  const FieldModel& model() const { return model_; }

 private:
  FieldModel model_;
  Generator gen_;
  long lower_;
  mutable std::mutex mu_;
  mutable std::optional<Local> memo_;
};

class FieldElement {
 public:
  FieldElement() = default;
  static FieldElement integer(const FieldModel& m, long long n);
  static FieldElement rational(const FieldModel& m, mpq_class q);
  static FieldElement ratfunc(const FieldModel& m, RatFunc f);
  static FieldElement refinable(const FieldModel& m, Refinable::Generator gen, long valuation_lower_bound);
  static FieldElement uniformizer(const FieldModel& m);
  static FieldElement parse(const FieldModel& m, std::string_view text);

  const FieldModel& model() const { return model_; }
  bool is_exact() const { return !std::holds_alternative<std::shared_ptr<const Refinable>>(repr_); }
  bool is_exact_zero() const;
  const mpq_class* as_rational() const { return std::get_if<mpq_class>(&repr_); }
  const RatFunc* as_ratfunc() const { return std::get_if<RatFunc>(&repr_); }

  Valuation valuation() const;
  long valuation_lower_bound() const;
  Local approx(long n) const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;

  // Equality of exact elements; throws for refinable operands.
  bool exact_equal(const FieldElement& o) const;

  std::string to_string() const;

 private:
  FieldModel model_;
  std::variant<mpq_class, RatFunc, std::shared_ptr<const Refinable>> repr_{mpq_class(0)};
};

enum class ArithOp { Add, Mul, Neg, Inv };
FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement* y = nullptr);
Valuation valuation(const FieldElement& x);

// Exact element of Q or F_p(T) whose expansion agrees with the given
// approximation, found by rational reconstruction; nullopt if none is small enough.
std::optional<FieldElement> reconstruct_exact(const Local& x);

struct NewtonSegment {
  Q64 slope;
  long length;
  long start;
};

struct RootValuation {
  Q64 valuation;
  long multiplicity;
  bool operator==(const RootValuation&) const = default;
};

struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
  std::vector<RootValuation> root_valuations() const;
};

// Coefficients are listed from the constant term upward.
NewtonPolygon newton_polygon_of(const std::vector<FieldElement>& coeffs);
std::vector<RootValuation> newton_polygon(const std::vector<FieldElement>& coeffs, const FieldModel& model);

enum class RootChoice { Top, Bottom };

// Root of f of valuation s whose normalized residue is r0.
FieldElement hensel_root(const std::vector<FieldElement>& coeffs, long root_valuation, std::uint32_t residue);
// Root of largest (Top) or smallest (Bottom) absolute value.
FieldElement extremal_root(const std::vector<FieldElement>& coeffs, RootChoice which);

FieldElement evaluate_poly(const std::vector<FieldElement>& coeffs, const FieldElement& x);

}  // namespace nabas
