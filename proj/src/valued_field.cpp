#include "nabas/valued_field.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <deque>
#include <unordered_map>

namespace nabas {

namespace {

std::atomic<long> g_precision_cap{65536};

constexpr long kInfiniteLowerBound = 1L << 40;

void require_same(const FieldModel& a, const FieldModel& b) {
  if (!(a == b)) fail(ErrorCode::ModelMismatch, a.to_string() + " vs " + b.to_string());
}

long remove_p(mpz_class& x, long p) {
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

long padic_valuation(const mpq_class& q, long p) {
  mpz_class n = q.get_num(), d = q.get_den();
  return remove_p(n, p) - remove_p(d, p);
}

}  // namespace

std::string q64_to_string(const Q64& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// ---- FieldModel -------------------------------------------------------------

FieldModel FieldModel::qp(long p) {
  mpz_class pz(p);
  if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
    fail(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  return FieldModel(FieldKind::QP, p);
}

FieldModel FieldModel::laurent(long p) {
  if (p >= (1L << 31)) fail(ErrorCode::InvalidArgument, "characteristic too large");
  FieldModel m = qp(p);
  m.kind_ = FieldKind::Laurent;
  return m;
}

std::string FieldModel::to_string() const {
  return std::string(kind_ == FieldKind::QP ? "qp " : "laurent ") + std::to_string(p_);
}

// ---- Valuation --------------------------------------------------------------

long Valuation::value() const {
  if (infinite_) fail(ErrorCode::InvalidArgument, "infinite valuation has no value");
  return v_;
}

Valuation Valuation::operator+(const Valuation& o) const {
  if (infinite_ || o.infinite_) return infinity();
  return finite(v_ + o.v_);
}

std::string Valuation::to_string() const { return infinite_ ? "inf" : std::to_string(v_); }

void set_precision_cap(long digits) {
  if (digits < 8) fail(ErrorCode::InvalidArgument, "precision cap below 8");
  g_precision_cap.store(digits);
}

long precision_cap() { return g_precision_cap.load(); }

PrecisionCapScope::PrecisionCapScope(long digits) : saved_(precision_cap()) { set_precision_cap(digits); }
PrecisionCapScope::~PrecisionCapScope() { g_precision_cap.store(saved_); }

// ---- RatFunc ----------------------------------------------------------------

RatFunc::RatFunc(FpPoly num, FpPoly den) {
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
  std::uint32_t p = den.p();
  if (num.is_zero()) {
    num_ = FpPoly(p);
    den_ = FpPoly::constant(p, 1);
    return;
  }
  FpPoly g = FpPoly::gcd(num, den);
  FpPoly q, r;
  FpPoly::divmod(num, g, num_, r);
  FpPoly::divmod(den, g, den_, r);
  std::uint32_t inv = mod_inverse(den_.leading(), p);
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RatFunc RatFunc::constant(std::uint32_t p, long long c) {
  return RatFunc(FpPoly::constant(p, c), FpPoly::constant(p, 1));
}

RatFunc RatFunc::from_poly(FpPoly num) {
  std::uint32_t p = num.p();
  return RatFunc(std::move(num), FpPoly::constant(p, 1));
}

long RatFunc::valuation() const {
  if (is_zero()) fail(ErrorCode::InvalidArgument, "valuation of zero");
  return num_.low_order() - den_.low_order();
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }
RatFunc RatFunc::operator+(const RatFunc& o) const { return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---- Local ------------------------------------------------------------------

const mpz_class& prime_power(long p, long e) {
  thread_local std::unordered_map<long, std::deque<mpz_class>> cache;
  auto& v = cache[p];
  if (v.empty()) v.emplace_back(1);
  while (static_cast<long>(v.size()) <= e) v.push_back(v.back() * p);
  return v[static_cast<std::size_t>(e)];
}

Local Local::zero(const FieldModel& m, long absprec) {
  Local r;
  r.model_ = m;
  r.absprec_ = std::max(absprec, kUnknownPrecision);
  r.val_ = r.absprec_;
  if (m.kind() == FieldKind::QP)
    r.unit_ = mpz_class(0);
  else
    r.unit_ = FpPoly(static_cast<std::uint32_t>(m.p()));
  return r;
}

Local Local::one(const FieldModel& m, long absprec) {
  if (m.kind() == FieldKind::QP) return from_integer_unit(m, 0, absprec, 1);
  return from_poly_unit(m, 0, absprec, FpPoly::constant(static_cast<std::uint32_t>(m.p()), 1));
}

Local Local::normalized(const FieldModel& m, long v, long absprec, mpz_class s) {
  if (s == 0) return zero(m, absprec);
  long k = remove_p(s, m.p());
  if (v + k >= absprec) return zero(m, absprec);
  Local r;
  r.model_ = m;
  r.val_ = v + k;
  r.absprec_ = absprec;
  r.unit_ = std::move(s);
  return r;
}

Local Local::normalized(const FieldModel& m, long v, long absprec, FpPoly s) {
  if (s.is_zero()) return zero(m, absprec);
  int k = s.low_order();
  if (v + k >= absprec) return zero(m, absprec);
  Local r;
  r.model_ = m;
  r.val_ = v + k;
  r.absprec_ = absprec;
  r.unit_ = s.shifted(-k);
  return r;
}

Local Local::from_integer_unit(const FieldModel& m, long val, long absprec, const mpz_class& unit) {
  if (val >= absprec) return zero(m, absprec);
  mpz_class s;
  mpz_fdiv_r(s.get_mpz_t(), unit.get_mpz_t(), prime_power(m.p(), absprec - val).get_mpz_t());
  return normalized(m, val, absprec, std::move(s));
}

Local Local::from_poly_unit(const FieldModel& m, long val, long absprec, const FpPoly& unit) {
  if (val >= absprec) return zero(m, absprec);
  return normalized(m, val, absprec, unit.truncated(static_cast<std::size_t>(absprec - val)));
}

Local Local::from_rational(const FieldModel& m, const mpq_class& x, long absprec) {
  if (m.kind() != FieldKind::QP) fail(ErrorCode::ModelMismatch, "rational in a Laurent model");
  if (x == 0) return zero(m, absprec);
  mpz_class num = x.get_num(), den = x.get_den();
  long v = remove_p(num, m.p()) - remove_p(den, m.p());
  if (v >= absprec) return zero(m, absprec);
  const mpz_class& mod = prime_power(m.p(), absprec - v);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class u = num * inv;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  Local r;
  r.model_ = m;
  r.val_ = v;
  r.absprec_ = absprec;
  r.unit_ = std::move(u);
  return r;
}

Local Local::from_ratfunc(const FieldModel& m, const RatFunc& x, long absprec) {
  if (m.kind() != FieldKind::Laurent) fail(ErrorCode::ModelMismatch, "rational function in a p-adic model");
  if (x.is_zero()) return zero(m, absprec);
  int a = x.num().low_order(), b = x.den().low_order();
  long v = a - b;
  if (v >= absprec) return zero(m, absprec);
  std::size_t r = static_cast<std::size_t>(absprec - v);
  FpPoly inv = x.den().shifted(-b).inverse_mod(r);
  Local out;
  out.model_ = m;
  out.val_ = v;
  out.absprec_ = absprec;
  out.unit_ = x.num().shifted(-a).mul_trunc(inv, r);
  return out;
}

Local Local::operator-() const {
  if (is_zero()) return *this;
  if (model_.kind() == FieldKind::QP) {
    mpz_class s = -unit_z();
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), prime_power(model_.p(), relprec()).get_mpz_t());
    Local r = *this;
    r.unit_ = std::move(s);
    return r;
  }
  Local r = *this;
  r.unit_ = -unit_poly();
  return r;
}

Local Local::operator+(const Local& o) const {
  require_same(model_, o.model_);
  long a = std::min(absprec_, o.absprec_);
  if (is_zero()) return o.reduced(a);
  if (o.is_zero()) return reduced(a);
  long v = std::min(val_, o.val_);
  if (v >= a) return zero(model_, a);
  long r = a - v;
  if (model_.kind() == FieldKind::QP) {
    mpz_class s = unit_z() * prime_power(model_.p(), val_ - v) + o.unit_z() * prime_power(model_.p(), o.val_ - v);
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), prime_power(model_.p(), r).get_mpz_t());
    return normalized(model_, v, a, std::move(s));
  }
  FpPoly s = unit_poly().shifted(static_cast<int>(val_ - v)) + o.unit_poly().shifted(static_cast<int>(o.val_ - v));
  return normalized(model_, v, a, s.truncated(static_cast<std::size_t>(r)));
}

Local Local::operator-(const Local& o) const { return *this + (-o); }

Local Local::operator*(const Local& o) const {
  require_same(model_, o.model_);
  long a = std::min(absprec_ + o.val_, o.absprec_ + val_);
  if (is_zero() || o.is_zero()) return zero(model_, a);
  long v = val_ + o.val_;
  long r = a - v;
  Local out;
  out.model_ = model_;
  out.val_ = v;
  out.absprec_ = a;
  if (model_.kind() == FieldKind::QP) {
    mpz_class s = unit_z() * o.unit_z();
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), prime_power(model_.p(), r).get_mpz_t());
    out.unit_ = std::move(s);
  } else {
    out.unit_ = unit_poly().mul_trunc(o.unit_poly(), static_cast<std::size_t>(r));
  }
  return out;
}

Local Local::inverse() const {
  if (is_zero()) return zero(model_, kUnknownPrecision);
  long r = relprec();
  Local out;
  out.model_ = model_;
  out.val_ = -val_;
  out.absprec_ = -val_ + r;
  if (model_.kind() == FieldKind::QP) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), unit_z().get_mpz_t(), prime_power(model_.p(), r).get_mpz_t());
    out.unit_ = std::move(inv);
  } else {
    out.unit_ = unit_poly().inverse_mod(static_cast<std::size_t>(r));
  }
  return out;
}

Local Local::operator/(const Local& o) const { return *this * o.inverse(); }

Local Local::shifted(long k) const {
  Local r = *this;
  r.val_ += k;
  r.absprec_ += k;
  if (is_zero()) return zero(model_, r.absprec_);
  return r;
}

Local Local::reduced(long absprec) const {
  if (absprec >= absprec_) return *this;
  if (val_ >= absprec) return zero(model_, absprec);
  if (model_.kind() == FieldKind::QP) return from_integer_unit(model_, val_, absprec, unit_z());
  return from_poly_unit(model_, val_, absprec, unit_poly());
}

Local Local::extended(long absprec) const {
  if (absprec <= absprec_) return *this;
  if (is_zero()) return zero(model_, absprec);
  Local r = *this;
  r.absprec_ = absprec;
  return r;
}

bool Local::congruent(const Local& o, long n) const { return (*this - o).reduced(n).is_zero(); }

std::uint32_t Local::unit_residue() const {
  if (is_zero()) return 0;
  if (model_.kind() == FieldKind::QP) return static_cast<std::uint32_t>(mpz_fdiv_ui(unit_z().get_mpz_t(), static_cast<unsigned long>(model_.p())));
  return unit_poly().coeff(0);
}

mpq_class Local::to_rational() const {
  if (is_zero()) return 0;
  if (val_ >= 0) return mpq_class(unit_z() * prime_power(model_.p(), val_));
  mpq_class q(unit_z(), prime_power(model_.p(), -val_));
  q.canonicalize();
  return q;
}

RatFunc Local::to_ratfunc() const {
  std::uint32_t p = static_cast<std::uint32_t>(model_.p());
  if (is_zero()) return RatFunc::constant(p, 0);
  if (val_ >= 0) return RatFunc::from_poly(unit_poly().shifted(static_cast<int>(val_)));
  return RatFunc(unit_poly(), FpPoly::monomial(p, 1, static_cast<std::size_t>(-val_)));
}

std::string Local::to_string() const {
  if (is_zero()) return "O(pi^" + std::to_string(absprec_) + ")";
  std::string u = model_.kind() == FieldKind::QP ? unit_z().get_str() : unit_poly().to_string();
  return "pi^" + std::to_string(val_) + "*(" + u + ") + O(pi^" + std::to_string(absprec_) + ")";
}

// ---- Refinable --------------------------------------------------------------

Refinable::Refinable(FieldModel model, Generator gen, long valuation_lower_bound)
    : model_(model), gen_(std::move(gen)), lower_(valuation_lower_bound) {}

Local Refinable::approx(long n) const {
  const long cap = precision_cap();
  if (n > cap) fail(ErrorCode::PrecisionExhausted, "requested precision " + std::to_string(n) + " exceeds cap");
  std::lock_guard<std::mutex> lock(mu_);
  if (memo_ && memo_->absprec() >= n) return memo_->reduced(n);
  long extra = 0;
  for (;;) {
    long target = std::min(n + extra, cap);
    Local r = gen_(target);
    if (r.absprec() >= n) {
      if (!memo_ || r.absprec() > memo_->absprec()) memo_ = r;
      return r.reduced(n);
    }
    if (target >= cap) fail(ErrorCode::PrecisionExhausted, "precision loss exceeds cap");
    extra = extra == 0 ? 8 : 2 * extra;
  }
}

// ---- FieldElement -----------------------------------------------------------

FieldElement FieldElement::integer(const FieldModel& m, long long n) {
  FieldElement x;
  x.model_ = m;
  if (m.kind() == FieldKind::QP)
    x.repr_ = mpq_class(mpz_class(static_cast<long>(n)));
  else
    x.repr_ = RatFunc::constant(static_cast<std::uint32_t>(m.p()), n);
  return x;
}

FieldElement FieldElement::rational(const FieldModel& m, mpq_class q) {
  q.canonicalize();
  FieldElement x;
  x.model_ = m;
  if (m.kind() == FieldKind::QP) {
    x.repr_ = std::move(q);
    return x;
  }
  auto p = static_cast<unsigned long>(m.p());
  auto n = static_cast<long long>(mpz_fdiv_ui(q.get_num_mpz_t(), p));
  auto d = static_cast<long long>(mpz_fdiv_ui(q.get_den_mpz_t(), p));
  if (d == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes mod p");
  x.repr_ = RatFunc(FpPoly::constant(static_cast<std::uint32_t>(p), n), FpPoly::constant(static_cast<std::uint32_t>(p), d));
  return x;
}

FieldElement FieldElement::ratfunc(const FieldModel& m, RatFunc f) {
  if (m.kind() != FieldKind::Laurent) fail(ErrorCode::ModelMismatch, "rational function in a p-adic model");
  FieldElement x;
  x.model_ = m;
  x.repr_ = std::move(f);
  return x;
}

FieldElement FieldElement::refinable(const FieldModel& m, Refinable::Generator gen, long valuation_lower_bound) {
  FieldElement x;
  x.model_ = m;
  x.repr_ = std::shared_ptr<const Refinable>(std::make_shared<Refinable>(m, std::move(gen), valuation_lower_bound));
  return x;
}

FieldElement FieldElement::uniformizer(const FieldModel& m) {
  if (m.kind() == FieldKind::QP) return integer(m, m.p());
  auto p = static_cast<std::uint32_t>(m.p());
  return ratfunc(m, RatFunc::from_poly(FpPoly::monomial(p, 1, 1)));
}

bool FieldElement::is_exact_zero() const {
  if (auto q = as_rational()) return *q == 0;
  if (auto f = as_ratfunc()) return f->is_zero();
  return false;
}


Valuation FieldElement::valuation() const {
  if (auto q = as_rational()) return *q == 0 ? Valuation::infinity() : Valuation::finite(padic_valuation(*q, model_.p()));
  if (auto f = as_ratfunc()) return f->is_zero() ? Valuation::infinity() : Valuation::finite(f->valuation());
  const auto& r = std::get<std::shared_ptr<const Refinable>>(repr_);
  const long cap = precision_cap();
  long n = std::max(8L, std::min(r->valuation_lower_bound() + 8, cap));
  for (;;) {
    n = std::min(n, cap);
    Local a = r->approx(n);
    if (!a.is_zero()) return Valuation::finite(a.valuation());
    if (n >= cap) fail(ErrorCode::PrecisionExhausted, "valuation undetermined at precision cap " + std::to_string(cap));
    n *= 2;
  }
}

long FieldElement::valuation_lower_bound() const {
  if (is_exact()) {
    Valuation v = valuation();
    return v.is_infinite() ? kInfiniteLowerBound : v.value();
  }
  return std::get<std::shared_ptr<const Refinable>>(repr_)->valuation_lower_bound();
}

Local FieldElement::approx(long n) const {
  if (auto q = as_rational()) return Local::from_rational(model_, *q, n);
  if (auto f = as_ratfunc()) return Local::from_ratfunc(model_, *f, n);
  return std::get<std::shared_ptr<const Refinable>>(repr_)->approx(n);
}

namespace {

long lower_bound(const FieldElement& x) {
  if (x.is_exact()) {
    Valuation v = x.valuation();
    return v.is_infinite() ? kInfiniteLowerBound : v.value();
  }
  return x.valuation_lower_bound();
}

}  // namespace

FieldElement FieldElement::operator-() const {
  if (auto q = as_rational()) return rational(model_, -*q);
  if (auto f = as_ratfunc()) return ratfunc(model_, -*f);
  FieldElement x = *this;
  return refinable(model_, [x](long n) { return -x.approx(n); }, lower_bound(x));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(model_, o.model_);
  if (as_rational() && o.as_rational()) return rational(model_, *as_rational() + *o.as_rational());
  if (as_ratfunc() && o.as_ratfunc()) return ratfunc(model_, *as_ratfunc() + *o.as_ratfunc());
  FieldElement x = *this, y = o;
  return refinable(model_, [x, y](long n) { return x.approx(n) + y.approx(n); },
                   std::min(lower_bound(x), lower_bound(y)));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(model_, o.model_);
  if (as_rational() && o.as_rational()) return rational(model_, *as_rational() * *o.as_rational());
  if (as_ratfunc() && o.as_ratfunc()) return ratfunc(model_, *as_ratfunc() * *o.as_ratfunc());
  FieldElement x = *this, y = o;
  auto gen = [x, y](long n) {
    Local a = x.approx(n), b = y.approx(n);
    long na = n - std::min(b.valuation(), n), nb = n - std::min(a.valuation(), n);
    if (na > a.absprec()) a = x.approx(na);
    if (nb > b.absprec()) b = y.approx(nb);
    return a * b;
  };
  long lx = lower_bound(x), ly = lower_bound(y);
  return refinable(model_, gen, std::min(lx + ly, kInfiniteLowerBound));
}

FieldElement FieldElement::inverse() const {
  if (is_exact_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (auto q = as_rational()) return rational(model_, 1 / *q);
  if (auto f = as_ratfunc()) return ratfunc(model_, RatFunc::constant(f->p(), 1) / *f);
  long v = valuation().value();
  FieldElement x = *this;
  return refinable(model_, [x, v](long n) { return x.approx(n + 2 * v).inverse(); }, -v);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::exact_equal(const FieldElement& o) const {
  if (!(model_ == o.model_)) return false;
  if (as_rational() && o.as_rational()) return *as_rational() == *o.as_rational();
  if (as_ratfunc() && o.as_ratfunc()) return *as_ratfunc() == *o.as_ratfunc();
  fail(ErrorCode::InvalidArgument, "exact comparison of refinable elements");
}

std::string FieldElement::to_string() const {
  if (auto q = as_rational()) return q->get_str();
  if (auto f = as_ratfunc()) return f->to_string();
  return "<refinable " + approx(16).to_string() + ">";
}

FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement* y) {
  auto need_y = [&]() -> const FieldElement& {
    if (!y) fail(ErrorCode::InvalidArgument, "binary operation without second operand");
    return *y;
  };
  switch (op) {
    case ArithOp::Add: return x + need_y();
    case ArithOp::Mul: return x * need_y();
    case ArithOp::Neg: return -x;
    case ArithOp::Inv: return x.inverse();
  }
  fail(ErrorCode::InvalidArgument, "unknown operation");
}

Valuation valuation(const FieldElement& x) { return x.valuation(); }

// ---- parsing ----------------------------------------------------------------

namespace {

[[noreturn]] void parse_error(std::string_view text, const std::string& why) {
  fail(ErrorCode::Parse, "'" + std::string(text) + "': " + why);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

FpPoly parse_poly(std::string_view text, std::string_view whole, std::uint32_t p) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  if (text.empty()) parse_error(whole, "empty polynomial");
  FpPoly acc(p);
  std::size_t i = 0;
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      parse_error(whole, "expected '+' or '-'");
    }
    first = false;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::string digits(text.substr(start, i - start));
    long long coeff = 1;
    if (!digits.empty()) {
      mpz_class c(digits);
      coeff = static_cast<long long>(mpz_fdiv_ui(c.get_mpz_t(), p));
    }
    std::size_t degree = 0;
    if (i < text.size() && text[i] == 'T') {
      ++i;
      degree = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t es = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        std::string_view e = text.substr(es, i - es);
        if (!all_digits(e) || e.size() > 6) parse_error(whole, "bad exponent");
        degree = std::stoul(std::string(e));
      }
    } else if (digits.empty()) {
      parse_error(whole, "expected coefficient or T");
    }
    acc = acc + FpPoly::monomial(p, sign * coeff, degree);
  }
  return acc;
}

}  // namespace

FieldElement FieldElement::parse(const FieldModel& m, std::string_view text) {
  if (text.empty()) parse_error(text, "empty element");
  if (m.kind() == FieldKind::QP) {
    std::string_view body = text;
    bool neg = false;
    if (body.front() == '-' || body.front() == '+') {
      neg = body.front() == '-';
      body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) parse_error(text, "expected [-]a[/b]");
    mpz_class d{std::string(den)};
    if (d == 0) parse_error(text, "zero denominator");
    mpq_class q(mpz_class(std::string(num)), d);
    q.canonicalize();
    return rational(m, neg ? mpq_class(-q) : q);
  }
  auto p = static_cast<std::uint32_t>(m.p());
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth < 0) parse_error(text, "unbalanced parentheses");
    if (text[i] == '/' && depth == 0) {
      if (split != std::string_view::npos) parse_error(text, "more than one '/'");
      split = i;
    }
  }
  if (depth != 0) parse_error(text, "unbalanced parentheses");
  FpPoly num = parse_poly(text.substr(0, split), text, p);
  FpPoly den = split == std::string_view::npos ? FpPoly::constant(p, 1) : parse_poly(text.substr(split + 1), text, p);
  if (den.is_zero()) parse_error(text, "zero denominator");
  return ratfunc(m, RatFunc(num, den));
}

// ---- rational reconstruction ------------------------------------------------

std::optional<FieldElement> reconstruct_exact(const Local& x) {
  const FieldModel& m = x.model();
  if (x.is_zero()) return std::nullopt;
  long r = x.relprec();
  if (m.kind() == FieldKind::QP) {
    const mpz_class& mod = prime_power(m.p(), r);
    mpz_class bound;
    mpz_class half = mod / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = mod, r1 = x.unit_z(), s0 = 0, s1 = 1;
    while (r1 > bound) {
      mpz_class q = r0 / r1;
      mpz_class t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    if (s1 == 0 || abs(s1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class q(r1, s1);
    q.canonicalize();
    if (x.valuation() >= 0)
      q *= mpq_class(prime_power(m.p(), x.valuation()));
    else
      q /= mpq_class(prime_power(m.p(), -x.valuation()));
    return FieldElement::rational(m, q);
  }
  auto p = static_cast<std::uint32_t>(m.p());
  FpPoly r0 = FpPoly::monomial(p, 1, static_cast<std::size_t>(r)), r1 = x.unit_poly();
  FpPoly s0(p), s1 = FpPoly::constant(p, 1);
  long half = r / 2;
  while (!r1.is_zero() && r1.degree() >= half) {
    FpPoly q, rem;
    FpPoly::divmod(r0, r1, q, rem);
    r0 = std::move(r1);
    r1 = std::move(rem);
    FpPoly t = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(t);
  }
  if (r1.is_zero() || s1.is_zero() || s1.degree() >= r - half) return std::nullopt;
  if (s1.coeff(0) == 0) return std::nullopt;
  RatFunc f(r1, s1);
  f = f * (x.valuation() >= 0 ? RatFunc::from_poly(FpPoly::monomial(p, 1, static_cast<std::size_t>(x.valuation())))
                              : RatFunc(FpPoly::constant(p, 1), FpPoly::monomial(p, 1, static_cast<std::size_t>(-x.valuation()))));
  return FieldElement::ratfunc(m, f);
}

// ---- Newton polygons --------------------------------------------------------

std::vector<RootValuation> NewtonPolygon::root_valuations() const {
  std::vector<RootValuation> out;
  for (const auto& s : segments) out.push_back({-s.slope, s.length});
  std::sort(out.begin(), out.end(), [](const RootValuation& a, const RootValuation& b) { return a.valuation < b.valuation; });
  return out;
}

NewtonPolygon newton_polygon_of(const std::vector<FieldElement>& coeffs) {
  std::vector<std::pair<long, long>> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Valuation v = coeffs[i].valuation();
    if (!v.is_infinite()) pts.emplace_back(static_cast<long>(i), v.value());
  }
  if (pts.empty()) fail(ErrorCode::ZeroPoly, "Newton polygon of the zero polynomial");
  if (coeffs.front().valuation().is_infinite()) fail(ErrorCode::InvalidArgument, "constant coefficient is zero");
  if (coeffs.back().valuation().is_infinite()) fail(ErrorCode::InvalidArgument, "leading coefficient is zero");
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      __int128 cross = static_cast<__int128>(b.first - a.first) * (pt.second - a.second) -
                       static_cast<__int128>(b.second - a.second) * (pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  NewtonPolygon np;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    long dx = hull[i].first - hull[i - 1].first;
    long dy = hull[i].second - hull[i - 1].second;
    np.segments.push_back({Q64(dy, dx), dx, hull[i - 1].first});
  }
  return np;
}

std::vector<RootValuation> newton_polygon(const std::vector<FieldElement>& coeffs, const FieldModel& model) {
  for (const auto& c : coeffs) require_same(c.model(), model);
  return newton_polygon_of(coeffs).root_valuations();
}

// ---- Hensel lifting ---------------------------------------------------------

FieldElement evaluate_poly(const std::vector<FieldElement>& coeffs, const FieldElement& x) {
  if (coeffs.empty()) return FieldElement::integer(x.model(), 0);
  FieldElement acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

namespace {

FieldElement pi_power(const FieldModel& m, long k) {
  if (m.kind() == FieldKind::QP) {
    mpq_class q = k >= 0 ? mpq_class(prime_power(m.p(), k)) : mpq_class(mpz_class(1), prime_power(m.p(), -k));
    return FieldElement::rational(m, q);
  }
  auto p = static_cast<std::uint32_t>(m.p());
  if (k >= 0) return FieldElement::ratfunc(m, RatFunc::from_poly(FpPoly::monomial(p, 1, static_cast<std::size_t>(k))));
  return FieldElement::ratfunc(m, RatFunc(FpPoly::constant(p, 1), FpPoly::monomial(p, 1, static_cast<std::size_t>(-k))));
}

std::uint32_t residue_of_unit_or_zero(const FieldElement& x) {
  Valuation v = x.valuation();
  if (v.is_infinite() || v.value() > 0) return 0;
  return x.approx(1).unit_residue();
}

Local constant_local(const FieldModel& m, std::uint32_t c, long absprec) {
  if (m.kind() == FieldKind::QP) return Local::from_integer_unit(m, 0, absprec, mpz_class(static_cast<unsigned long>(c)));
  return Local::from_poly_unit(m, 0, absprec, FpPoly::constant(static_cast<std::uint32_t>(m.p()), c));
}

}  // namespace

FieldElement hensel_root(const std::vector<FieldElement>& coeffs, long s, std::uint32_t residue) {
  if (coeffs.size() < 2) fail(ErrorCode::InvalidArgument, "polynomial of degree < 1");
  const FieldModel m = coeffs.front().model();
  for (const auto& c : coeffs) {
    require_same(c.model(), m);
    if (!c.is_exact()) fail(ErrorCode::InvalidArgument, "Hensel lifting needs exact coefficients");
  }
  const long p = m.p();
  long mmin = kInfiniteLowerBound;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Valuation v = coeffs[j].valuation();
    if (!v.is_infinite()) mmin = std::min(mmin, v.value() + static_cast<long>(j) * s);
  }
  if (mmin == kInfiniteLowerBound) fail(ErrorCode::ZeroPoly, "Hensel lifting of the zero polynomial");
  // g(mu) = pi^{-mmin} f(pi^s mu) has integral coefficients and a unit one.
  std::vector<FieldElement> g;
  for (std::size_t j = 0; j < coeffs.size(); ++j) g.push_back(coeffs[j] * pi_power(m, static_cast<long>(j) * s - mmin));
  std::uint64_t gbar = 0, dgbar = 0, pw = 1, dpw = 1;
  residue %= static_cast<std::uint32_t>(p);
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::uint64_t c = residue_of_unit_or_zero(g[j]);
    gbar = (gbar + c * pw) % static_cast<std::uint64_t>(p);
    if (j >= 1) {
      dgbar = (dgbar + (c * (j % static_cast<std::uint64_t>(p)) % static_cast<std::uint64_t>(p)) * dpw) % static_cast<std::uint64_t>(p);
      dpw = dpw * residue % static_cast<std::uint64_t>(p);
    }
    pw = pw * residue % static_cast<std::uint64_t>(p);
  }
  if (gbar != 0 || dgbar == 0)
    fail(ErrorCode::NoSimpleSegment, "residue " + std::to_string(residue) + " is not a simple root of the reduced polynomial");

  auto lift = [g, m, residue](long k) {
    Local mu = constant_local(m, residue, 1);
    long prec = 1;
    while (prec < k) {
      long next = std::min(2 * prec, k);
      long work = next + 2;
      Local x = mu.extended(work);
      Local val = g.back().approx(work);
      Local der = Local::zero(m, work);
      for (std::size_t j = g.size() - 1; j-- > 0;) {
        der = der * x + val;
        val = val * x + g[j].approx(work);
      }
      mu = (x - val / der).reduced(next);
      prec = next;
    }
    return mu.reduced(k);
  };
  auto gen = [lift, s](long n) { return lift(std::max(n - s, 1L)).shifted(s); };
  return FieldElement::refinable(m, gen, s);
}

FieldElement extremal_root(const std::vector<FieldElement>& coeffs, RootChoice which) {
  NewtonPolygon np = newton_polygon_of(coeffs);
  const NewtonSegment& seg = which == RootChoice::Top ? np.segments.back() : np.segments.front();
  if (seg.length != 1) fail(ErrorCode::NoSimpleSegment, "extremal Newton segment has length " + std::to_string(seg.length));
  long s = -seg.slope.numerator();
  std::size_t i = static_cast<std::size_t>(seg.start);
  const FieldModel& m = coeffs.front().model();
  long mmin = coeffs[i].valuation().value() + static_cast<long>(i) * s;
  auto reduced_coeff = [&](std::size_t j) {
    FieldElement g = coeffs[j] * pi_power(m, static_cast<long>(j) * s - mmin);
    return g.approx(1).unit_residue();
  };
  auto p = static_cast<std::uint32_t>(m.p());
  std::uint32_t a = reduced_coeff(i), b = reduced_coeff(i + 1);
  std::uint32_t r0 = static_cast<std::uint32_t>((std::uint64_t(p - a) % p) * mod_inverse(b, p) % p);
  return hensel_root(coeffs, s, r0);
}

}  // namespace nabas
