#include "nabas/berkovich.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <mutex>

#include "local_vec.hpp"
#include "nabas/error.hpp"

namespace nabas {

BerkPoint BerkPoint::type_i(const FieldElement& z) {
  BerkPoint p;
  p.model_ = z.model();
  p.center_ = z;
  return p;
}

BerkPoint BerkPoint::infinity(const FieldModel& m) {
  BerkPoint p;
  p.model_ = m;
  return p;
}

BerkPoint BerkPoint::ball(const FieldElement& center, Q64 s) {
  BerkPoint p = type_i(center);
  p.type_i_ = false;
  p.s_ = s;
  return p;
}

BerkPoint BerkPoint::gauss(const FieldModel& m) { return ball(FieldElement::integer(m, 0), Q64(0)); }

const FieldElement& BerkPoint::center() const {
  if (!center_) fail(ErrorCode::InvalidArgument, "the point at infinity has no center");
  return *center_;
}

std::string BerkPoint::to_string() const {
  if (is_infinity()) return "inf";
  if (type_i_) return center_->to_string();
  return "Ball(" + center_->to_string() + ", " + q64_to_string(s_) + ")";
}

namespace {

// v(a - b), or nullopt when a = b.
std::optional<Q64> gap(const FieldElement& a, const FieldElement& b) {
  Valuation v = (a - b).valuation();
  if (v.is_infinite()) return std::nullopt;
  return Q64(v.value());
}

void require_same_model(const BerkPoint& x, const BerkPoint& y) {
  if (!(x.model() == y.model())) fail(ErrorCode::ModelMismatch, "points over different fields");
}

Q64 floor_q(Q64 x) {
  long long n = x.numerator(), d = x.denominator();
  long long f = n / d;
  if (n % d != 0 && n < 0) --f;
  return Q64(f);
}

}  // namespace

bool same_point(const BerkPoint& x, const BerkPoint& y) {
  require_same_model(x, y);
  if (x.is_type_i() != y.is_type_i()) return false;
  if (x.is_type_i()) {
    if (x.is_infinity() || y.is_infinity()) return x.is_infinity() && y.is_infinity();
    return !gap(x.center(), y.center());
  }
  if (x.exponent() != y.exponent()) return false;
  auto g = gap(x.center(), y.center());
  return !g || *g >= x.exponent();
}

BerkPoint join(const BerkPoint& x, const BerkPoint& y) {
  require_same_model(x, y);
  if (x.is_infinity()) return x;
  if (y.is_infinity()) return y;
  std::optional<Q64> s = gap(x.center(), y.center());
  for (const BerkPoint* p : {&x, &y})
    if (!p->is_type_i()) s = s ? std::min(*s, p->exponent()) : p->exponent();
  if (!s) return x;
  return BerkPoint::ball(x.center(), *s);
}

Distance dist(const BerkPoint& x, const BerkPoint& y) {
  if (x.is_type_i() || y.is_type_i()) return same_point(x, y) ? Distance{} : Distance{true, Q64(0)};
  BerkPoint z = join(x, y);
  return {false, (x.exponent() - z.exponent()) + (y.exponent() - z.exponent())};
}

BerkPoint median(const BerkPoint& u, const BerkPoint& w, const BerkPoint& z) {
  const BerkPoint* p[3] = {&u, &w, &z};
  for (auto* a : p)
    if (!a->is_type_i()) fail(ErrorCode::InvalidArgument, "median takes type I points");
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      if (same_point(*p[i], *p[k])) fail(ErrorCode::NotDistinct, "median of coinciding points");
  for (int i = 0; i < 3; ++i)
    if (p[i]->is_infinity()) return join(*p[(i + 1) % 3], *p[(i + 2) % 3]);
  // The branch point is the smallest ball containing the closest pair.
  Q64 best(0);
  const FieldElement* center = nullptr;
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k) {
      Q64 v = *gap(p[i]->center(), p[k]->center());
      if (!center || v > best) {
        best = v;
        center = &p[i]->center();
      }
    }
  return BerkPoint::ball(*center, best);
}

TriplePoint triple_of(const BerkPoint& x) {
  if (!x.is_type_ii()) fail(ErrorCode::InvalidArgument, "triples represent type II points");
  const FieldModel& m = x.model();
  long s = static_cast<long>(x.exponent().numerator());
  FieldElement step = FieldElement::integer(m, 1), pi = FieldElement::uniformizer(m);
  FieldElement f = s >= 0 ? pi : pi.inverse();
  for (long k = 0; k < std::abs(s); ++k) step = step * f;
  return {BerkPoint::type_i(x.center()), BerkPoint::type_i(x.center() + step), BerkPoint::infinity(m)};
}

BerkPoint mobius_act(const ProjMatrix& g, const BerkPoint& x) {
  if (g.dim() != 2) fail(ErrorCode::Dimension, "Mobius action needs a 2x2 matrix");
  if (!(g.model() == x.model())) fail(ErrorCode::ModelMismatch, "matrix and point over different fields");
  if (x.is_type_i()) {
    FieldElement num, den;
    if (x.is_infinity()) {
      num = g.at(0, 0);
      den = g.at(1, 0);
    } else {
      num = g.at(0, 0) * x.center() + g.at(0, 1);
      den = g.at(1, 0) * x.center() + g.at(1, 1);
    }
    if (den.is_exact_zero()) return BerkPoint::infinity(x.model());
    return BerkPoint::type_i(num / den);
  }
  if (x.is_type_ii()) {
    TriplePoint t = triple_of(x);
    return median(mobius_act(g, t.u), mobius_act(g, t.w), mobius_act(g, t.z));
  }
  // A type III point sits between two adjacent type II points.
  Q64 lo = floor_q(x.exponent()), theta = x.exponent() - lo;
  BerkPoint a = mobius_act(g, BerkPoint::ball(x.center(), lo));
  BerkPoint b = mobius_act(g, BerkPoint::ball(x.center(), lo + 1));
  if (b.exponent() == a.exponent() + 1) return BerkPoint::ball(b.center(), a.exponent() + theta);
  return BerkPoint::ball(a.center(), a.exponent() - theta);
}

BerkPoint axis_point(const FieldModel& m, Q64 s) { return BerkPoint::ball(FieldElement::integer(m, 0), s); }

BerkPoint project_to_axis(const FieldElement& alpha) {
  Valuation v = alpha.valuation();
  if (v.is_infinite()) fail(ErrorCode::OnAxisEndpoint, "0 is an end of the axis");
  return axis_point(alpha.model(), Q64(v.value()));
}

AxisComparison axis_distance_vs_crossratio(const FieldElement& a, const FieldElement& b) {
  BerkPoint pa = project_to_axis(a), pb = project_to_axis(b);
  if (!(pa.exponent() > pb.exponent())) fail(ErrorCode::Order, "need |a| < |b|");
  const FieldModel& m = a.model();
  long cr = cross_ratio_valuation(p1_dual(p1_infinity(m)), p1_dual(p1_point(FieldElement::integer(m, 0))), p1_point(a), p1_point(b));
  return {dist(pa, pb), cr};
}

Q64 AxisInterval::signed_measure() const {
  Distance d = dist(from, to);
  if (d.infinite) fail(ErrorCode::OnAxisEndpoint, "interval reaches an end of the axis");
  // Exponents decrease from 0 towards infinity.
  return from.exponent() >= to.exponent() ? d.value : -d.value;
}

// ---- geometric pipeline -----------------------------------------------------

namespace {

using detail::approx_all;
using detail::LVec;
using detail::mat_mul;
using detail::mat_vec;
using detail::normalize;

void require_hyperbolic(const Representation& rep) {
  if (rep.dim() != 2) fail(ErrorCode::Dimension, "the geometric pipeline needs d = 2");
  for (int j = 0; j < rep.boundary_count(); ++j) {
    Pgl2Class c = classify_pgl2(rep.image(rep.boundary_word(j)));
    if (c != Pgl2Class::Hyperbolic)
      fail(ErrorCode::NotHyperbolic, "boundary " + std::to_string(j + 1) + " is " + std::string(pgl2_class_name(c)));
  }
}

// Letter images and the fixed points of alpha_q in the frame sending the
// repelling point of alpha_j to 0 and the attracting one to infinity.
struct GeoFrame {
  std::vector<LVec> letters;
  LVec omega_p, omega_m;
};

class GeoFrames {
 public:
  GeoFrames(const Representation& rep, int j, int q, long n0) : rep_(rep), j_(j), q_(q), n0_(n0) {
    for (int x = 0; x < 2 * rep.surface().rank(); ++x)
      letters_.push_back(rep.image_of_letter(static_cast<Letter>(x)).integral_normalized().entries());
  }

  const GeoFrame& get(std::size_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    while (frames_.size() <= k) {
      long n = n0_ << frames_.size();
      if (n > precision_cap() || frames_.size() > 40)
        fail(ErrorCode::PrecisionExhausted, "interval undetermined at precision cap " + std::to_string(precision_cap()));
      frames_.push_back(build(n));
    }
    return *frames_[k];
  }

 private:
  std::unique_ptr<GeoFrame> build(long n) const {
    const EigenData& ej = rep_.boundary_eigen(j_);
    const EigenData& eq = rep_.boundary_eigen(q_);
    LVec att = approx_all(ej.attracting_point.coords, n), rep = approx_all(ej.repelling_point.coords, n);
    if (!normalize(att) || !normalize(rep)) fail(ErrorCode::PrecisionExhausted, "boundary fixed point undetermined");
    LVec frame = {att[0], rep[0], att[1], rep[1]};
    LVec inv = {rep[1], -rep[0], -att[1], att[0]};
    auto f = std::make_unique<GeoFrame>();
    for (const auto& m : letters_) {
      LVec h = mat_mul(mat_mul(inv, approx_all(m, n), 2), frame, 2);
      if (!normalize(h)) fail(ErrorCode::PrecisionExhausted, "conjugated generator undetermined");
      f->letters.push_back(std::move(h));
    }
    f->omega_p = mat_vec(inv, approx_all(eq.attracting_point.coords, n), 2);
    f->omega_m = mat_vec(inv, approx_all(eq.repelling_point.coords, n), 2);
    if (!normalize(f->omega_p) || !normalize(f->omega_m)) fail(ErrorCode::PrecisionExhausted, "fixed point undetermined");
    return f;
  }

  const Representation& rep_;
  int j_, q_;
  long n0_;
  std::vector<std::vector<FieldElement>> letters_;
  std::mutex mu_;
  std::deque<std::unique_ptr<GeoFrame>> frames_;
};

// Affine coordinate valuation of a point of P^1, if determined and not an end.
std::optional<long> coordinate_valuation(const LVec& y) {
  if (y[0].is_zero() || y[1].is_zero()) return std::nullopt;
  return y[0].valuation() - y[1].valuation();
}

long interval_measure(const Representation& rep, GeoFrames& frames, const Word& w) {
  const FieldModel& m = rep.model();
  for (std::size_t k = 0;; ++k) {
    const GeoFrame& f = frames.get(k);
    LVec yp = f.omega_p, ym = f.omega_m;
    bool ok = true;
    for (std::size_t i = w.size(); ok && i-- > 0;) {
      yp = mat_vec(f.letters[w[i]], yp, 2);
      ym = mat_vec(f.letters[w[i]], ym, 2);
      ok = normalize(yp) && normalize(ym);
    }
    if (!ok) continue;
    auto vp = coordinate_valuation(yp), vm = coordinate_valuation(ym);
    if (!vp || !vm) continue;
    AxisInterval iv{axis_point(m, Q64(*vp)), axis_point(m, Q64(*vm))};
    return static_cast<long>(iv.signed_measure().numerator());
  }
}

}  // namespace

long geometric_length(const Representation& rep, int j) {
  if (rep.dim() != 2) fail(ErrorCode::Dimension, "the geometric pipeline needs d = 2");
  const EigenData& e = rep.boundary_eigen(j);
  const Vec& a = e.attracting_point.coords;
  const Vec& r = e.repelling_point.coords;
  ProjMatrix g = rep.image(rep.boundary_word(j));
  // Conjugate into the frame (a, r), then move the Gauss point.
  Vec frame = {a[0], r[0], a[1], r[1]};
  Vec inv = {r[1], -r[0], -a[1], a[0]};
  auto mul = [](const Vec& x, const Vec& y) {
    return Vec{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  Vec h = mul(mul(inv, g.entries()), frame);
  FieldElement y0 = h[0] + h[1], y1 = h[2] + h[3];
  BerkPoint moved = axis_point(rep.model(), Q64(y0.valuation().value() - y1.valuation().value()));
  Distance d = dist(moved, BerkPoint::gauss(rep.model()));
  return static_cast<long>(d.value.numerator());
}

std::vector<TermRecord> geometric_terms(const Representation& rep, int max_len, bool keep_zero) {
  require_hyperbolic(rep);
  BoundarySystem sys = rep.boundary_system();
  for (int j = 0; j < rep.boundary_count(); ++j) sys.words[static_cast<std::size_t>(j)] = rep.boundary_word(j);
  const long n0 = 32 + 4L * std::max(max_len, 0);
  std::vector<TermRecord> out;
  for (int j = 0; j < rep.boundary_count(); ++j)
    for (int q = 0; q < rep.boundary_count(); ++q) {
      GeoFrames frames(rep, j, q, n0);
      std::vector<DoubleCosetRep> reps = enumerate_double_cosets(sys, j, q, max_len);
      std::vector<long> values(reps.size());
      std::vector<std::exception_ptr> errors(reps.size());
#pragma omp parallel for schedule(dynamic, 64)
      for (std::size_t i = 0; i < reps.size(); ++i) {
        try {
          values[i] = interval_measure(rep, frames, reps[i].w);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (errors[i]) {
          try {
            std::rethrow_exception(errors[i]);
          } catch (const Error& e) {
            fail(e.code(), e.detail() + " (j=" + std::to_string(j + 1) + " q=" + std::to_string(q + 1) + " w=" + reps[i].w.to_string() + ")");
          }
        }
        if (values[i] != 0 || keep_zero) out.push_back({j, q, reps[i].w, values[i]});
      }
    }
  std::sort(out.begin(), out.end(), term_order);
  return out;
}

IdentityReport geometric_verify(const Representation& rep) {
  require_hyperbolic(rep);
  IdentityReport r;
  for (int j = 0; j < rep.boundary_count(); ++j) r.lhs += geometric_length(rep, j);
  r.max_len_scanned = std::max(rep.cutoff, -1);
  r.window = rep.window;
  r.terms = geometric_terms(rep, rep.cutoff, false);
  finalize_report(r);
  return r;
}

}  // namespace nabas
