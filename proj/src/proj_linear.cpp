#include "nabas/proj_linear.hpp"

#include <algorithm>
#include <limits>

namespace nabas {

namespace {

FieldElement zero_of(const FieldModel& m) { return FieldElement::integer(m, 0); }
FieldElement one_of(const FieldModel& m) { return FieldElement::integer(m, 1); }

void require_dim(const ProjMatrix& m, int d, const char* what) {
  if (m.dim() != d) fail(ErrorCode::Dimension, std::string(what) + " needs d = " + std::to_string(d) + ", got " + std::to_string(m.dim()));
}

using Mat = std::vector<FieldElement>;

Mat mat_mul(const Mat& a, const Mat& b, int d, const FieldModel& m) {
  Mat out(static_cast<std::size_t>(d * d), zero_of(m));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const FieldElement& x = a[static_cast<std::size_t>(i * d + k)];
      if (x.is_exact_zero()) continue;
      for (int j = 0; j < d; ++j) {
        auto& o = out[static_cast<std::size_t>(i * d + j)];
        o = o + x * b[static_cast<std::size_t>(k * d + j)];
      }
    }
  return out;
}

// Matrices B_0..B_{d-1} with adj(lambda I - M) = sum_i B_i lambda^i.
std::vector<Mat> adjugate_pencil(const ProjMatrix& m, const Vec& charpoly) {
  int d = m.dim();
  const auto& fm = m.model();
  std::vector<Mat> b(static_cast<std::size_t>(d));
  Mat id(static_cast<std::size_t>(d * d), zero_of(fm));
  for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i * d + i)] = one_of(fm);
  b[static_cast<std::size_t>(d - 1)] = id;
  for (int i = d - 1; i >= 1; --i) {
    Mat next = mat_mul(m.entries(), b[static_cast<std::size_t>(i)], d, fm);
    for (int k = 0; k < d; ++k) {
      auto& e = next[static_cast<std::size_t>(k * d + k)];
      e = e + charpoly[static_cast<std::size_t>(i)];
    }
    b[static_cast<std::size_t>(i - 1)] = std::move(next);
  }
  return b;
}

}  // namespace

// ---- ProjMatrix -------------------------------------------------------------

ProjMatrix::ProjMatrix(FieldModel m, int d, std::vector<FieldElement> entries, bool)
    : model_(m), d_(d), e_(std::move(entries)) {}

ProjMatrix::ProjMatrix(FieldModel m, int d, std::vector<FieldElement> entries)
    : model_(m), d_(d), e_(std::move(entries)) {
  if (d < 2) fail(ErrorCode::Dimension, "matrix dimension must be at least 2");
  if (e_.size() != static_cast<std::size_t>(d * d))
    fail(ErrorCode::Dimension, "expected " + std::to_string(d * d) + " entries, got " + std::to_string(e_.size()));
  for (const auto& x : e_) {
    if (!(x.model() == m)) fail(ErrorCode::ModelMismatch, "matrix entry from another field model");
    if (!x.is_exact()) fail(ErrorCode::InvalidArgument, "matrix entries must be exact");
  }
  if (determinant().is_exact_zero()) fail(ErrorCode::InvalidArgument, "singular matrix");
}

ProjMatrix ProjMatrix::identity(const FieldModel& m, int d) {
  std::vector<FieldElement> e(static_cast<std::size_t>(d * d), zero_of(m));
  for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i * d + i)] = one_of(m);
  return ProjMatrix(m, d, std::move(e));
}

ProjMatrix ProjMatrix::from_integers(const FieldModel& m, int d, const std::vector<long>& entries) {
  std::vector<FieldElement> e;
  for (long x : entries) e.push_back(FieldElement::integer(m, x));
  return ProjMatrix(m, d, std::move(e));
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  if (!(model_ == o.model_)) fail(ErrorCode::ModelMismatch, "matrix product across models");
  if (d_ != o.d_) fail(ErrorCode::Dimension, "matrix product of different sizes");
  return ProjMatrix(model_, d_, mat_mul(e_, o.e_, d_, model_), true);
}

ProjMatrix ProjMatrix::adjugate() const {
  if (d_ == 2) return ProjMatrix(model_, 2, {at(1, 1), -at(0, 1), -at(1, 0), at(0, 0)}, true);
  Vec c = characteristic_polynomial(*this);
  Mat b0 = adjugate_pencil(*this, c).front();
  if (d_ % 2 == 0)
    for (auto& x : b0) x = -x;
  return ProjMatrix(model_, d_, std::move(b0), true);
}

ProjMatrix ProjMatrix::transpose() const {
  Mat t(e_.size());
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) t[static_cast<std::size_t>(j * d_ + i)] = at(i, j);
  return ProjMatrix(model_, d_, std::move(t), true);
}

FieldElement ProjMatrix::determinant() const {
  Mat a = e_;
  FieldElement det = one_of(model_);
  for (int k = 0; k < d_; ++k) {
    int piv = -1;
    for (int i = k; i < d_; ++i)
      if (!a[static_cast<std::size_t>(i * d_ + k)].is_exact_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return zero_of(model_);
    if (piv != k) {
      for (int j = 0; j < d_; ++j) std::swap(a[static_cast<std::size_t>(piv * d_ + j)], a[static_cast<std::size_t>(k * d_ + j)]);
      det = -det;
    }
    const FieldElement pivot = a[static_cast<std::size_t>(k * d_ + k)];
    det = det * pivot;
    FieldElement inv = pivot.inverse();
    for (int i = k + 1; i < d_; ++i) {
      FieldElement f = a[static_cast<std::size_t>(i * d_ + k)] * inv;
      if (f.is_exact_zero()) continue;
      for (int j = k; j < d_; ++j) {
        auto& x = a[static_cast<std::size_t>(i * d_ + j)];
        x = x - f * a[static_cast<std::size_t>(k * d_ + j)];
      }
    }
  }
  return det;
}

FieldElement ProjMatrix::trace() const {
  FieldElement t = zero_of(model_);
  for (int i = 0; i < d_; ++i) t = t + at(i, i);
  return t;
}

bool ProjMatrix::is_scalar() const {
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      if (i != j && !at(i, j).is_exact_zero()) return false;
      if (i == j && !at(i, i).exact_equal(at(0, 0))) return false;
    }
  return true;
}

ProjMatrix ProjMatrix::integral_normalized() const {
  long lo = std::numeric_limits<long>::max();
  for (const FieldElement& e : e_) {
    Valuation v = e.valuation();
    if (!v.is_infinite()) lo = std::min(lo, v.value());
  }
  FieldElement pi = FieldElement::uniformizer(model_);
  FieldElement step = lo > 0 ? pi.inverse() : pi;
  FieldElement scale = one_of(model_);
  for (long k = 0; k < std::abs(lo); ++k) scale = scale * step;
  std::vector<FieldElement> out;
  for (const FieldElement& e : e_) out.push_back(e * scale);
  return ProjMatrix(model_, d_, std::move(out), true);
}

bool ProjMatrix::projectively_equal(const ProjMatrix& o) const {
  if (d_ != o.d_ || !(model_ == o.model_)) return false;
  // All 2x2 cross products of the flattened entry vectors vanish.
  std::size_t n = e_.size();
  std::size_t ref = n;
  for (std::size_t i = 0; i < n; ++i)
    if (!e_[i].is_exact_zero()) {
      ref = i;
      break;
    }
  if (ref == n || o.e_[ref].is_exact_zero()) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!(e_[i] * o.e_[ref]).exact_equal(o.e_[i] * e_[ref])) return false;
  return true;
}

Vec ProjMatrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != d_) fail(ErrorCode::Dimension, "vector length does not match matrix");
  Vec out(static_cast<std::size_t>(d_), zero_of(model_));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      const auto& a = at(i, j);
      if (a.is_exact_zero()) continue;
      out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + a * v[static_cast<std::size_t>(j)];
    }
  return out;
}

Vec ProjMatrix::apply_left(const Vec& row) const {
  if (static_cast<int>(row.size()) != d_) fail(ErrorCode::Dimension, "vector length does not match matrix");
  Vec out(static_cast<std::size_t>(d_), zero_of(model_));
  for (int j = 0; j < d_; ++j)
    for (int i = 0; i < d_; ++i) {
      const auto& a = at(i, j);
      if (a.is_exact_zero()) continue;
      out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(i)] * a;
    }
  return out;
}

std::string ProjMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < d_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < d_; ++j) s += (j ? ", " : "") + at(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

// ---- points -----------------------------------------------------------------

FieldElement pairing(const DualPoint& phi, const ProjPoint& omega) {
  if (phi.coords.size() != omega.coords.size() || phi.coords.empty()) fail(ErrorCode::Dimension, "pairing of mismatched dimensions");
  FieldElement s = phi.coords[0] * omega.coords[0];
  for (std::size_t i = 1; i < phi.coords.size(); ++i) s = s + phi.coords[i] * omega.coords[i];
  return s;
}

ProjPoint apply(const ProjMatrix& g, const ProjPoint& x) { return {g.apply(x.coords)}; }

DualPoint apply_dual(const ProjMatrix& g, const DualPoint& phi) { return {g.adjugate().apply_left(phi.coords)}; }

bool projectively_equal(const ProjPoint& a, const ProjPoint& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    for (std::size_t j = i + 1; j < a.coords.size(); ++j)
      if (!(a.coords[i] * b.coords[j]).exact_equal(a.coords[j] * b.coords[i])) return false;
  return true;
}

ProjPoint p1_point(const FieldElement& z) { return {{z, one_of(z.model())}}; }
ProjPoint p1_infinity(const FieldModel& m) { return {{one_of(m), zero_of(m)}}; }

DualPoint p1_dual(const ProjPoint& x) {
  if (x.coords.size() != 2) fail(ErrorCode::Dimension, "P^1 dual of a point in higher dimension");
  return {{-x.coords[1], x.coords[0]}};
}

// ---- classification ---------------------------------------------------------

std::string_view pgl2_class_name(Pgl2Class c) {
  switch (c) {
    case Pgl2Class::Hyperbolic: return "HYPERBOLIC";
    case Pgl2Class::Parabolic: return "PARABOLIC";
    case Pgl2Class::StrictlyElliptic: return "STRICTLY_ELLIPTIC";
    case Pgl2Class::Identity: return "IDENTITY";
  }
  return "UNKNOWN";
}

Pgl2Class classify_pgl2(const ProjMatrix& m) {
  require_dim(m, 2, "classify_pgl2");
  if (m.is_scalar()) return Pgl2Class::Identity;
  FieldElement t = m.trace(), det = m.determinant();
  FieldElement t2 = t * t;
  if (t2.valuation() < det.valuation()) return Pgl2Class::Hyperbolic;
  if ((t2 - FieldElement::integer(m.model(), 4) * det).is_exact_zero()) return Pgl2Class::Parabolic;
  return Pgl2Class::StrictlyElliptic;
}

// ---- characteristic polynomial ----------------------------------------------

Vec characteristic_polynomial(const ProjMatrix& m) {
  const int n = m.dim();
  const auto& fm = m.model();
  // Berkowitz: p_r = T_r p_{r-1}, coefficients stored highest degree first.
  std::vector<FieldElement> p{one_of(fm)};
  for (int r = 1; r <= n; ++r) {
    int k = r - 1;  // the new row/column index
    std::vector<FieldElement> t;
    t.push_back(one_of(fm));
    t.push_back(-m.at(k, k));
    // Column C = A[0..k-1][k], row R = A[k][0..k-1]; powers of the leading block.
    std::vector<FieldElement> col(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) col[static_cast<std::size_t>(i)] = m.at(i, k);
    for (int e = 0; e + 2 <= r; ++e) {
      FieldElement s = zero_of(fm);
      for (int i = 0; i < k; ++i) s = s + m.at(k, i) * col[static_cast<std::size_t>(i)];
      t.push_back(-s);
      std::vector<FieldElement> next(static_cast<std::size_t>(k), zero_of(fm));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) next[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(i)] + m.at(i, j) * col[static_cast<std::size_t>(j)];
      col = std::move(next);
    }
    std::vector<FieldElement> q(static_cast<std::size_t>(r + 1), zero_of(fm));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < r && j <= i; ++j) q[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)] + t[static_cast<std::size_t>(i - j)] * p[static_cast<std::size_t>(j)];
    p = std::move(q);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

// ---- eigen data -------------------------------------------------------------

namespace {

FieldElement root_or_exact(const Vec& charpoly, RootChoice which) {
  FieldElement r;
  try {
    r = extremal_root(charpoly, which);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoSimpleSegment) fail(ErrorCode::NotBiproximal, e.detail());
    throw;
  }
  long v = r.valuation().value();
  if (auto exact = reconstruct_exact(r.approx(v + 64))) {
    if (evaluate_poly(charpoly, *exact).is_exact_zero() && exact->valuation() == Valuation::finite(v)) return *exact;
  }
  return r;
}

struct Eigenvectors {
  ProjPoint right;
  DualPoint left;
};

Eigenvectors eigenvectors(const ProjMatrix& m, const std::vector<Mat>& pencil, const FieldElement& lambda) {
  const int d = m.dim();
  std::vector<FieldElement> adj(static_cast<std::size_t>(d * d));
  for (std::size_t e = 0; e < adj.size(); ++e) {
    Vec coeffs;
    for (const auto& b : pencil) coeffs.push_back(b[e]);
    adj[e] = evaluate_poly(coeffs, lambda);
  }
  // adj(lambda I - M) has rank one; any entry certified nonzero picks a
  // nonzero column (right eigenvector) and row (left eigenvector).
  std::size_t chosen = adj.size();
  if (lambda.is_exact()) {
    for (std::size_t e = 0; e < adj.size(); ++e)
      if (!adj[e].is_exact_zero()) {
        chosen = e;
        break;
      }
  } else {
    const long cap = precision_cap();
    for (long n = 8; chosen == adj.size(); n *= 2) {
      n = std::min(n, cap);
      long best = std::numeric_limits<long>::max();
      for (std::size_t e = 0; e < adj.size(); ++e) {
        Local a = adj[e].approx(n);
        if (!a.is_zero() && a.valuation() < best) {
          best = a.valuation();
          chosen = e;
        }
      }
      if (chosen == adj.size() && n >= cap) fail(ErrorCode::PrecisionExhausted, "eigenvector undetermined at precision cap");
    }
  }
  if (chosen == adj.size()) fail(ErrorCode::NotBiproximal, "eigenvalue is not simple");
  int r = static_cast<int>(chosen) / d, c = static_cast<int>(chosen) % d;
  Eigenvectors out;
  for (int i = 0; i < d; ++i) {
    out.right.coords.push_back(adj[static_cast<std::size_t>(i * d + c)]);
    out.left.coords.push_back(adj[static_cast<std::size_t>(r * d + i)]);
  }
  return out;
}

}  // namespace

EigenData eigen_data(const ProjMatrix& m) {
  Vec c = characteristic_polynomial(m);
  NewtonPolygon np = newton_polygon_of(c);
  if (np.segments.size() < 2 || np.segments.front().length != 1 || np.segments.back().length != 1)
    fail(ErrorCode::NotBiproximal, "extreme Newton segments are not simple");
  FieldElement top = root_or_exact(c, RootChoice::Top);
  FieldElement bottom = root_or_exact(c, RootChoice::Bottom);
  auto pencil = adjugate_pencil(m, c);
  Eigenvectors et = eigenvectors(m, pencil, top);
  Eigenvectors eb = eigenvectors(m, pencil, bottom);
  EigenData out;
  out.attracting_point = et.right;
  out.repelling_point = eb.right;
  out.attracting_hyperplane = eb.left;
  out.repelling_hyperplane = et.left;
  out.top_valuation = top.valuation().value();
  out.bottom_valuation = bottom.valuation().value();
  out.top_eigenvalue = top;
  out.bottom_eigenvalue = bottom;
  return out;
}

// ---- cross ratios, lengths, periods -----------------------------------------

FieldElement cross_ratio(const DualPoint& phi, const DualPoint& phi2, const ProjPoint& omega, const ProjPoint& omega2) {
  FieldElement d1 = pairing(phi, omega2), d2 = pairing(phi2, omega);
  if (d1.is_exact_zero() || d2.is_exact_zero()) fail(ErrorCode::DegeneratePairing, "denominator pairing vanishes");
  return pairing(phi, omega) * pairing(phi2, omega2) / (d1 * d2);
}

long cross_ratio_valuation(const DualPoint& phi, const DualPoint& phi2, const ProjPoint& omega, const ProjPoint& omega2) {
  Valuation d1 = pairing(phi, omega2).valuation(), d2 = pairing(phi2, omega).valuation();
  if (d1.is_infinite() || d2.is_infinite()) fail(ErrorCode::DegeneratePairing, "denominator pairing vanishes");
  Valuation n1 = pairing(phi, omega).valuation(), n2 = pairing(phi2, omega2).valuation();
  if (n1.is_infinite() || n2.is_infinite()) fail(ErrorCode::DegeneratePairing, "cross ratio vanishes");
  return d1.value() + d2.value() - n1.value() - n2.value();
}

Q64 translation_length(const ProjMatrix& m) {
  auto r = newton_polygon_of(characteristic_polynomial(m)).root_valuations();
  return r.back().valuation - r.front().valuation;
}

long period(const ProjMatrix& m, const ProjPoint& omega) {
  if (m.is_scalar()) return 0;
  EigenData e = eigen_data(m);
  return cross_ratio_valuation(e.attracting_hyperplane, e.repelling_hyperplane, omega, apply(m, omega));
}

// ---- Cartan valuations ------------------------------------------------------

CartanValuations cartan_valuations(const ProjMatrix& m) {
  const int d = m.dim();
  Mat a = m.entries();
  long shift = std::numeric_limits<long>::max();
  for (const auto& x : a) {
    Valuation v = x.valuation();
    if (!v.is_infinite()) shift = std::min(shift, v.value());
  }
  CartanValuations out;
  for (int k = 0; k < d; ++k) {
    int pi = -1, pj = -1;
    Valuation best = Valuation::infinity();
    for (int i = k; i < d; ++i)
      for (int j = k; j < d; ++j) {
        Valuation v = a[static_cast<std::size_t>(i * d + j)].valuation();
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best.is_infinite()) fail(ErrorCode::InvalidArgument, "singular matrix in Smith reduction");
    for (int j = 0; j < d; ++j) std::swap(a[static_cast<std::size_t>(pi * d + j)], a[static_cast<std::size_t>(k * d + j)]);
    for (int i = 0; i < d; ++i) std::swap(a[static_cast<std::size_t>(i * d + pj)], a[static_cast<std::size_t>(i * d + k)]);
    FieldElement inv = a[static_cast<std::size_t>(k * d + k)].inverse();
    for (int i = k + 1; i < d; ++i) {
      FieldElement f = a[static_cast<std::size_t>(i * d + k)] * inv;
      if (f.is_exact_zero()) continue;
      for (int j = k; j < d; ++j) a[static_cast<std::size_t>(i * d + j)] = a[static_cast<std::size_t>(i * d + j)] - f * a[static_cast<std::size_t>(k * d + j)];
    }
    for (int j = k + 1; j < d; ++j) {
      FieldElement f = a[static_cast<std::size_t>(k * d + j)] * inv;
      if (f.is_exact_zero()) continue;
      for (int i = k; i < d; ++i) a[static_cast<std::size_t>(i * d + j)] = a[static_cast<std::size_t>(i * d + j)] - f * a[static_cast<std::size_t>(i * d + k)];
    }
    out.raw.push_back(best.value());
  }
  std::sort(out.raw.begin(), out.raw.end());
  for (long v : out.raw) out.vals.push_back(v - shift);
  return out;
}

std::vector<GapRow> anosov_gap_report(const std::vector<ProjMatrix>& images, int max_len) {
  std::vector<GapRow> rows;
  if (images.empty() || max_len < 1) return rows;
  std::vector<ProjMatrix> letters;
  for (const auto& g : images) {
    letters.push_back(g);
    letters.push_back(g.adjugate());
  }
  const long none = std::numeric_limits<long>::max();
  std::vector<long> best(static_cast<std::size_t>(max_len + 1), none);
  struct Frame {
    ProjMatrix prod;
    int last;
    int len;
  };
  std::vector<Frame> stack;
  stack.push_back({ProjMatrix::identity(images[0].model(), images[0].dim()), -1, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.len > 0) {
      auto& b = best[static_cast<std::size_t>(f.len)];
      b = std::min(b, cartan_valuations(f.prod).gap());
    }
    if (f.len == max_len) continue;
    for (int x = static_cast<int>(letters.size()) - 1; x >= 0; --x) {
      if (f.last >= 0 && (x ^ 1) == f.last) continue;
      stack.push_back({f.prod * letters[static_cast<std::size_t>(x)], x, f.len + 1});
    }
  }
  for (int len = 1; len <= max_len; ++len) rows.push_back({len, best[static_cast<std::size_t>(len)]});
  return rows;
}

// ---- Veronese ---------------------------------------------------------------

namespace {

std::vector<mpz_class> binomials(int n) {
  std::vector<mpz_class> b(static_cast<std::size_t>(n + 1), 1);
  for (int k = 1; k <= n; ++k) b[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  return b;
}

FieldElement power(const FieldElement& x, int e) {
  FieldElement r = one_of(x.model());
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

// Coefficients of x^{n-k} y^k in (a x + b y)^n.
Vec binomial_expansion(const FieldElement& a, const FieldElement& b, int n) {
  auto bin = binomials(n);
  Vec out;
  for (int k = 0; k <= n; ++k)
    out.push_back(FieldElement::rational(a.model(), mpq_class(bin[static_cast<std::size_t>(k)])) * power(a, n - k) * power(b, k));
  return out;
}

Vec poly_mul(const Vec& p, const Vec& q) {
  const auto& m = p.front().model();
  Vec out(p.size() + q.size() - 1, zero_of(m));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + p[i] * q[j];
  return out;
}

}  // namespace

ProjMatrix veronese(const ProjMatrix& m, int d_target) {
  require_dim(m, 2, "veronese");
  if (d_target < 2) fail(ErrorCode::Dimension, "Veronese target dimension below 2");
  const int n = d_target - 1;
  std::vector<FieldElement> e;
  for (int i = 0; i <= n; ++i) {
    Vec row = poly_mul(binomial_expansion(m.at(0, 0), m.at(0, 1), n - i), binomial_expansion(m.at(1, 0), m.at(1, 1), i));
    e.insert(e.end(), row.begin(), row.end());
  }
  return ProjMatrix(m.model(), d_target, std::move(e));
}

ProjPoint veronese_point(const ProjPoint& x, int d_target) {
  if (x.coords.size() != 2) fail(ErrorCode::Dimension, "Veronese of a point outside P^1");
  const int n = d_target - 1;
  ProjPoint out;
  for (int k = 0; k <= n; ++k) out.coords.push_back(power(x.coords[0], n - k) * power(x.coords[1], k));
  return out;
}

DualPoint veronese_dual(const DualPoint& phi, int d_target) {
  if (phi.coords.size() != 2) fail(ErrorCode::Dimension, "Veronese of a functional outside P^1");
  return {binomial_expansion(phi.coords[0], phi.coords[1], d_target - 1)};
}

}  // namespace nabas
