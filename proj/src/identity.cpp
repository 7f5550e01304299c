#include "nabas/identity.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "local_vec.hpp"
#include "nabas/error.hpp"

namespace nabas {

struct Representation::Cache {
  explicit Cache(std::size_t n) : flags(n), eigen(n) {}
  std::vector<std::once_flag> flags;
  std::vector<std::optional<EigenData>> eigen;
};

Representation::Representation(FieldModel model, int d, SurfaceType surface, std::vector<ProjMatrix> images,
                               std::optional<BoundarySystem> boundary)
    : model_(model), d_(d), images_(std::move(images)) {
  validate_surface(surface);
  boundary_ = boundary ? std::move(*boundary) : boundary_words(surface);
  boundary_.surface = surface;
  if (static_cast<int>(boundary_.words.size()) != surface.boundaries)
    fail(ErrorCode::BadSurface, "expected " + std::to_string(surface.boundaries) + " boundary words");
  for (const Word& w : boundary_.words) {
    if (w.empty()) fail(ErrorCode::BadSurface, "boundary word is trivial");
    for (Letter x : w.letters())
      if ((x >> 1) >= surface.rank()) fail(ErrorCode::BadLetter, "boundary word " + w.to_string() + " exceeds the rank");
  }
  if (static_cast<int>(images_.size()) != surface.rank())
    fail(ErrorCode::BadSurface, "expected " + std::to_string(surface.rank()) + " generator images, got " + std::to_string(images_.size()));
  if (d_ < 2) fail(ErrorCode::Dimension, "dimension must be at least 2");
  for (const ProjMatrix& m : images_) {
    if (m.dim() != d_) fail(ErrorCode::Dimension, "generator image has dimension " + std::to_string(m.dim()));
    if (!(m.model() == model_)) fail(ErrorCode::ModelMismatch, "generator image over " + m.model().to_string());
  }
  inverted_.assign(boundary_.words.size(), false);
  cache_ = std::make_shared<Cache>(boundary_.words.size());
}

Word Representation::boundary_word(int j) const {
  const Word& w = boundary_.words.at(static_cast<std::size_t>(j));
  return inverted(j) ? invert(w) : w;
}

void Representation::set_inverted(int j, bool flag) {
  inverted_.at(static_cast<std::size_t>(j)) = flag;
  cache_ = std::make_shared<Cache>(boundary_.words.size());
}

ProjMatrix Representation::image_of_letter(Letter x) const {
  const ProjMatrix& m = images_.at(static_cast<std::size_t>(x >> 1));
  return (x & 1) ? m.adjugate() : m;
}

ProjMatrix Representation::image(const Word& w) const {
  ProjMatrix out = ProjMatrix::identity(model_, d_);
  for (Letter x : w.letters()) out = out * image_of_letter(x);
  return out;
}

const EigenData& Representation::boundary_eigen(int j) const {
  auto idx = static_cast<std::size_t>(j);
  if (j < 0 || idx >= cache_->eigen.size()) fail(ErrorCode::InvalidArgument, "boundary index out of range");
  std::call_once(cache_->flags[idx], [&] { cache_->eigen[idx] = eigen_data(image(boundary_word(j))); });
  return *cache_->eigen[idx];
}

void Representation::check_well_formed() const {
  for (int j = 0; j < boundary_count(); ++j) {
    try {
      boundary_eigen(j);
    } catch (const Error& e) {
      fail(e.code(), "boundary " + std::to_string(j + 1) + ": " + e.detail());
    }
  }
}

bool term_order(const TermRecord& a, const TermRecord& b) {
  if (a.j != b.j) return a.j < b.j;
  if (a.q != b.q) return a.q < b.q;
  return a.w.shortlex_less(b.w);
}

std::string_view status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Verified: return "VERIFIED";
    case VerifyStatus::Partial: return "PARTIAL";
    case VerifyStatus::Mismatch: return "MISMATCH";
  }
  return "?";
}

void finalize_report(IdentityReport& r) {
  r.rhs = 0;
  r.nonzero_count = 0;
  bool quiet_window = r.max_len_scanned >= r.window && r.window >= 0;
  for (const TermRecord& t : r.terms) {
    r.rhs += t.value;
    if (t.value != 0) {
      ++r.nonzero_count;
      if (static_cast<long>(t.w.size()) >= r.max_len_scanned - r.window) quiet_window = false;
    }
  }
  if (!quiet_window)
    r.status = VerifyStatus::Partial;
  else
    r.status = r.rhs == r.lhs ? VerifyStatus::Verified : VerifyStatus::Mismatch;
}

long lhs(const Representation& rep) {
  long total = 0;
  for (int j = 0; j < rep.boundary_count(); ++j) {
    Q64 l = translation_length(rep.image(rep.boundary_word(j)));
    if (l.denominator() != 1) fail(ErrorCode::NotBiproximal, "boundary " + std::to_string(j + 1) + " has non-integral length");
    total += static_cast<long>(l.numerator());
  }
  return total;
}

namespace {

CosetCanonicalizer canonicalizer(const Representation& rep, int j, int q) {
  return CosetCanonicalizer(rep.boundary_word(j), rep.boundary_word(q));
}

void check_pair(const Representation& rep, int j, int q) {
  if (j < 0 || q < 0 || j >= rep.boundary_count() || q >= rep.boundary_count())
    fail(ErrorCode::InvalidArgument, "boundary index out of range");
}

std::string where(int j, int q, std::span<const Letter> w) {
  return " (j=" + std::to_string(j + 1) + " q=" + std::to_string(q + 1) + " w=" + Word(w).to_string() + ")";
}

}  // namespace

long term(const Representation& rep, int j, int q, const Word& w) {
  check_pair(rep, j, q);
  if (j == q && canonicalizer(rep, j, q).in_identity_coset(w))
    fail(ErrorCode::InvalidArgument, "the identity coset carries no term when j = q");
  const EigenData& ej = rep.boundary_eigen(j);
  const EigenData& eq = rep.boundary_eigen(q);
  ProjMatrix g = rep.image(w);
  return cross_ratio_valuation(ej.attracting_hyperplane, ej.repelling_hyperplane, apply(g, eq.attracting_point),
                               apply(g, eq.repelling_point));
}

long phi(const Representation& rep, int j, const ProjPoint& x, const ProjPoint& z) {
  const EigenData& e = rep.boundary_eigen(j);
  return cross_ratio_valuation(e.attracting_hyperplane, e.repelling_hyperplane, x, z);
}

// ---- parallel scan ----------------------------------------------------------

namespace {

using detail::approx_all;
using detail::LVec;
using detail::mat_vec;
using detail::normalize;

std::optional<long> pair_valuation(const LVec& f, const LVec& v) {
  Local s = f[0] * v[0];
  for (std::size_t k = 1; k < f.size(); ++k) s = s + f[k] * v[k];
  if (s.is_zero()) return std::nullopt;
  return s.valuation();
}

struct Frame {
  long n = 0;
  std::vector<LVec> letters;
  LVec phi, phi2, omega_p, omega_m;
};

// Approximations of the data of one (j, q) pair at precisions n0 * 2^k.
class FrameSet {
 public:
  FrameSet(const Representation& rep, int j, int q, long n0) : rep_(rep), j_(j), q_(q), n0_(n0) {
    for (int x = 0; x < 2 * rep.surface().rank(); ++x) letters_.push_back(rep.image_of_letter(static_cast<Letter>(x)).integral_normalized().entries());
  }

  const Frame& get(std::size_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    while (frames_.size() <= k) {
      long n = n0_ << frames_.size();
      if (n > precision_cap() || frames_.size() > 40)
        fail(ErrorCode::PrecisionExhausted, "term undetermined at precision cap " + std::to_string(precision_cap()));
      frames_.push_back(build(n));
    }
    return *frames_[k];
  }

  bool exact_data() const {
    const EigenData& ej = rep_.boundary_eigen(j_);
    const EigenData& eq = rep_.boundary_eigen(q_);
    auto exact = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_exact(); }); };
    return exact(ej.attracting_hyperplane.coords) && exact(ej.repelling_hyperplane.coords) && exact(eq.attracting_point.coords) &&
           exact(eq.repelling_point.coords);
  }

 private:
  std::unique_ptr<Frame> build(long n) const {
    auto f = std::make_unique<Frame>();
    f->n = n;
    for (const auto& m : letters_) f->letters.push_back(approx_all(m, n));
    const EigenData& ej = rep_.boundary_eigen(j_);
    const EigenData& eq = rep_.boundary_eigen(q_);
    f->phi = approx_all(ej.attracting_hyperplane.coords, n);
    f->phi2 = approx_all(ej.repelling_hyperplane.coords, n);
    f->omega_p = approx_all(eq.attracting_point.coords, n);
    f->omega_m = approx_all(eq.repelling_point.coords, n);
    if (!normalize(f->phi) || !normalize(f->phi2) || !normalize(f->omega_p) || !normalize(f->omega_m))
      fail(ErrorCode::PrecisionExhausted, "boundary eigen data undetermined at precision " + std::to_string(n));
    return f;
  }

  const Representation& rep_;
  int j_, q_;
  long n0_;
  std::vector<std::vector<FieldElement>> letters_;
  std::mutex mu_;
  std::deque<std::unique_ptr<Frame>> frames_;
};

constexpr std::size_t kMaxWord = 256;

class PairScan {
 public:
  PairScan(const Representation& rep, int j, int q, int max_len, bool keep_zero, FrameSet& frames)
      : rep_(rep), j_(j), q_(q), max_len_(max_len), keep_zero_(keep_zero), d_(rep.dim()), rank_(rep.surface().rank()),
        canon_(canonicalizer(rep, j, q)), frames_(frames) {}

  // Visits the nodes shorter than root_len and returns the unpruned words
  // of length root_len, whose subtrees are scanned by run().
  std::vector<Word> top(int root_len, std::vector<TermRecord>& out) {
    std::vector<Word> roots;
    std::vector<Letter> w;
    top_rec(w, root_len, out, roots);
    return roots;
  }

  void run(const Word& root, std::vector<TermRecord>& out) {
    Letter buf[kMaxWord];
    std::size_t len = root.size();
    std::copy(root.letters().begin(), root.letters().end(), buf + kMaxWord - len);
    LVec vp, vm;
    std::size_t k = vectors_from_scratch({buf + kMaxWord - len, len}, 0, vp, vm);
    visit(buf, len, k, vp, vm, out);
  }

 private:
  void top_rec(std::vector<Letter>& w, int root_len, std::vector<TermRecord>& out, std::vector<Word>& roots) {
    // w is stored reversed here so that prepending is push_back.
    std::vector<Letter> fwd(w.rbegin(), w.rend());
    if (static_cast<int>(w.size()) == root_len) {
      roots.emplace_back(fwd);
      return;
    }
    record(fwd, std::nullopt, out);
    if (static_cast<int>(w.size()) == max_len_ || (!w.empty() && canon_.right_reducible(fwd))) return;
    for (int x = 0; x < 2 * rank_; ++x) {
      Letter l = static_cast<Letter>(x);
      if (!w.empty() && w.back() == inverse_letter(l)) continue;
      w.push_back(l);
      top_rec(w, root_len, out, roots);
      w.pop_back();
    }
  }

  // The term of w if w is canonical, from the given approximations if they
  // determine it, else recomputed at higher precision.
  void record(std::span<const Letter> w, std::optional<std::pair<std::size_t, std::pair<const LVec*, const LVec*>>> at,
              std::vector<TermRecord>& out) {
    if (j_ == q_ && w.empty()) return;
    if (!canon_.is_canonical(w)) return;
    std::optional<long> v;
    std::size_t k = 0;
    if (at) {
      v = term_at(frames_.get(at->first), *at->second.first, *at->second.second);
      k = at->first + 1;
    }
    if (!v) v = term_from_scratch(w, k);
    if (*v != 0 || keep_zero_) out.push_back({j_, q_, Word(w), *v});
  }

  std::optional<long> term_at(const Frame& f, const LVec& vp, const LVec& vm) const {
    auto n1 = pair_valuation(f.phi, vp), n2 = pair_valuation(f.phi2, vm);
    auto d1 = pair_valuation(f.phi, vm), d2 = pair_valuation(f.phi2, vp);
    if (!n1 || !n2 || !d1 || !d2) return std::nullopt;
    return *d1 + *d2 - *n1 - *n2;
  }

  long term_from_scratch(std::span<const Letter> w, std::size_t k) {
    if (k > 0 && frames_.exact_data()) return term(rep_, j_, q_, Word(w));
    for (;; ++k) {
      LVec vp, vm;
      std::size_t got = vectors_from_scratch(w, k, vp, vm);
      if (auto v = term_at(frames_.get(got), vp, vm)) return *v;
      k = got;
      if (frames_.exact_data()) return term(rep_, j_, q_, Word(w));
    }
  }

  // rho(w) applied to the fixed points of alpha_q, at the first precision
  // level >= k that keeps both vectors determined; returns that level.
  std::size_t vectors_from_scratch(std::span<const Letter> w, std::size_t k, LVec& vp, LVec& vm) {
    for (;; ++k) {
      const Frame& f = frames_.get(k);
      vp = f.omega_p;
      vm = f.omega_m;
      bool ok = true;
      for (std::size_t i = w.size(); ok && i-- > 0;) {
        vp = mat_vec(f.letters[w[i]], vp, d_);
        vm = mat_vec(f.letters[w[i]], vm, d_);
        ok = normalize(vp) && normalize(vm);
      }
      if (ok) return k;
    }
  }

  void visit(Letter* buf, std::size_t len, std::size_t k, const LVec& vp, const LVec& vm, std::vector<TermRecord>& out) {
    std::span<const Letter> w(buf + kMaxWord - len, len);
    record(w, std::make_pair(k, std::make_pair(&vp, &vm)), out);
    if (static_cast<int>(len) == max_len_ || len + 1 > kMaxWord) return;
    if (len > 0 && canon_.right_reducible(w)) return;
    for (int x = 0; x < 2 * rank_; ++x) {
      Letter l = static_cast<Letter>(x);
      if (len > 0 && w[0] == inverse_letter(l)) continue;
      buf[kMaxWord - len - 1] = l;
      std::span<const Letter> child(buf + kMaxWord - len - 1, len + 1);
      const Frame& f = frames_.get(k);
      LVec cp = mat_vec(f.letters[l], vp, d_), cm = mat_vec(f.letters[l], vm, d_);
      std::size_t ck = k;
      if (!normalize(cp) || !normalize(cm)) ck = vectors_from_scratch(child, k + 1, cp, cm);
      visit(buf, len + 1, ck, cp, cm, out);
    }
  }

  const Representation& rep_;
  int j_, q_, max_len_;
  bool keep_zero_;
  int d_, rank_;
  CosetCanonicalizer canon_;
  FrameSet& frames_;
};

void sort_terms(std::vector<TermRecord>& t) { std::sort(t.begin(), t.end(), term_order); }

}  // namespace

std::vector<TermRecord> scan_terms(const Representation& rep, int max_len, bool keep_zero) {
  std::vector<TermRecord> out;
  if (max_len < 0) return out;
  if (max_len >= static_cast<int>(kMaxWord)) fail(ErrorCode::InvalidArgument, "cutoff too large");
  const int m = rep.boundary_count();
  const long n0 = 32 + 4L * max_len;
  const int root_len = std::min(max_len, 3);

  struct Task {
    std::size_t pair;
    Word root;
  };
  std::vector<std::unique_ptr<FrameSet>> frames;
  std::vector<std::unique_ptr<PairScan>> scans;
  std::vector<Task> tasks;
  for (int j = 0; j < m; ++j)
    for (int q = 0; q < m; ++q) {
      frames.push_back(std::make_unique<FrameSet>(rep, j, q, n0));
      scans.push_back(std::make_unique<PairScan>(rep, j, q, max_len, keep_zero, *frames.back()));
      try {
        for (Word& r : scans.back()->top(root_len, out)) tasks.push_back({scans.size() - 1, std::move(r)});
      } catch (const Error& e) {
        fail(e.code(), e.detail() + " (j=" + std::to_string(j + 1) + " q=" + std::to_string(q + 1) + ")");
      }
    }

  std::vector<std::vector<TermRecord>> parts(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    try {
      scans[tasks[i].pair]->run(tasks[i].root, parts[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const Error& e) {
        int j = static_cast<int>(tasks[i].pair) / m, q = static_cast<int>(tasks[i].pair) % m;
        fail(e.code(), e.detail() + where(j, q, tasks[i].root.letters()));
      }
    }
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  sort_terms(out);
  return out;
}

std::vector<TermRecord> scan_terms_reference(const Representation& rep, int max_len, bool keep_zero) {
  std::vector<TermRecord> out;
  BoundarySystem sys = rep.boundary_system();
  for (int j = 0; j < rep.boundary_count(); ++j) sys.words[static_cast<std::size_t>(j)] = rep.boundary_word(j);
  for (int j = 0; j < rep.boundary_count(); ++j)
    for (int q = 0; q < rep.boundary_count(); ++q)
      for (const DoubleCosetRep& c : enumerate_double_cosets_reference(sys, j, q, max_len)) {
        long v = term(rep, j, q, c.w);
        if (v != 0 || keep_zero) out.push_back({j, q, c.w, v});
      }
  sort_terms(out);
  return out;
}

namespace {

IdentityReport run_verify(const Representation& rep, bool reference) {
  rep.check_well_formed();
  IdentityReport r;
  r.lhs = lhs(rep);
  r.max_len_scanned = std::max(rep.cutoff, -1);
  r.window = rep.window;
  r.terms = reference ? scan_terms_reference(rep, rep.cutoff, false) : scan_terms(rep, rep.cutoff, false);
  finalize_report(r);
  return r;
}

}  // namespace

IdentityReport verify(const Representation& rep) { return run_verify(rep, false); }
IdentityReport verify_reference(const Representation& rep) { return run_verify(rep, true); }

Representation veronese_lift(const Representation& rep, int d_target) {
  if (rep.dim() != 2) fail(ErrorCode::Dimension, "Veronese lift needs a representation in dimension 2");
  if (d_target < 2) fail(ErrorCode::Dimension, "target dimension must be at least 2");
  std::vector<ProjMatrix> images;
  for (const ProjMatrix& m : rep.images()) images.push_back(veronese(m, d_target));
  Representation out(rep.model(), d_target, rep.surface(), std::move(images), rep.boundary_system());
  for (int j = 0; j < rep.boundary_count(); ++j) out.set_inverted(j, rep.inverted(j));
  out.cutoff = rep.cutoff;
  out.window = rep.window;
  return out;
}

std::vector<GapRow> anosov_gap_report(const Representation& rep, int max_len) { return anosov_gap_report(rep.images(), max_len); }

std::string report_text(const IdentityReport& r) {
  std::ostringstream os;
  for (const TermRecord& t : r.terms)
    os << "TERM j=" << t.j + 1 << " q=" << t.q + 1 << " w=" << t.w.to_string() << " value=" << t.value << "\n";
  os << "SUM lhs=" << r.lhs << " rhs=" << r.rhs << " nonzero=" << r.nonzero_count << " max_len=" << r.max_len_scanned
     << " status=" << status_name(r.status) << "\n";
  return os.str();
}

std::string report_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["terms"] = nlohmann::ordered_json::array();
  for (const TermRecord& t : r.terms)
    j["terms"].push_back({{"j", t.j + 1}, {"q", t.q + 1}, {"w", t.w.to_string()}, {"value", t.value}});
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["nonzero"] = r.nonzero_count;
  j["max_len"] = r.max_len_scanned;
  j["status"] = std::string(status_name(r.status));
  return j.dump(2) + "\n";
}

}  // namespace nabas
