#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nabas/proj_linear.hpp"
#include "nabas/surface_group.hpp"

namespace nabas {

// A homomorphism from the surface group to PGL(d, k), given on free
// generators, together with the scan options of the verifier.
class Representation {
 public:
  Representation() = default;
  // Boundary words default to boundary_words(surface).
  Representation(FieldModel model, int d, SurfaceType surface, std::vector<ProjMatrix> images,
                 std::optional<BoundarySystem> boundary = std::nullopt);

  const FieldModel& model() const { return model_; }
  int dim() const { return d_; }
  const SurfaceType& surface() const { return boundary_.surface; }
  const BoundarySystem& boundary_system() const { return boundary_; }
  const std::vector<ProjMatrix>& images() const { return images_; }
  int boundary_count() const { return static_cast<int>(boundary_.words.size()); }

  // Boundary word with its orientation flag applied.
  Word boundary_word(int j) const;
  bool inverted(int j) const { return inverted_.at(static_cast<std::size_t>(j)); }
  void set_inverted(int j, bool flag);

  ProjMatrix image(const Word& w) const;
  ProjMatrix image_of_letter(Letter x) const;

  // Eigen data of the image of boundary j, computed once.
  const EigenData& boundary_eigen(int j) const;

  // Every boundary image must have simple extreme eigenvalues.
  void check_well_formed() const;

  int cutoff = 12;
  int window = 3;

 private:
  struct Cache;

  FieldModel model_;
  int d_ = 2;
  BoundarySystem boundary_;
  std::vector<ProjMatrix> images_;
  std::vector<bool> inverted_;
  std::shared_ptr<Cache> cache_;
};

struct TermRecord {
  int j = 0;
  int q = 0;
  Word w;
  long value = 0;
  bool operator==(const TermRecord&) const = default;
};

// Order (j, q, |w|, lexicographic).
bool term_order(const TermRecord& a, const TermRecord& b);

enum class VerifyStatus { Verified, Partial, Mismatch };
std::string_view status_name(VerifyStatus s);

struct IdentityReport {
  long lhs = 0;
  std::vector<TermRecord> terms;
  long rhs = 0;
  long nonzero_count = 0;
  int max_len_scanned = -1;
  int window = 0;
  VerifyStatus status = VerifyStatus::Partial;
};

// Fills rhs, nonzero_count and status from lhs, terms and the scan range.
void finalize_report(IdentityReport& r);

long lhs(const Representation& rep);

// The term of the double coset of w; boundary indices 0-based.
long term(const Representation& rep, int j, int q, const Word& w);

// Terms of every canonical representative of length <= max_len, zero or not.
std::vector<TermRecord> scan_terms(const Representation& rep, int max_len, bool keep_zero);
// Serial reference: canonical forms by exhaustive search, terms by exact or
// refinable field arithmetic.
std::vector<TermRecord> scan_terms_reference(const Representation& rep, int max_len, bool keep_zero);

IdentityReport verify(const Representation& rep);
IdentityReport verify_reference(const Representation& rep);

// log |C(alpha_j^+, alpha_j^-; x, z)| for points x, z of P^{d-1}.
long phi(const Representation& rep, int j, const ProjPoint& x, const ProjPoint& z);

Representation veronese_lift(const Representation& rep, int d_target);

std::vector<GapRow> anosov_gap_report(const Representation& rep, int max_len);

std::string report_text(const IdentityReport& r);
std::string report_json(const IdentityReport& r);

}  // namespace nabas
