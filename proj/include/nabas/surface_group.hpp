#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nabas {

// Letter 2g is generator g, letter 2g+1 its inverse; this is also the
// alphabet order g1 < g1^-1 < g2 < ...
using Letter = std::uint8_t;

inline Letter inverse_letter(Letter x) { return static_cast<Letter>(x ^ 1); }
char letter_char(Letter x);

class Word {
 public:
  Word() = default;
  // Freely reduces its input.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  // Lowercase letters are generators in order a, b, c, ...; uppercase their
  // inverses; "1" is the identity.
  static Word parse(std::string_view text, int rank);

  std::size_t size() const { return l_.size(); }
  bool empty() const { return l_.empty(); }
  Letter operator[](std::size_t i) const { return l_[i]; }
  std::span<const Letter> letters() const { return l_; }
  bool operator==(const Word&) const = default;
  // Lexicographic in the alphabet order.
  bool lex_less(const Word& o) const;
  // Length first, then lexicographic.
  bool shortlex_less(const Word& o) const;

  std::string to_string() const;

 private:
  std::vector<Letter> l_;
};

Word reduce(std::span<const Letter> letters);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, long n);
bool is_cyclically_reduced(const Word& w);

struct SurfaceType {
  int genus = 0;
  int boundaries = 1;
  int rank() const { return 2 * genus + boundaries - 1; }
  int euler_characteristic() const { return 2 - 2 * genus - boundaries; }
  bool operator==(const SurfaceType&) const = default;
};

struct BoundarySystem {
  SurfaceType surface;
  std::vector<Word> words;
  int rank() const { return surface.rank(); }
};

// Generators a1, b1, ..., ag, bg, c1, ..., c_{m-1}; alpha_j = c_j for j < m
// and alpha_m = (c1 ... c_{m-1})^{-1} [a1,b1] ... [ag,bg].
BoundarySystem boundary_words(const SurfaceType& surface);
void validate_surface(const SurfaceType& surface);

struct DoubleCosetRep {
  int j = 0;
  int q = 0;
  Word w;
  bool operator==(const DoubleCosetRep&) const = default;
};

// Canonical representatives of <alpha> w <beta>: shortest, then
// lexicographically largest. Boundary indices are 0-based.
class CosetCanonicalizer {
 public:
  CosetCanonicalizer(Word alpha, Word beta);

  // Decided from cancellation depths; falls back to the search below when
  // the shifts can consume all of w.
  bool is_canonical(std::span<const Letter> w) const;
  // Some w beta^s is shorter than w; then no left extension of w is
  // canonical either. Always false when beta is not cyclically reduced.
  bool right_reducible(std::span<const Letter> w) const;
  // Exhaustive search over |n|, |s| <= shift_bound(|w|).
  Word canonical(const Word& w) const;
  // Whether the coset of w is <alpha><beta> itself.
  bool in_identity_coset(const Word& w) const;
  long shift_bound(std::size_t w_len) const;

  const Word& alpha() const { return alpha_; }
  const Word& beta() const { return beta_; }

 private:
  Word shifted(const Word& w, long n, long s) const;

  Word alpha_, beta_, alpha_inv_, beta_inv_;
  bool fast_;
};

Word canonical_rep(const BoundarySystem& sys, const Word& w, int j, int q);
bool coset_equal(const BoundarySystem& sys, const Word& w1, const Word& w2, int j, int q);

// All canonical representatives of length <= max_len ordered by length then
// lexicographically; the identity coset is excluded when j == q.
std::vector<DoubleCosetRep> enumerate_double_cosets(const BoundarySystem& sys, int j, int q, int max_len);
// Serial reference: canonicalizes every reduced word by exhaustive search.
std::vector<DoubleCosetRep> enumerate_double_cosets_reference(const BoundarySystem& sys, int j, int q, int max_len);

// All reduced words of the given length in lexicographic order.
std::vector<Word> reduced_words(int rank, int length);
unsigned long long reduced_word_count(int rank, int length);

}  // namespace nabas
