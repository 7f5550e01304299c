#include "nabas/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "nabas/error.hpp"

namespace nabas {

char letter_char(Letter x) {
  char c = static_cast<char>('a' + (x >> 1));
  return (x & 1) ? static_cast<char>(std::toupper(c)) : c;
}

Word::Word(std::span<const Letter> letters) {
  l_.reserve(letters.size());
  for (Letter x : letters) {
    if (!l_.empty() && l_.back() == inverse_letter(x))
      l_.pop_back();
    else
      l_.push_back(x);
  }
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::parse(std::string_view text, int rank) {
  std::vector<Letter> out;
  if (text == "1") return Word{};
  for (char ch : text) {
    if (!std::isalpha(static_cast<unsigned char>(ch)))
      fail(ErrorCode::BadLetter, std::string("unknown symbol '") + ch + "'");
    bool inv = std::isupper(static_cast<unsigned char>(ch));
    int g = std::tolower(static_cast<unsigned char>(ch)) - 'a';
    if (g >= rank) fail(ErrorCode::BadLetter, std::string("letter '") + ch + "' outside rank " + std::to_string(rank));
    out.push_back(static_cast<Letter>(2 * g + (inv ? 1 : 0)));
  }
  return Word(out);
}

bool Word::lex_less(const Word& o) const { return l_ < o.l_; }

bool Word::shortlex_less(const Word& o) const {
  if (l_.size() != o.l_.size()) return l_.size() < o.l_.size();
  return l_ < o.l_;
}

std::string Word::to_string() const {
  if (l_.empty()) return "1";
  std::string s;
  for (Letter x : l_) s += letter_char(x);
  return s;
}

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word multiply(const Word& u, const Word& v) {
  std::vector<Letter> cat(u.letters().begin(), u.letters().end());
  cat.insert(cat.end(), v.letters().begin(), v.letters().end());
  return Word(cat);
}

Word invert(const Word& u) {
  std::vector<Letter> r;
  r.reserve(u.size());
  for (std::size_t i = u.size(); i-- > 0;) r.push_back(inverse_letter(u[i]));
  return Word(r);
}

Word power(const Word& u, long n) {
  const Word base = n < 0 ? invert(u) : u;
  std::vector<Letter> cat;
  for (long k = 0; k < std::abs(n); ++k) cat.insert(cat.end(), base.letters().begin(), base.letters().end());
  return Word(cat);
}

bool is_cyclically_reduced(const Word& w) { return w.empty() || w[0] != inverse_letter(w[w.size() - 1]); }

void validate_surface(const SurfaceType& s) {
  if (s.genus < 0 || s.boundaries < 1) fail(ErrorCode::BadSurface, "genus must be >= 0 and boundaries >= 1");
  if (s.euler_characteristic() >= 0)
    fail(ErrorCode::BadSurface, "Euler characteristic " + std::to_string(s.euler_characteristic()) + " is not negative");
  if (s.rank() > 26) fail(ErrorCode::BadSurface, "rank above 26 has no letter names");
}

BoundarySystem boundary_words(const SurfaceType& s) {
  validate_surface(s);
  auto gen = [](int g, bool inv) { return static_cast<Letter>(2 * g + (inv ? 1 : 0)); };
  std::vector<Letter> commutators, cs;
  for (int i = 0; i < s.genus; ++i) {
    Letter a = gen(2 * i, false), b = gen(2 * i + 1, false);
    commutators.insert(commutators.end(), {a, b, inverse_letter(a), inverse_letter(b)});
  }
  BoundarySystem sys{s, {}};
  for (int k = 0; k + 1 < s.boundaries; ++k) {
    Letter c = gen(2 * s.genus + k, false);
    cs.push_back(c);
    sys.words.push_back(Word{c});
  }
  sys.words.push_back(multiply(invert(Word(cs)), Word(commutators)));
  return sys;
}

CosetCanonicalizer::CosetCanonicalizer(Word alpha, Word beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.empty() || beta_.empty()) fail(ErrorCode::BadSurface, "boundary word is trivial");
  alpha_inv_ = invert(alpha_);
  beta_inv_ = invert(beta_);
  fast_ = is_cyclically_reduced(alpha_) && is_cyclically_reduced(beta_);
}

long CosetCanonicalizer::shift_bound(std::size_t w_len) const {
  std::size_t shortest = std::min(alpha_.size(), beta_.size());
  return static_cast<long>(w_len / shortest) + 2;
}

Word CosetCanonicalizer::shifted(const Word& w, long n, long s) const {
  return multiply(multiply(power(alpha_, n), w), power(beta_, s));
}

Word CosetCanonicalizer::canonical(const Word& w) const {
  const long b = shift_bound(w.size());
  Word best = w;
  for (long n = -b; n <= b; ++n)
    for (long s = -b; s <= b; ++s) {
      Word c = shifted(w, n, s);
      if (c.size() < best.size() || (c.size() == best.size() && best.lex_less(c))) best = std::move(c);
    }
  return best;
}

bool CosetCanonicalizer::in_identity_coset(const Word& w) const { return canonical(w).empty(); }

namespace {

// Longest common prefix of w (read forwards, or as w^-1 when reversed) with
// the periodic word u u u ...
std::size_t periodic_lcp(std::span<const Letter> w, bool reversed, const Word& u) {
  std::size_t n = w.size(), i = 0;
  while (i < n) {
    Letter x = reversed ? inverse_letter(w[n - 1 - i]) : w[i];
    if (x != u[i % u.size()]) break;
    ++i;
  }
  return i;
}

// Length change of u^k w as a function of k, given the cancellation depths.
long shift_gain(long k, long len, long lcp_pos, long lcp_neg) {
  if (k == 0) return 0;
  long run = std::abs(k) * len;
  long c = std::min(k > 0 ? lcp_pos : lcp_neg, run);
  return run - 2 * c;
}

}  // namespace

bool CosetCanonicalizer::is_canonical(std::span<const Letter> w) const {
  const long wl = static_cast<long>(w.size());
  const long la = static_cast<long>(alpha_.size()), lb = static_cast<long>(beta_.size());
  long pa = 0, na = 0, pb = 0, nb = 0;
  if (fast_) {
    // alpha^n w with n > 0 cancels against the prefix of (alpha^-1)^infinity.
    pa = static_cast<long>(periodic_lcp(w, false, alpha_inv_));
    na = static_cast<long>(periodic_lcp(w, false, alpha_));
    pb = static_cast<long>(periodic_lcp(w, true, beta_));
    nb = static_cast<long>(periodic_lcp(w, true, beta_inv_));
  }
  if (!fast_ || std::max(pa, na) + std::max(pb, nb) >= wl) {
    Word ww(w);
    return ww.size() == w.size() && canonical(ww) == ww;
  }
  const long bound = shift_bound(w.size());
  std::vector<long> ties_n{0}, ties_s{0};
  for (long k = -bound; k <= bound; ++k) {
    if (k == 0) continue;
    long gn = shift_gain(k, la, pa, na), gs = shift_gain(k, lb, pb, nb);
    if (gn < 0 || gs < 0) return false;
    if (gn == 0) ties_n.push_back(k);
    if (gs == 0) ties_s.push_back(k);
  }
  if (ties_n.size() == 1 && ties_s.size() == 1) return true;
  Word ww(w);
  for (long n : ties_n)
    for (long s : ties_s) {
      if (n == 0 && s == 0) continue;
      if (ww.lex_less(shifted(ww, n, s))) return false;
    }
  return true;
}

bool CosetCanonicalizer::right_reducible(std::span<const Letter> w) const {
  if (!fast_) return false;
  const std::size_t lb = beta_.size();
  std::size_t c = std::max(periodic_lcp(w, true, beta_), periodic_lcp(w, true, beta_inv_));
  return 2 * std::min(c, lb) > lb;
}

Word canonical_rep(const BoundarySystem& sys, const Word& w, int j, int q) {
  return CosetCanonicalizer(sys.words.at(static_cast<std::size_t>(j)), sys.words.at(static_cast<std::size_t>(q))).canonical(w);
}

bool coset_equal(const BoundarySystem& sys, const Word& w1, const Word& w2, int j, int q) {
  const Word& a = sys.words.at(static_cast<std::size_t>(j));
  const Word& b = sys.words.at(static_cast<std::size_t>(q));
  const long bound = static_cast<long>((w1.size() + w2.size()) / std::min(a.size(), b.size())) + 2;
  std::vector<Word> powers;
  for (long k = -bound; k <= bound; ++k) powers.push_back(power(b, k));
  for (long n = -bound; n <= bound; ++n) {
    // w2 = a^n w1 b^s iff (a^n w1)^-1 w2 = b^s.
    Word x = multiply(invert(multiply(power(a, n), w1)), w2);
    for (const Word& p : powers)
      if (p == x) return true;
  }
  return false;
}

namespace {

void for_each_extension(int rank, int length, std::vector<Letter>& buf, const std::function<void(const std::vector<Letter>&)>& fn) {
  if (static_cast<int>(buf.size()) == length) {
    fn(buf);
    return;
  }
  for (int x = 0; x < 2 * rank; ++x) {
    Letter l = static_cast<Letter>(x);
    if (!buf.empty() && buf.back() == inverse_letter(l)) continue;
    buf.push_back(l);
    for_each_extension(rank, length, buf, fn);
    buf.pop_back();
  }
}

}  // namespace

std::vector<Word> reduced_words(int rank, int length) {
  std::vector<Word> out;
  if (length < 0) return out;
  std::vector<Letter> buf;
  for_each_extension(rank, length, buf, [&](const std::vector<Letter>& w) { out.emplace_back(w); });
  return out;
}

unsigned long long reduced_word_count(int rank, int length) {
  if (length < 0) return 0;
  if (length == 0) return 1;
  unsigned long long c = 2ULL * static_cast<unsigned>(rank);
  for (int i = 1; i < length; ++i) c *= 2ULL * static_cast<unsigned>(rank) - 1;
  return c;
}

std::vector<DoubleCosetRep> enumerate_double_cosets(const BoundarySystem& sys, int j, int q, int max_len) {
  std::vector<DoubleCosetRep> out;
  const CosetCanonicalizer canon(sys.words.at(static_cast<std::size_t>(j)), sys.words.at(static_cast<std::size_t>(q)));
  const int rank = sys.rank();
  for (int len = 0; len <= max_len; ++len) {
    if (len <= 2) {
      for (Word& w : reduced_words(rank, len)) {
        if (j == q && w.empty()) continue;
        if (canon.is_canonical(w.letters())) out.push_back({j, q, std::move(w)});
      }
      continue;
    }
    std::vector<Word> prefixes = reduced_words(rank, 2);
    std::vector<std::vector<DoubleCosetRep>> parts(prefixes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      std::vector<Letter> buf(prefixes[i].letters().begin(), prefixes[i].letters().end());
      for_each_extension(rank, len, buf, [&](const std::vector<Letter>& w) {
        if (canon.is_canonical(w)) parts[i].push_back({j, q, Word(w)});
      });
    }
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<DoubleCosetRep> enumerate_double_cosets_reference(const BoundarySystem& sys, int j, int q, int max_len) {
  const CosetCanonicalizer canon(sys.words.at(static_cast<std::size_t>(j)), sys.words.at(static_cast<std::size_t>(q)));
  std::vector<Word> reps;
  for (int len = 0; len <= max_len; ++len)
    for (const Word& w : reduced_words(sys.rank(), len)) {
      Word c = canon.canonical(w);
      if (j == q && c.empty()) continue;
      reps.push_back(std::move(c));
    }
  std::sort(reps.begin(), reps.end(), [](const Word& a, const Word& b) { return a.shortlex_less(b); });
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::vector<DoubleCosetRep> out;
  for (Word& w : reps) out.push_back({j, q, std::move(w)});
  return out;
}

}  // namespace nabas
