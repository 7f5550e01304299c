#include "nabas/fp_poly.hpp"

#include <algorithm>
#include <utility>

#include "nabas/error.hpp"

namespace nabas {

namespace {

std::uint32_t reduce_signed(long long c, std::uint32_t p) {
  long long r = c % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  long long t = 0, new_t = 1;
  long long r = p, new_r = a % p;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) fail(ErrorCode::DivisionByZero, "residue not invertible mod p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, long long c) {
  return FpPoly(p, {reduce_signed(c, p)});
}

FpPoly FpPoly::monomial(std::uint32_t p, long long c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = reduce_signed(c, p);
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int FpPoly::low_order() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  fail(ErrorCode::InvalidArgument, "order of the zero polynomial");
}

FpPoly FpPoly::operator-() const {
  FpPoly r(p_);
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] ? p_ - c_[i] : 0;
  return r;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  FpPoly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    std::uint64_t s = std::uint64_t(coeff(i)) + o.coeff(i);
    r.c_[i] = static_cast<std::uint32_t>(s % p_);
  }
  r.trim();
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_);
  return mul_trunc(o, c_.size() + o.c_.size() - 1);
}

FpPoly FpPoly::mul_trunc(const FpPoly& o, std::size_t n) const {
  FpPoly r(p_);
  if (is_zero() || o.is_zero() || n == 0) return r;
  std::size_t len = std::min(n, c_.size() + o.c_.size() - 1);
  std::vector<std::uint64_t> acc(len, 0);
  for (std::size_t i = 0; i < c_.size() && i < len; ++i) {
    if (c_[i] == 0) continue;
    std::uint64_t a = c_[i];
    std::size_t jmax = std::min(o.c_.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) acc[i + j] = (acc[i + j] + a * o.c_[j]) % p_;
  }
  r.c_.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

FpPoly FpPoly::scaled(std::uint32_t c) const {
  FpPoly r(p_);
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(std::uint64_t(c_[i]) * c % p_);
  r.trim();
  return r;
}

FpPoly FpPoly::truncated(std::size_t n) const {
  if (c_.size() <= n) return *this;
  FpPoly r(p_);
  r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n));
  r.trim();
  return r;
}

FpPoly FpPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  FpPoly r(p_);
  if (k > 0) {
    r.c_.assign(static_cast<std::size_t>(k), 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  std::size_t drop = static_cast<std::size_t>(-k);
  for (std::size_t i = 0; i < drop && i < c_.size(); ++i)
    if (c_[i] != 0) fail(ErrorCode::InvalidArgument, "polynomial not divisible by T^k");
  if (drop < c_.size()) r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(drop), c_.end());
  return r;
}

FpPoly FpPoly::inverse_mod(std::size_t n) const {
  if (coeff(0) == 0) fail(ErrorCode::DivisionByZero, "power series without constant term");
  // Newton iteration g <- g(2 - f g).
  FpPoly g = FpPoly::constant(p_, mod_inverse(coeff(0), p_));
  std::size_t prec = 1;
  FpPoly two = FpPoly::constant(p_, 2);
  while (prec < n) {
    prec = std::min(2 * prec, n);
    FpPoly fg = truncated(prec).mul_trunc(g, prec);
    g = g.mul_trunc(two - fg, prec);
  }
  return g.truncated(n);
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::uint32_t p = a.p_ ? a.p_ : b.p_;
  r = a;
  q = FpPoly(p);
  if (a.degree() < b.degree()) return;
  std::uint32_t inv = mod_inverse(b.leading(), p);
  std::size_t db = static_cast<std::size_t>(b.degree());
  q.c_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree()) - db;
    std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(r.leading()) * inv % p);
    q.c_[shift] = f;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = std::uint64_t(f) * b.c_[i] % p;
      std::uint32_t& t = r.c_[shift + i];
      t = static_cast<std::uint32_t>((t + p - sub) % p);
    }
    r.trim();
  }
  q.trim();
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inverse(leading(), p_));
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += '+';
    bool show_coeff = c_[i] != 1 || i == 0;
    if (show_coeff) out += std::to_string(c_[i]);
    if (i >= 1) out += 'T';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace nabas
