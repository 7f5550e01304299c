#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nabas {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::uint32_t p) : p_(p) {}
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly constant(std::uint32_t p, long long c);
  static FpPoly monomial(std::uint32_t p, long long c, std::size_t degree);

  std::uint32_t p() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  // Order of vanishing at T = 0; the polynomial must be nonzero.
  int low_order() const;

  FpPoly operator-() const;
  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(std::uint32_t c) const;

  FpPoly truncated(std::size_t n) const;
  FpPoly mul_trunc(const FpPoly& o, std::size_t n) const;
  // Multiply by T^k; negative k divides and requires the low coefficients to vanish.
  FpPoly shifted(int k) const;
  // Inverse modulo T^n; requires a nonzero constant term.
  FpPoly inverse_mod(std::size_t n) const;

  static void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
  static FpPoly gcd(FpPoly a, FpPoly b);
  FpPoly monic() const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  void trim();

  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;
};

}  // namespace nabas
