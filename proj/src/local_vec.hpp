#pragma once

#include <limits>
#include <vector>

#include "nabas/valued_field.hpp"

namespace nabas::detail {

using LVec = std::vector<Local>;

// Shifts v by a power of the uniformizer so that its smallest determined
// coordinate is a unit; false when no coordinate is determined.
inline bool normalize(LVec& v) {
  long k = std::numeric_limits<long>::max();
  for (const Local& x : v)
    if (!x.is_zero()) k = std::min(k, x.valuation());
  if (k == std::numeric_limits<long>::max()) return false;
  if (k != 0)
    for (Local& x : v) x = x.shifted(-k);
  return true;
}

// Row-major d x d matrix times a column vector.
inline LVec mat_vec(const LVec& m, const LVec& v, int d) {
  LVec out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Local s = m[static_cast<std::size_t>(i * d)] * v[0];
    for (int k = 1; k < d; ++k) s = s + m[static_cast<std::size_t>(i * d + k)] * v[static_cast<std::size_t>(k)];
    out.push_back(std::move(s));
  }
  return out;
}

inline LVec mat_mul(const LVec& a, const LVec& b, int d) {
  LVec out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Local s = a[static_cast<std::size_t>(i * d)] * b[static_cast<std::size_t>(j)];
      for (int k = 1; k < d; ++k) s = s + a[static_cast<std::size_t>(i * d + k)] * b[static_cast<std::size_t>(k * d + j)];
      out.push_back(std::move(s));
    }
  return out;
}

inline LVec approx_all(const std::vector<FieldElement>& xs, long n) {
  LVec out;
  out.reserve(xs.size());
  for (const FieldElement& x : xs) out.push_back(x.approx(n));
  return out;
}

}  // namespace nabas::detail
