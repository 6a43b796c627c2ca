#pragma once

#include <cstdint>
#include <numeric>

namespace finperf {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint32_t mod_reduce(std::int64_t a, std::uint32_t m) {
  std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

// Extended gcd on non-negative integers: returns g and sets s, t with s*a + t*b = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - quot * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

// Inverse of a modulo m; requires gcd(a, m) == 1. Returns 0 when no inverse exists.
inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
  if (m == 1) return 0;
  std::int64_t s = 0, t = 0;
  if (ext_gcd(a % m, m, s, t) != 1) return 0;
  return mod_reduce(s, m);
}

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace finperf
