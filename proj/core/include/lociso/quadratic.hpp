#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lociso {

// (p + q*sqrt(D)) / u with u > 0. Rationals have q == 0. Values are kept
// small enough (|p|,|q|,|u|,D <= 10^6) that the sign tests below run in
// 128-bit integers without overflow for coordinates up to 10^6.
struct QuadraticIrrational {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t u = 1;
  std::int64_t D = 0;

  static QuadraticIrrational rational(std::int64_t num, std::int64_t den = 1);
  static QuadraticIrrational make(std::int64_t p, std::int64_t q, std::int64_t D, std::int64_t u);

  bool is_rational() const noexcept { return q == 0; }
  long double approx() const;
  std::string to_string() const;
};

// Accepts "(p+q*sqrt(D))/u", "(p-q*sqrt(D))/u", "q*sqrt(D)", "sqrt(D)",
// "p/u" and "p", with optional spaces and signs.
QuadraticIrrational parse_quadratic(std::string_view text);

// Sign of a + b*sqrt(D) for non-square D, exactly.
int sign_quadratic(__int128 a, __int128 b, std::int64_t D);

// floor((a + b*sqrt(D)) / c) for c > 0, exactly.
__int128 floor_quadratic(__int128 a, __int128 b, std::int64_t D, __int128 c);

}  // namespace lociso
