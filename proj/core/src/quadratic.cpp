#include "lociso/quadratic.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "lociso/error.hpp"

namespace lociso {

namespace {

constexpr std::int64_t kLimit = 1000000;

bool is_square(std::int64_t d) {
  if (d < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d;
}

std::int64_t isqrt(std::int64_t d) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

void check_range(std::int64_t v, const char* what) {
  if (v > kLimit || v < -kLimit)
    fail(Errc::InvalidArgument, std::string(what) + " exceeds the supported magnitude 10^6");
}

}  // namespace

QuadraticIrrational QuadraticIrrational::rational(std::int64_t num, std::int64_t den) {
  return make(num, 0, 0, den);
}

QuadraticIrrational QuadraticIrrational::make(std::int64_t p, std::int64_t q, std::int64_t D, std::int64_t u) {
  if (u == 0) fail(Errc::InvalidArgument, "zero denominator");
  if (q != 0 && D <= 0) fail(Errc::InvalidArgument, "radicand must be positive");
  if (u < 0) {
    p = -p;
    q = -q;
    u = -u;
  }
  if (q != 0 && is_square(D)) {
    p += q * isqrt(D);
    q = 0;
  }
  if (q == 0) D = 0;
  std::int64_t g = std::gcd(std::gcd(std::llabs(p), std::llabs(q)), u);
  if (g > 1) {
    p /= g;
    q /= g;
    u /= g;
  }
  check_range(p, "numerator");
  check_range(q, "coefficient");
  check_range(u, "denominator");
  check_range(D, "radicand");
  return QuadraticIrrational{p, q, u, D};
}

long double QuadraticIrrational::approx() const {
  return (static_cast<long double>(p) + static_cast<long double>(q) * std::sqrt(static_cast<long double>(D))) /
         static_cast<long double>(u);
}

std::string QuadraticIrrational::to_string() const {
  if (q == 0) return u == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(u);
  std::string s = "(" + std::to_string(p) + (q < 0 ? "-" : "+") + std::to_string(std::llabs(q)) + "*sqrt(" +
                  std::to_string(D) + "))/" + std::to_string(u);
  return s;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  std::string_view original;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat(std::string_view word) {
    skip();
    if (s.substr(i, word.size()) == word) {
      i += word.size();
      return true;
    }
    return false;
  }
  bool done() {
    skip();
    return i == s.size();
  }
  [[noreturn]] void bad() const { fail(Errc::ParseError, "cannot parse number '" + std::string(original) + "'"); }
  std::int64_t integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits || i - digits > 12) bad();
    return std::strtoll(std::string(s.substr(start, i - start)).c_str(), nullptr, 10);
  }
  bool peek_digit() {
    skip();
    return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])));
  }
};

// term := [int '*'] 'sqrt(' int ')' | int ; returns (rational part, sqrt coeff, D).
void parse_term(Cursor& c, int sign, std::int64_t& p, std::int64_t& q, std::int64_t& D) {
  if (c.eat("sqrt")) {
    if (!c.eat('(')) c.bad();
    D = c.integer();
    if (!c.eat(')')) c.bad();
    q += sign;
    return;
  }
  std::int64_t v = c.integer();
  if (c.eat('*')) {
    if (!c.eat("sqrt") || !c.eat('(')) c.bad();
    D = c.integer();
    if (!c.eat(')')) c.bad();
    q += sign * v;
  } else {
    p += sign * v;
  }
}

}  // namespace

QuadraticIrrational parse_quadratic(std::string_view text) {
  Cursor c{text, 0, text};
  std::int64_t p = 0, q = 0, D = 0, u = 1;
  bool paren = c.eat('(');
  int sign = 1;
  if (c.eat('-')) sign = -1;
  else c.eat('+');
  parse_term(c, sign, p, q, D);
  while (true) {
    if (c.eat('+')) parse_term(c, 1, p, q, D);
    else if (c.eat('-')) parse_term(c, -1, p, q, D);
    else break;
  }
  if (paren && !c.eat(')')) c.bad();
  if (c.eat('/')) u = c.integer();
  if (!c.done()) c.bad();
  return QuadraticIrrational::make(p, q, D, u);
}

int sign_quadratic(__int128 a, __int128 b, std::int64_t D) {
  auto sgn = [](__int128 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  if (b == 0 || D == 0) return sgn(a);
  if (a >= 0 && b >= 0) return 1;
  if (a <= 0 && b <= 0) return -1;
  __int128 a2 = a * a, b2d = b * b * D;
  if (a > 0) return a2 > b2d ? 1 : (a2 < b2d ? -1 : 0);
  return b2d > a2 ? 1 : (b2d < a2 ? -1 : 0);
}

__int128 floor_quadratic(__int128 a, __int128 b, std::int64_t D, __int128 c) {
  long double x = (static_cast<long double>(a) + static_cast<long double>(b) * std::sqrt(static_cast<long double>(D))) /
                  static_cast<long double>(c);
  auto n = static_cast<__int128>(std::floor(x));
  // Exact correction: want a + b*sqrt(D) - n*c >= 0 > a + b*sqrt(D) - (n+1)*c.
  while (sign_quadratic(a - n * c, b, D) < 0) --n;
  while (sign_quadratic(a - (n + 1) * c, b, D) >= 0) ++n;
  return n;
}

}  // namespace lociso
