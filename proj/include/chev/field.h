#ifndef GUARD_CHEV_FIELD_H
#define GUARD_CHEV_FIELD_H

#include <cstdint>
#include <functional>
#include <string>

#include <gmpxx.h>

#include "errors.h"

namespace chev
{

namespace detail
{

inline long parse_long(std::string const &s, std::string const &field)
{
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ParseError("'" + s + "' is not a scalar of " + field);
  return v;
}

} // namespace detail

template<unsigned P>
class Fp
{
public:
  static constexpr bool finite = true;
  static constexpr unsigned order = P;
  static constexpr unsigned characteristic = P;

  constexpr Fp() : _v(0) {}

  static Fp from_int(long x)
  {
    long r = x % long(P);
    if (r < 0)
      r += P;
    return Fp(unsigned(r), 0);
  }

  static Fp element(unsigned k)
  { return Fp(k % P, 0); }

  static std::string name()
  { return "f" + std::to_string(P); }

  static Fp parse(std::string const &s)
  {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Fp num = parse(s.substr(0, slash));
      Fp den = parse(s.substr(slash + 1));
      return num / den;
    }
    return from_int(detail::parse_long(s, name()));
  }

  unsigned value() const
  { return _v; }

  unsigned index() const
  { return _v; }

  bool is_zero() const
  { return _v == 0; }

  bool is_one() const
  { return _v == 1; }

  Fp operator+(Fp o) const
  { return Fp((_v + o._v) % P, 0); }

  Fp operator-(Fp o) const
  { return Fp((_v + P - o._v) % P, 0); }

  Fp operator-() const
  { return Fp((P - _v) % P, 0); }

  Fp operator*(Fp o) const
  { return Fp((_v * o._v) % P, 0); }

  Fp inv() const
  {
    if (_v == 0)
      throw ZeroScalar("division by zero in " + name());
    unsigned r = 1, b = _v, e = P - 2;
    while (e) {
      if (e & 1)
        r = r * b % P;
      b = b * b % P;
      e >>= 1;
    }
    return Fp(r, 0);
  }

  Fp operator/(Fp o) const
  { return *this * o.inv(); }

  Fp &operator+=(Fp o)
  { return *this = *this + o; }

  Fp &operator-=(Fp o)
  { return *this = *this - o; }

  Fp &operator*=(Fp o)
  { return *this = *this * o; }

  bool operator==(Fp const &) const = default;

  std::size_t hash() const
  { return _v; }

  std::string str() const
  { return std::to_string(_v); }

private:
  constexpr Fp(unsigned v, int) : _v(v) {}
  unsigned _v;
};

// GF(4) = F2[z]/(z^2 + z + 1); bit 0 is the constant term, bit 1 the z term.
class GF4
{
public:
  static constexpr bool finite = true;
  static constexpr unsigned order = 4;
  static constexpr unsigned characteristic = 2;

  constexpr GF4() : _v(0) {}

  static GF4 from_int(long x)
  { return GF4(unsigned(((x % 2) + 2) % 2), 0); }

  static GF4 element(unsigned k)
  { return GF4(k & 3u, 0); }

  static GF4 z()
  { return GF4(2, 0); }

  static std::string name()
  { return "f4"; }

  static GF4 parse(std::string const &s)
  {
    std::string t;
    for (char c : s)
      if (c != ' ')
        t += c;
    if (t == "z")
      return GF4(2, 0);
    if (t == "z+1" || t == "1+z" || t == "z^2" || t == "z2")
      return GF4(3, 0);
    return from_int(detail::parse_long(t, name()));
  }

  unsigned index() const
  { return _v; }

  bool is_zero() const
  { return _v == 0; }

  bool is_one() const
  { return _v == 1; }

  GF4 operator+(GF4 o) const
  { return GF4(_v ^ o._v, 0); }

  GF4 operator-(GF4 o) const
  { return GF4(_v ^ o._v, 0); }

  GF4 operator-() const
  { return *this; }

  GF4 operator*(GF4 o) const
  {
    static constexpr unsigned char table[4][4] = {
      {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return GF4(table[_v][o._v], 0);
  }

  GF4 inv() const
  {
    static constexpr unsigned char table[4] = {0, 1, 3, 2};
    if (_v == 0)
      throw ZeroScalar("division by zero in f4");
    return GF4(table[_v], 0);
  }

  GF4 operator/(GF4 o) const
  { return *this * o.inv(); }

  GF4 &operator+=(GF4 o)
  { return *this = *this + o; }

  GF4 &operator-=(GF4 o)
  { return *this = *this - o; }

  GF4 &operator*=(GF4 o)
  { return *this = *this * o; }

  bool operator==(GF4 const &) const = default;

  std::size_t hash() const
  { return _v; }

  std::string str() const
  {
    static char const *names[4] = {"0", "1", "z", "z+1"};
    return names[_v];
  }

private:
  constexpr GF4(unsigned v, int) : _v(v) {}
  unsigned _v;
};

class Rational
{
public:
  static constexpr bool finite = false;
  static constexpr unsigned order = 0;
  static constexpr unsigned characteristic = 0;

  Rational() : _v(0) {}
  explicit Rational(mpq_class v) : _v(std::move(v))
  { _v.canonicalize(); }

  static Rational from_int(long x)
  { return Rational(mpq_class(x)); }

  static std::string name()
  { return "q"; }

  static Rational parse(std::string const &s)
  {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return from_int(detail::parse_long(s, name()));
    long num = detail::parse_long(s.substr(0, slash), name());
    long den = detail::parse_long(s.substr(slash + 1), name());
    if (den == 0)
      throw ZeroScalar("zero denominator in '" + s + "'");
    return Rational(mpq_class(num, den));
  }

  mpq_class const &value() const
  { return _v; }

  bool is_zero() const
  { return sgn(_v) == 0; }

  bool is_one() const
  { return _v == 1; }

  Rational operator+(Rational const &o) const
  { return Rational(mpq_class(_v + o._v)); }

  Rational operator-(Rational const &o) const
  { return Rational(mpq_class(_v - o._v)); }

  Rational operator-() const
  { return Rational(mpq_class(-_v)); }

  Rational operator*(Rational const &o) const
  { return Rational(mpq_class(_v * o._v)); }

  Rational inv() const
  {
    if (is_zero())
      throw ZeroScalar("division by zero in q");
    return Rational(mpq_class(1 / _v));
  }

  Rational operator/(Rational const &o) const
  { return *this * o.inv(); }

  Rational &operator+=(Rational const &o)
  { return *this = *this + o; }

  Rational &operator-=(Rational const &o)
  { return *this = *this - o; }

  Rational &operator*=(Rational const &o)
  { return *this = *this * o; }

  bool operator==(Rational const &o) const
  { return _v == o._v; }

  std::size_t hash() const
  {
    return std::hash<std::string>()(_v.get_str());
  }

  std::string str() const
  { return _v.get_str(); }

private:
  mpq_class _v;
};

template<typename F>
F field_pow(F const &x, int e)
{
  if (e < 0)
    return field_pow(x.inv(), -e);
  F r = F::from_int(1), b = x;
  while (e) {
    if (e & 1)
      r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

using F2 = Fp<2>;
using F3 = Fp<3>;
using F5 = Fp<5>;
using F7 = Fp<7>;

// Calls fn with a value of the field type named by `name`.
template<typename Fn>
decltype(auto) with_field(std::string const &name, Fn &&fn)
{
  if (name == "f2")
    return fn(F2());
  if (name == "f3")
    return fn(F3());
  if (name == "f4")
    return fn(GF4());
  if (name == "f5")
    return fn(F5());
  if (name == "f7")
    return fn(F7());
  if (name == "q")
    return fn(Rational());
  throw ParseError("unknown field '" + name + "'");
}

} // namespace chev

#endif // GUARD_CHEV_FIELD_H
