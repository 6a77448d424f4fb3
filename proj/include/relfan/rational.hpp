#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace relfan {

using Int = mpz_class;
using Rat = mpq_class;

using Vec = std::vector<Rat>;
using IntVec = std::vector<Int>;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Int& x) { return sgn(x) == 0; }

/// Parses "p/q", "p" or "-p/q". The result is canonicalized.
Rat parse_rat(std::string_view text);

/// Formats as "p/q" (always with an explicit denominator).
std::string format_rat(const Rat& x);

Int floor_rat(const Rat& x);
Int lcm_denominators(const Vec& v);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Rat dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rat& s, const Vec& a);
void axpy(const Rat& s, const Vec& x, Vec& y);  // y += s * x

Vec to_rat(const IntVec& v);

/// Clears denominators and divides by the content: the primitive integer
/// vector on the same ray. The zero vector maps to itself.
IntVec primitive_direction(const Vec& v);

/// Gaussian rationals Q(i).
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(int r) : re(r) {}

  static GaussRat i_unit() { return {Rat(0), Rat(1)}; }

  GaussRat conj() const { return {re, -im}; }
  Rat norm() const { return re * re + im * im; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n = o.norm();
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline bool is_zero(const GaussRat& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }

/// Parses "a", "a+b*i", "a-b*i", "b*i", "i", "-i" with rational a, b.
GaussRat parse_gauss(std::string_view text);
std::string format_gauss(const GaussRat& z);

/// True iff z lies in Z[i].
bool is_gaussian_integer(const GaussRat& z);

}  // namespace relfan
