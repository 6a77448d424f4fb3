#include "relfan/rational.hpp"

#include "relfan/errors.hpp"

#include <algorithm>

namespace relfan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Int parse_int(std::string_view s) {
  if (!valid_integer(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Int(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  Rat out;
  if (slash == std::string_view::npos) {
    out = Rat(parse_int(text));
  } else {
    Int num = parse_int(trim(text.substr(0, slash)));
    Int den = parse_int(trim(text.substr(slash + 1)));
    if (sgn(den) == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    out = Rat(num, den);
    out.canonicalize();
  }
  return out;
}

std::string format_rat(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int lcm_denominators(const Vec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return l;
}

Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Vec scale(const Rat& s, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

void axpy(const Rat& s, const Vec& x, Vec& y) {
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += s * x[i];
}

Vec to_rat(const IntVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

IntVec primitive_direction(const Vec& v) {
  Int den = lcm_denominators(v);
  IntVec out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (den / v[i].get_den());
    g = gcd(g, out[i]);
  }
  if (sgn(g) != 0)
    for (auto& x : out) x /= g;
  return out;
}

GaussRat parse_gauss(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty Gaussian rational");
  if (text.back() != 'i') return GaussRat(parse_rat(text));
  // Imaginary part: find the sign that starts it (not the leading one, not
  // one inside a fraction).
  std::string_view body = text.substr(0, text.size() - 1);
  if (!body.empty() && body.back() == '*') body.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  Rat im;
  std::string_view t = trim(im_part);
  if (t.empty() || t == "+")
    im = 1;
  else if (t == "-")
    im = -1;
  else
    im = parse_rat(t);
  Rat re = re_part.empty() ? Rat(0) : parse_rat(re_part);
  return {re, im};
}

std::string format_gauss(const GaussRat& z) {
  std::string s = format_rat(z.re);
  if (sgn(z.im) >= 0)
    s += "+" + format_rat(z.im) + "*i";
  else
    s += "-" + format_rat(Rat(-z.im)) + "*i";
  return s;
}

bool is_gaussian_integer(const GaussRat& z) {
  return z.re.get_den() == 1 && z.im.get_den() == 1;
}

}  // namespace relfan
