#include "fusionmod/quad.hpp"

#include <cmath>
#include <regex>

#include "fusionmod/error.hpp"

namespace fusionmod {

namespace {

const double kSqrt5 = std::sqrt(5.0);

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return mpq_class(0);
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
  if (sgn(q.get_den()) == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

QuadNumber::QuadNumber(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

QuadNumber QuadNumber::from_halves(long u, long v) {
  return QuadNumber(mpq_class(u, 2), mpq_class(v, 2));
}

QuadNumber QuadNumber::d() { return QuadNumber(2, 1); }

QuadNumber QuadNumber::phi() { return from_halves(1, 1); }

QuadNumber QuadNumber::operator-() const { return QuadNumber(-a_, -b_); }

QuadNumber& QuadNumber::operator+=(const QuadNumber& y) {
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& y) {
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& y) {
  mpq_class a = a_ * y.a_ + 5 * b_ * y.b_;
  mpq_class b = a_ * y.b_ + b_ * y.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& y) {
  if (y.is_zero()) throw Error("division by zero in Q(sqrt5)");
  mpq_class n = y.norm();
  QuadNumber c = y.conj();
  *this *= c;
  a_ /= n;
  b_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int QuadNumber::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  mpq_class a2 = a_ * a_;
  mpq_class b2 = 5 * b_ * b_;
  return a2 > b2 ? sa : sb;
}

double QuadNumber::to_double() const { return a_.get_d() + b_.get_d() * kSqrt5; }

bool QuadNumber::on_half_lattice() const {
  mpq_class u = 2 * a_;
  mpq_class v = 2 * b_;
  return u.get_den() == 1 && v.get_den() == 1;
}

bool QuadNumber::is_integral() const {
  if (!on_half_lattice()) return false;
  mpz_class u = mpq_class(2 * a_).get_num();
  mpz_class v = mpq_class(2 * b_).get_num();
  return mpz_even_p(mpz_class(u - v).get_mpz_t()) != 0;
}

std::string QuadNumber::to_string() const {
  mpq_class u = 2 * a_;
  mpq_class v = 2 * b_;
  std::string out = "(" + u.get_str();
  out += sgn(v) < 0 ? "-" : "+";
  out += mpq_class(abs(v)).get_str();
  out += "*sqrt5)/2";
  return out;
}

QuadNumber QuadNumber::parse(std::string_view text) {
  static const std::regex kFull(
      R"(^\s*\(\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*sqrt5\s*\)\s*/\s*2\s*$)");
  static const std::regex kRational(R"(^\s*([+-]?\d+(?:/\d+)?)\s*$)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFull)) {
    mpq_class u = parse_rational(m[1].str());
    mpq_class v = parse_rational(m[3].str());
    if (m[2].str() == "-") v = -v;
    return QuadNumber(u / 2, v / 2);
  }
  if (std::regex_match(s, m, kRational)) return QuadNumber(parse_rational(m[1].str()), 0);
  throw Error("cannot parse '" + s + "' as (u+v*sqrt5)/2");
}

std::string QuadNumber::to_d_string() const {
  // a + b*sqrt5 = (a - 2b) + b*d
  mpq_class p = a_ - 2 * b_;
  mpq_class q = b_;
  std::string out;
  if (sgn(p) != 0 || sgn(q) == 0) out = p.get_str();
  if (sgn(q) != 0) {
    if (sgn(q) < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    mpq_class aq = abs(q);
    if (aq != 1) out += aq.get_str();
    out += "d";
  }
  return out;
}

int compare_sign(const QuadNumber& x) { return x.sign(); }

std::optional<QuadNumber> field_sqrt(const QuadNumber& x) {
  int s = x.sign();
  if (s < 0) return std::nullopt;
  if (s == 0) return QuadNumber();
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    mpq_class p2 = branch == 0 ? mpq_class((x.a() + *n) / 2) : mpq_class((x.a() - *n) / 2);
    auto p = rational_sqrt(p2);
    if (!p) continue;
    QuadNumber y;
    if (sgn(*p) != 0) {
      y = QuadNumber(*p, x.b() / (2 * *p));
    } else {
      auto q = rational_sqrt(x.a() / 5);
      if (!q) continue;
      y = QuadNumber(0, *q);
    }
    if (y * y != x) continue;
    if (y.sign() < 0) y = -y;
    return y;
  }
  return std::nullopt;
}

std::optional<QuadNumber> sqrt_in_field(const QuadNumber& x) {
  auto y = field_sqrt(x);
  if (y && y->on_half_lattice()) return y;
  return std::nullopt;
}

std::optional<QuadNumber> recognize_float(double value, double tol, long bound) {
  if (!(tol > 0)) throw Error("recognition tolerance must be positive");
  long best_height = -1;
  std::optional<std::pair<long, long>> best;
  bool tie = false;
  for (long vabs = 0; vabs <= bound; ++vabs) {
    if (best_height >= 0 && vabs > best_height) break;
    for (int side = 0; side < (vabs == 0 ? 1 : 2); ++side) {
      long v = side == 0 ? vabs : -vabs;
      double t = 2 * value - static_cast<double>(v) * kSqrt5;
      double lo = std::ceil(t - 2 * tol);
      double hi = std::floor(t + 2 * tol);
      if (hi < -static_cast<double>(bound) || lo > static_cast<double>(bound)) continue;
      lo = std::max(lo, -static_cast<double>(bound));
      hi = std::min(hi, static_cast<double>(bound));
      for (double uu = lo; uu <= hi; uu += 1) {
        long u = static_cast<long>(uu);
        double approx = (static_cast<double>(u) + static_cast<double>(v) * kSqrt5) / 2;
        if (std::fabs(approx - value) > tol) continue;
        long h = std::max(std::labs(u), vabs);
        if (best_height < 0 || h < best_height) {
          best_height = h;
          best = std::make_pair(u, v);
          tie = false;
        } else if (h == best_height && best && *best != std::make_pair(u, v)) {
          tie = true;
        }
      }
    }
  }
  if (!best) return std::nullopt;
  if (tie) {
    throw Error("ambiguous recognition of " + std::to_string(value) + ": several lattice points within tolerance");
  }
  return QuadNumber::from_halves(best->first, best->second);
}

}  // namespace fusionmod
