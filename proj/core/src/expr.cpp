#include "fusionmod/expr.hpp"

#include <cctype>
#include <limits>

#include "fusionmod/error.hpp"

namespace fusionmod {

namespace {

using Vec = std::vector<long long>;

constexpr long long kCoeffLimit = std::numeric_limits<int>::max();

class Parser {
 public:
  Parser(const RingPtr& R, std::string_view src) : R_(*R), src_(src) {}

  Vec parse() {
    skip();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Vec v = expr();
    skip();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= src_.size()) return false;
    unsigned char c = static_cast<unsigned char>(src_[pos_]);
    return c == '(' || std::isalnum(c) || c == '_';
  }

  Vec expr() {
    Vec v = term();
    while (at('+')) {
      ++pos_;
      add(v, term());
    }
    return v;
  }

  Vec term() {
    bool paren = false;
    Vec v = factor(paren);
    for (;;) {
      if (at('*')) {
        ++pos_;
        bool p = false;
        v = mul(v, factor(p));
        paren = p;
        continue;
      }
      if (!starts_factor()) break;
      const std::size_t here = pos_;
      const bool next_paren = src_[pos_] == '(';
      if (!paren && !next_paren) throw ParseError("juxtaposed factors need '*' unless one is parenthesized", here);
      bool p = false;
      v = mul(v, factor(p));
      paren = p;
    }
    return v;
  }

  Vec factor(bool& paren) {
    skip();
    paren = false;
    if (pos_ >= src_.size()) throw ParseError("expected a factor", pos_);
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Vec v = expr();
      if (!at(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      paren = true;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        n = n * 10 + (src_[pos_] - '0');
        if (n > kCoeffLimit) throw ParseError("integer too large", start);
        ++pos_;
      }
      if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        throw ParseError("juxtaposed factors need '*' unless one is parenthesized", pos_);
      Vec v(R_.rank(), 0);
      v[R_.unit()] = n;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      if (auto i = R_.find_label(name)) {
        Vec v(R_.rank(), 0);
        v[*i] = 1;
        return v;
      }
      auto it = R_.shorthands().find(name);
      if (it == R_.shorthands().end())
        throw ParseError("unknown label '" + name + "' in ring " + R_.name(), start);
      return Vec(it->second.begin(), it->second.end());
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  void add(Vec& v, const Vec& w) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] += w[i];
      if (v[i] > kCoeffLimit) throw ParseError("coefficient overflow", pos_);
    }
  }
  Vec mul(const Vec& x, const Vec& y) {
    Vec v = R_.multiply(x, y);
    for (long long c : v)
      if (c > kCoeffLimit) throw ParseError("coefficient overflow", pos_);
    return v;
  }

  const FusionRing& R_;
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

ObjectVector parse_object(const RingPtr& R, std::string_view src) {
  if (!R) throw Error("parse_object needs a ring");
  Vec v = Parser(R, src).parse();
  ObjectVector out{R, std::vector<int>(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) out.coeffs[i] = static_cast<int>(v[i]);
  return out;
}

std::string format_object(const ObjectVector& X) {
  if (!X.ring) throw Error("format_object needs a ring");
  std::string out;
  for (int i = 0; i < static_cast<int>(X.coeffs.size()); ++i) {
    const int c = X.coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == X.ring->unit())
      out += std::to_string(c);
    else if (c == 1)
      out += X.ring->label(i);
    else
      out += std::to_string(c) + "*" + X.ring->label(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace fusionmod
