#include "dirackit/expr.hpp"

#include <cctype>

#include "dirackit/error.hpp"

namespace dirackit {
namespace {

struct Parser {
  std::string_view s;
  const Chart& chart;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun acc = term();
    for (;;) {
      if (consume('+')) acc += term();
      else if (consume('-')) acc -= term();
      else return acc;
    }
  }

  RatFun term() {
    RatFun acc = factor();
    for (;;) {
      if (consume('*')) acc *= factor();
      else if (consume('/')) {
        std::size_t at = pos;
        RatFun d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFun factor() {
    if (consume('-')) return -factor();
    if (consume('+')) return factor();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    while (consume('^')) base = base.pow(uint_literal());
    return base;
  }

  unsigned uint_literal() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("expected a nonnegative integer exponent", pos);
    unsigned long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<unsigned long>(s[pos] - '0');
      if (v > 100000) throw ParseError("exponent too large", start);
      ++pos;
    }
    return static_cast<unsigned>(v);
  }

  RatFun atom() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      RatFun inner = expr();
      if (!consume(')')) throw ParseError("expected ')'", pos);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Integer v(std::string(s.substr(start, pos - start)));
      return RatFun::constant(chart, Rational(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name(s.substr(start, pos - start));
      auto idx = chart.index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      return RatFun::variable(chart, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

RatFun parse_expr(std::string_view text, const Chart& chart) {
  Parser p{text, chart};
  RatFun out = p.expr();
  if (!p.at_end()) throw ParseError("trailing input", p.pos);
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Mono& m = it->first;
    Rational a = it->second;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.chart().var(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += to_string(a);
    } else {
      if (a != 1) {
        out += to_string(a);
        out += "*";
      }
      out += mono;
    }
  }
  return out;
}

std::string to_string(const RatFun& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace dirackit
