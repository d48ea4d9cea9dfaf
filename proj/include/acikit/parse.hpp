#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "acikit/polynomial.hpp"

namespace acikit {

namespace detail {

template <CoefficientField F>
class PolyParser {
 public:
  PolyParser(RingPtr<F> ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Polynomial<F> parse() {
    auto p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<F> expr() {
    skip_ws();
    Polynomial<F> acc(ring_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial<F> term() {
    auto acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  Polynomial<F> factor() {
    auto base = primary();
    if (eat('^')) {
      skip_ws();
      auto e = integer();
      if (e > mpz_class(kMaxExponent)) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial<F> primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer(), den = 1;
      if (eat('/')) den = integer();
      if (den == 0) fail("zero denominator");
      return Polynomial<F>::constant(ring_, ring_->field().from_fraction(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial<F>::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RingPtr<F> ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

/// Parses text such as `3*x1^2*y2 - 1/2*x3`.
template <CoefficientField F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).parse();
}

/// Header of an ideal file: `ring: x1,...,xm over QQ|Fp[:p] [grevlex|lex]`.
struct RingHeader {
  std::vector<std::string> variables;
  std::string field = "QQ";
  std::uint32_t prime = 0;  // nonzero for Fp
  MonomialOrder order = MonomialOrder::grevlex();
};

/// Generator lines as text, together with the parsed header.
struct IdealText {
  RingHeader header;
  std::vector<std::string> generators;
};

inline RingHeader parse_ring_header(std::string_view line) {
  std::string s = detail::trim(line);
  if (s.rfind("ring:", 0) != 0) throw ParseError("first line must start with 'ring:'");
  std::istringstream in(s.substr(5));
  std::string vars, word;
  RingHeader h;
  // Variables may be separated by commas and optional spaces, so read up to "over".
  std::vector<std::string> words;
  while (in >> word) words.push_back(word);
  std::size_t k = 0;
  for (; k < words.size() && words[k] != "over"; ++k) vars += words[k];
  if (k == words.size()) throw ParseError("ring header needs 'over <field>'");
  std::string cur;
  for (char c : vars) {
    if (c == ',') {
      if (cur.empty()) throw ParseError("empty variable name in ring header");
      h.variables.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) h.variables.push_back(cur);
  if (h.variables.empty()) throw ParseError("ring header lists no variables");
  if (++k >= words.size()) throw ParseError("missing field after 'over'");
  const std::string& f = words[k];
  if (f == "QQ") {
    h.field = "QQ";
  } else if (f.rfind("Fp", 0) == 0) {
    h.field = "Fp";
    h.prime = 32003;
    if (f.size() > 2) {
      if (f[2] != ':') throw ParseError("expected Fp or Fp:<prime>");
      try {
        h.prime = static_cast<std::uint32_t>(std::stoul(f.substr(3)));
      } catch (const std::exception&) {
        throw ParseError("bad prime in '" + f + "'");
      }
    }
  } else {
    throw ParseError("unknown field '" + f + "'");
  }
  if (++k < words.size()) {
    if (words[k] == "grevlex") h.order = MonomialOrder::grevlex();
    else if (words[k] == "lex") h.order = MonomialOrder::lex();
    else throw ParseError("unknown order '" + words[k] + "'");
    if (++k < words.size()) throw ParseError("trailing text in ring header");
  }
  return h;
}

/// Splits an ideal file into header and generator lines; `#` starts a comment.
inline IdealText parse_ideal_text(std::string_view text) {
  IdealText out;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      out.header = parse_ring_header(line);
      have_header = true;
    } else {
      out.generators.push_back(line);
    }
  }
  if (!have_header) throw ParseError("empty ideal file");
  return out;
}

/// Renders an ideal file that parse_ideal_text reads back.
template <CoefficientField F>
std::string format_ideal_text(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens) {
  std::string s = "ring: ";
  for (std::size_t i = 0; i < ring->nvars(); ++i) s += (i ? "," : "") + ring->var(i);
  s += " over " + ring->field().name() + " " + ring->order().name() + "\n";
  for (const auto& g : gens) s += g.to_string() + "\n";
  return s;
}

}  // namespace acikit
