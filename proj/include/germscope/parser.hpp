#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "germ.hpp"
#include "poly.hpp"

namespace germscope {

/// 1-based position in the input text.
struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Parsed input together with where each map component started.
struct GermSource {
  std::string text;
  MapGerm germ;
  std::vector<SourceLocation> components;
};

namespace detail {

/// Recursive-descent parser for one polynomial expression.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' integer)?
///   atom   := integer ('/' integer)? | identifier | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t column, RingPtr ring)
      : s_(text), line_(line), col0_(column), ring_(std::move(ring)) {}

  Poly parse() {
    Poly p = expr();
    skip_space();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col0_ + pos_); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    skip_space();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("exponent must be a non-negative integer");
    BigInt e = integer();
    if (e > 1000) fail("exponent too large");
    return germscope::pow(base, static_cast<unsigned>(e.get_ui()));
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  Poly atom() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat value(integer());
      if (accept('/')) {
        skip_space();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected an integer denominator after '/'");
        const std::size_t at = pos_;
        BigInt den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        value /= Rat(den);
      }
      return Poly::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
  RingPtr ring_;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses the line-oriented `.germ` format:
///
///   # comment
///   vars: x y
///   map: x, y^2, x*y
///   assert: injective
///
/// The `map:` line may continue on following lines that carry no keyword.
inline GermSource parse_germ_source(const std::string& text) {
  struct Line {
    std::string_view body;
    std::size_t number;
    std::size_t column;  // column of body.front()
  };
  std::vector<Line> lines;
  {
    std::string_view rest(text);
    std::size_t number = 0;
    while (!rest.empty() || number == 0) {
      ++number;
      std::size_t nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      lines.push_back({line, number, 1});
      if (rest.empty()) break;
    }
  }

  bool have_vars = false, have_map = false, injective = false;
  std::vector<std::string> names;
  // Map text as (segment, line, column) pieces, joined by spaces.
  std::vector<Line> map_pieces;
  bool in_map = false;

  for (const auto& ln : lines) {
    std::string_view body = ln.body;
    std::size_t lead = 0;
    while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
    if (lead == body.size()) continue;
    std::size_t colon = body.find(':');
    std::string_view key = colon == std::string_view::npos ? std::string_view{} : detail::trim(body.substr(0, colon));
    const bool keyword = key == "vars" || key == "map" || key == "assert";
    if (!keyword) {
      if (colon != std::string_view::npos) throw ParseError("unknown key '" + std::string(key) + "'", ln.number, lead + 1);
      if (in_map) {
        map_pieces.push_back({body, ln.number, 1});
        continue;
      }
      throw ParseError("expected 'vars:', 'map:' or 'assert:'", ln.number, lead + 1);
    }
    in_map = false;
    std::string_view value = body.substr(colon + 1);
    const std::size_t value_col = colon + 2;
    if (key == "vars") {
      if (have_vars) throw ParseError("duplicate 'vars:' line", ln.number, lead + 1);
      have_vars = true;
      std::size_t i = 0;
      while (i < value.size()) {
        while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
        if (i == value.size()) break;
        std::size_t start = i;
        while (i < value.size() && !std::isspace(static_cast<unsigned char>(value[i]))) ++i;
        std::string name(value.substr(start, i - start));
        if (!Ring::is_identifier(name))
          throw ParseError("invalid variable name '" + name + "'", ln.number, value_col + start);
        for (const auto& prev : names)
          if (prev == name) throw ParseError("repeated variable '" + name + "'", ln.number, value_col + start);
        names.push_back(std::move(name));
      }
      if (names.empty()) throw ParseError("'vars:' needs at least one variable", ln.number, value_col);
    } else if (key == "map") {
      if (have_map) throw ParseError("duplicate 'map:' line", ln.number, lead + 1);
      have_map = true;
      in_map = true;
      map_pieces.push_back({value, ln.number, value_col});
    } else {
      std::string_view what = detail::trim(value);
      if (what != "injective")
        throw ParseError("unknown assertion '" + std::string(what) + "'", ln.number, value_col);
      injective = true;
    }
  }
  const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
  if (!have_vars) throw ParseError("missing 'vars:' line", last_line, 1);
  if (!have_map) throw ParseError("missing 'map:' line", last_line, 1);

  RingPtr ring = make_ring(names);
  GermSource out{text, MapGerm{}, {}};
  std::vector<Poly> components;

  // Split on commas outside parentheses; continuation lines join with a space.
  std::string current;
  SourceLocation current_at{0, 0};
  int depth = 0;
  auto flush = [&](std::size_t line, std::size_t column) {
    std::string_view body = current;
    std::size_t lead = 0;
    while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
    if (lead == body.size()) throw ParseError("empty map component", line, column);
    SourceLocation at = current_at;
    if (at.line == 0) at = {line, column};
    detail::ExprParser parser(body.substr(lead), at.line, at.column, ring);
    Poly p = parser.parse();
    if (p.constant_term() != 0)
      throw ParseError("component " + std::to_string(components.size() + 1) + " does not vanish at the origin",
                       at.line, at.column);
    components.push_back(std::move(p));
    out.components.push_back(at);
    current.clear();
    current_at = {0, 0};
  };
  std::size_t end_line = 1, end_col = 1;
  for (const auto& piece : map_pieces) {
    for (std::size_t i = 0; i < piece.body.size(); ++i) {
      const char c = piece.body[i];
      const std::size_t col = piece.column + i;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        flush(piece.number, col);
        continue;
      }
      if (current_at.line == 0 && !std::isspace(static_cast<unsigned char>(c))) current_at = {piece.number, col};
      current.push_back(c);
    }
    current.push_back(' ');
    end_line = piece.number;
    end_col = piece.column + piece.body.size();
  }
  flush(end_line, end_col);

  if (components.size() != names.size() + 1)
    throw ParseError("a germ in " + std::to_string(names.size()) + " variables needs " +
                         std::to_string(names.size() + 1) + " components, got " + std::to_string(components.size()),
                     map_pieces.front().number, map_pieces.front().column);
  out.germ = make_germ(ring, std::move(components), injective);
  return out;
}

inline MapGerm parse_germ(const std::string& text) { return parse_germ_source(text).germ; }

/// One polynomial expression over `ring`.
inline Poly parse_poly(const std::string& text, const RingPtr& ring) { return detail::ExprParser(text, 1, 1, ring).parse(); }

/// Canonical `.germ` text; parses back to an identical germ.
inline std::string render_germ(const MapGerm& f) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : f.source->names()) out << ' ' << v;
  out << "\nmap: ";
  for (std::size_t i = 0; i < f.components.size(); ++i) out << (i ? ", " : "") << f.components[i].to_string();
  out << '\n';
  if (f.injective) out << "assert: injective\n";
  return out.str();
}

}  // namespace germscope
