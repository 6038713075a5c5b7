#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "monomial_order.hpp"
#include "rational.hpp"

namespace germscope {

/// Ordered list of variable names.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i])) throw std::invalid_argument("Ring: bad variable name '" + names_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw std::invalid_argument("Ring: repeated variable '" + names_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  static bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms live in a map keyed by `CanonicalLess`, so iteration order is the
/// rendering order and the first term is always of minimal total degree.
class Poly {
 public:
  using Terms = std::map<Monomial, Rat, CanonicalLess>;

  /// Zero in the ring without variables; a placeholder for aggregates.
  Poly() : ring_(std::make_shared<const Ring>(std::vector<std::string>{})) {}

  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("Poly: null ring");
  }

  static Poly constant(RingPtr ring, const Rat& c) {
    Poly p(std::move(ring));
    p.add_term(Monomial(p.nvars()), c);
    return p;
  }
  static Poly variable(RingPtr ring, std::size_t index) {
    Poly p(std::move(ring));
    p.add_term(Monomial::variable(p.nvars(), index), Rat(1));
    return p;
  }
  static Poly variable(RingPtr ring, const std::string& name) {
    auto idx = ring->index_of(name);
    if (!idx) throw std::invalid_argument("Poly: unknown variable '" + name + "'");
    return variable(std::move(ring), *idx);
  }
  static Poly term(RingPtr ring, const Monomial& m, const Rat& c) {
    Poly p(std::move(ring));
    p.add_term(m, c);
    return p;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_->size(); }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rat coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }
  Rat constant_term() const { return coefficient(Monomial(nvars())); }

  /// Highest total degree; -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree()); }
  /// Lowest total degree (the order at the origin); -1 for the zero polynomial.
  int order() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

  bool is_homogeneous() const { return terms_.empty() || order() == total_degree(); }

  void add_term(const Monomial& m, const Rat& c) {
    if (m.size() != nvars()) throw std::invalid_argument("Poly: monomial/ring size mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly homogeneous_part(unsigned d) const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  /// Drops every term of total degree > budget.
  Poly truncated(unsigned budget) const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() > budget) break;
      r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  /// Does the polynomial involve variable `index`?
  bool involves(std::size_t index) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[index] > 0; });
  }

  Rat evaluate(std::span<const Rat> point) const {
    if (point.size() != nvars()) throw std::invalid_argument("Poly::evaluate: point size mismatch");
    Rat sum(0);
    for (const auto& [m, c] : terms_) {
      Rat v = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) v *= germscope::pow(point[i], m[i]);
      sum += v;
    }
    return sum;
  }

  /// Leading monomial and coefficient under `order`. Requires a nonzero polynomial.
  std::pair<Monomial, Rat> leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw std::invalid_argument("leading_term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (order.greater(it->first, best->first)) best = it;
    return *best;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  /// `*this -= c * m * o` without materialising the product.
  void sub_scaled(const Rat& c, const Monomial& m, const Poly& o) {
    check_ring(o);
    if (c == 0) return;
    for (const auto& [om, oc] : o.terms_) add_term(m * om, -(c * oc));
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator+(Poly a, const Rat& s) {
    a.add_term(Monomial(a.nvars()), s);
    return a;
  }
  friend Poly operator-(Poly a, const Rat& s) {
    a.add_term(Monomial(a.nvars()), -s);
    return a;
  }

  friend Poly operator*(const Poly& a, const Poly& b) { return mul_truncated(a, b, std::nullopt); }

  /// Product with every term of degree > budget dropped (when a budget is given).
  friend Poly mul_truncated(const Poly& a, const Poly& b, std::optional<unsigned> budget) {
    a.check_ring(b);
    Poly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_) {
      if (budget && ma.degree() > *budget) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (budget && ma.degree() + mb.degree() > *budget) break;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  Poly times_monomial(const Monomial& m, std::optional<unsigned> budget = std::nullopt) const {
    Poly r(ring_);
    for (const auto& [tm, c] : terms_) {
      if (budget && tm.degree() + m.degree() > *budget) break;
      r.terms_.emplace_hint(r.terms_.end(), tm * m, c);
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  /// Canonical rendering, e.g. `z^2 - x^2*y` or `-3 + 1/2*x`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool negative = c < 0;
      Rat mag = negative ? Rat(-c) : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_string(m);
      if (mono.empty()) {
        out += germscope::to_string(mag);
      } else {
        if (mag != 1) out += germscope::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += ring_->name(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

 private:
  void check_ring(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("Poly: ring mismatch");
  }

  RingPtr ring_;
  Terms terms_;
};

inline Poly pow(const Poly& p, unsigned e, std::optional<unsigned> budget = std::nullopt) {
  Poly result = Poly::constant(p.ring(), Rat(1));
  if (budget) result = result.truncated(*budget);
  Poly base = p;
  while (e > 0) {
    if (e & 1u) result = mul_truncated(result, base, budget);
    e >>= 1u;
    if (e) base = mul_truncated(base, base, budget);
  }
  return result;
}

/// Lowest-degree homogeneous component. The zero polynomial has none.
inline Poly initial_form(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("initial_form: zero polynomial");
  return p.homogeneous_part(static_cast<unsigned>(p.order()));
}

inline Poly partial(const Poly& p, std::size_t var) {
  if (var >= p.nvars()) throw std::invalid_argument("partial: unknown variable");
  Poly r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    auto e = m.exponents();
    Rat k(e[var]);
    e[var] -= 1;
    r.add_term(Monomial(std::move(e)), c * k);
  }
  return r;
}

inline Poly partial(const Poly& p, const std::string& var) {
  auto idx = p.ring()->index_of(var);
  if (!idx) throw std::invalid_argument("partial: unknown variable '" + var + "'");
  return partial(p, *idx);
}

/// Substitutes `subst[i]` for variable i of `p`. All substitutes share a ring,
/// which becomes the ring of the result. With a budget every intermediate
/// product is truncated, which is exact modulo terms of degree > budget.
inline Poly compose(const Poly& p, const std::vector<Poly>& subst, std::optional<unsigned> budget = std::nullopt) {
  if (subst.size() != p.nvars()) throw std::invalid_argument("compose: substitution must cover every variable");
  if (subst.empty()) throw std::invalid_argument("compose: empty substitution");
  const RingPtr& target = subst.front().ring();
  for (const auto& s : subst)
    if (!same_ring(s.ring(), target)) throw std::invalid_argument("compose: substitutes live in different rings");

  // subst^m for every monomial met, each from subst^(m / x_i) times the
  // sparsest substitute x_i divides.
  std::map<Monomial, Poly, CanonicalLess> memo;
  const Poly one = Poly::constant(target, Rat(1));
  std::function<const Poly&(const Monomial&)> value_of = [&](const Monomial& m) -> const Poly& {
    if (m.is_one()) return one;
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    std::size_t best = m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0 && (best == m.size() || subst[i].terms().size() < subst[best].terms().size())) best = i;
    Poly v = mul_truncated(value_of(m / Monomial::variable(m.size(), best)), subst[best], budget);
    return memo.emplace(m, std::move(v)).first->second;
  };

  Poly result(target);
  for (const auto& [m, c] : p.terms()) {
    const Poly& v = value_of(m);
    for (const auto& [tm, tc] : v.terms())
      if (!budget || tm.degree() <= *budget) result.add_term(tm, c * tc);
  }
  return budget ? result.truncated(*budget) : result;
}

/// Re-expresses a polynomial in another ring by variable name. Every variable
/// the polynomial actually uses must exist in `target`.
inline Poly embed(const Poly& p, const RingPtr& target) {
  std::vector<std::size_t> map(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    auto idx = target->index_of(p.ring()->name(i));
    if (!idx) {
      if (p.involves(i)) throw std::invalid_argument("embed: variable '" + p.ring()->name(i) + "' missing in target ring");
      map[i] = target->size();
    } else {
      map[i] = *idx;
    }
  }
  Poly r(target);
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Exponent> e(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) e[map[i]] = m[i];
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

}  // namespace germscope
