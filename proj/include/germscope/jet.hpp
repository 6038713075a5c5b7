#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace germscope {

/// Budget marker for values known exactly.
inline constexpr int kExactBudget = std::numeric_limits<int>::max();

/// A power series known modulo terms of total degree > budget.
///
/// The stored value never carries a term above the budget; arithmetic
/// propagates the smaller budget of its operands.
class Jet {
 public:
  Jet() : Jet(Poly(), kExactBudget) {}

  Jet(Poly value, int budget) : value_(std::move(value)), budget_(budget) {
    if (budget < 0) throw std::invalid_argument("Jet: negative budget");
    if (!exact()) value_ = value_.truncated(static_cast<unsigned>(budget));
  }

  static Jet exact(Poly value) { return Jet(std::move(value), kExactBudget); }

  const Poly& value() const noexcept { return value_; }
  int budget() const noexcept { return budget_; }
  bool exact() const noexcept { return budget_ == kExactBudget; }
  const RingPtr& ring() const noexcept { return value_.ring(); }

  /// True when the truncated value is zero, i.e. the order exceeds the budget
  /// (or the series is exactly zero).
  bool vanishes() const noexcept { return value_.is_zero(); }

  std::string budget_string() const { return exact() ? "exact" : std::to_string(budget_); }

  friend Jet operator+(const Jet& a, const Jet& b) { return Jet(a.value_ + b.value_, std::min(a.budget_, b.budget_)); }
  friend Jet operator-(const Jet& a, const Jet& b) { return Jet(a.value_ - b.value_, std::min(a.budget_, b.budget_)); }
  friend Jet operator-(const Jet& a) { return Jet(-a.value_, a.budget_); }
  friend Jet operator*(const Rat& s, const Jet& a) { return Jet(s * a.value_, a.budget_); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    int budget = std::min(a.budget_, b.budget_);
    return Jet(mul_truncated(a.value_, b.value_, as_optional(budget)), budget);
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.budget_ == b.budget_ && a.value_ == b.value_; }

  static std::optional<unsigned> as_optional(int budget) {
    if (budget == kExactBudget) return std::nullopt;
    return static_cast<unsigned>(budget);
  }

 private:
  Poly value_;
  int budget_;
};

inline Jet pow(const Jet& j, unsigned e) { return Jet(pow(j.value(), e, Jet::as_optional(j.budget())), j.budget()); }

/// Jet composition. Certification survives substitution only when every
/// substitute vanishes at the origin (unless `p` is exact), since otherwise the
/// unknown high-degree tail of `p` leaks into low degrees.
inline Jet compose(const Jet& p, const std::vector<Jet>& subst) {
  if (subst.empty()) throw std::invalid_argument("compose: empty substitution");
  int budget = kExactBudget;
  for (const auto& s : subst) budget = std::min(budget, s.budget());
  if (!p.exact()) {
    for (const auto& s : subst)
      if (s.value().constant_term() != 0)
        throw std::invalid_argument("compose: substitute with nonzero constant term into a truncated jet");
    budget = std::min(budget, p.budget());
  }
  std::vector<Poly> values;
  values.reserve(subst.size());
  for (const auto& s : subst) values.push_back(s.value());
  return Jet(compose(p.value(), values, Jet::as_optional(budget)), budget);
}

}  // namespace germscope
