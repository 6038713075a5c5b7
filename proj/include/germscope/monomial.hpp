#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace germscope {

/// Exponent vector with one slot per ring variable.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
  }

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent e = 1) {
    Monomial m(nvars);
    m.exps_.at(index) = e;
    m.degree_ = e;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const {
    check_same(other);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    check_same(other);
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    r.degree_ += other.degree_;
    return r;
  }

  /// Exact quotient; `other` must divide `*this`.
  Monomial operator/(const Monomial& other) const {
    if (!other.divides(*this)) throw std::invalid_argument("Monomial: inexact division");
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
    r.degree_ -= other.degree_;
    return r;
  }

  Monomial pow(unsigned e) const {
    Monomial r(*this);
    for (auto& x : r.exps_) x *= e;
    r.degree_ *= e;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    a.check_same(b);
    std::vector<Exponent> e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.exps_[i], b.exps_[i]);
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  void check_same(const Monomial& other) const {
    if (other.exps_.size() != exps_.size()) throw std::invalid_argument("Monomial: ring mismatch");
  }

  std::vector<Exponent> exps_;
  unsigned degree_ = 0;
};

/// Canonical storage and rendering order: total degree ascending, then
/// exponent vectors in descending lexicographic order (x^2, x*y, y^2).
struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() > b.exponents();
  }
};

}  // namespace germscope
