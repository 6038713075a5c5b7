#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace germscope {

using RatMatrix = std::vector<std::vector<Rat>>;

/// Rank of a dense rational matrix by exact Gaussian elimination.
inline std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline bool is_invertible(const RatMatrix& m) { return !m.empty() && m.size() == m[0].size() && rank(m) == m.size(); }

/// Echelon accumulator for sparse vectors indexed by monomials.
///
/// Vectors are stored as polynomials; each pivot is keyed by its lowest
/// canonical monomial, so reduction only ever moves a vector's leading
/// monomial upward and terminates. Every pivot remembers which combination of
/// inserted vectors produced it, which turns the accumulator into a solver.
class SparseEchelon {
 public:
  using Combination = std::map<std::size_t, Rat>;

  /// Without `track`, combinations are not recorded and only rank and
  /// membership are meaningful.
  explicit SparseEchelon(RingPtr ring, bool track = true) : ring_(std::move(ring)), track_(track) {}

  /// Inserts `v` under label `id`. Returns false when v is already in the span.
  bool insert(Poly v, std::size_t id) {
    Combination comb{{id, Rat(1)}};
    while (!v.is_zero()) {
      const auto& [lead, coeff] = *v.terms().begin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        Rat inv = Rat(1) / coeff;
        v *= inv;
        if (track_) scale(comb, inv);
        Monomial key = lead;
        pivots_.emplace(std::move(key), Pivot{std::move(v), std::move(comb)});
        return true;
      }
      Rat c = coeff;
      v.sub_scaled(c, Monomial(v.nvars()), it->second.vector);
      if (track_) axpy(comb, -c, it->second.combination);
    }
    return false;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  /// Combination of inserted vectors equal to `target`, or nullopt if target
  /// is outside the span.
  std::optional<Combination> solve(Poly target) const {
    Combination solution;
    while (!target.is_zero()) {
      const auto& [lead, coeff] = *target.terms().begin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) return std::nullopt;
      Rat c = coeff;
      target.sub_scaled(c, Monomial(target.nvars()), it->second.vector);
      if (track_) axpy(solution, c, it->second.combination);
    }
    return solution;
  }

  bool contains(const Poly& v) const { return solve(v).has_value(); }

 private:
  struct Pivot {
    Poly vector;
    Combination combination;
  };

  static void scale(Combination& c, const Rat& s) {
    for (auto& [k, v] : c) v *= s;
  }
  static void axpy(Combination& y, const Rat& a, const Combination& x) {
    for (const auto& [k, v] : x) {
      auto [it, inserted] = y.try_emplace(k, a * v);
      if (!inserted) {
        it->second += a * v;
        if (it->second == 0) y.erase(it);
      }
    }
  }

  RingPtr ring_;
  bool track_ = true;
  std::map<Monomial, Pivot, CanonicalLess> pivots_;
};

/// All monomials of total degree <= max_degree, in canonical order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Monomial> out;
  std::vector<Monomial::Exponent> e(nvars, 0);
  auto fill = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var + 1 >= nvars) {
      if (nvars) e[nvars - 1] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  for (unsigned d = 0; d <= max_degree; ++d) {
    if (nvars == 0 && d > 0) break;
    fill(fill, 0, d);
  }
  return out;
}

}  // namespace germscope
