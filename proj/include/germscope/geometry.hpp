#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "germ.hpp"
#include "jet.hpp"
#include "presentation.hpp"
#include "roots.hpp"

namespace germscope {

/// Determinant of a square jet matrix by cofactor expansion along rows,
/// memoizing each minor by the bitmask of its remaining columns.
inline Jet jet_determinant(const std::vector<std::vector<Jet>>& m) {
  const std::size_t k = m.size();
  if (k == 0) throw std::invalid_argument("jet_determinant: empty matrix");
  if (k > 24) throw std::invalid_argument("jet_determinant: matrix too large for cofactor expansion");
  for (const auto& row : m)
    if (row.size() != k) throw std::invalid_argument("jet_determinant: matrix is not square");

  int budget = kExactBudget;
  for (const auto& row : m)
    for (const auto& e : row) budget = std::min(budget, e.budget());
  const auto cap = Jet::as_optional(budget);
  const RingPtr& ring = m[0][0].ring();

  std::unordered_map<std::uint32_t, Poly> memo;
  // det of rows [k - popcount(cols), k) against the columns in `cols`.
  auto minor = [&](auto&& self, std::uint32_t cols) -> Poly {
    if (cols == 0) return Poly::constant(ring, Rat(1));
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    const std::size_t row = k - static_cast<std::size_t>(__builtin_popcount(cols));
    Poly acc(ring);
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(cols & (1u << c))) continue;
      const Poly& entry = m[row][c].value();
      if (!entry.is_zero()) {
        Poly term = mul_truncated(entry, self(self, cols & ~(1u << c)), cap);
        if (sign > 0)
          acc += term;
        else
          acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  const std::uint32_t all = k == 32 ? ~0u : ((1u << k) - 1);
  return Jet(minor(minor, all), budget);
}

/// lambda = det(a_ij(X) - Z delta_ij), certified to the entries' degree.
inline Jet fitting_equation(const PresentationData& p) { return jet_determinant(p.matrix); }

/// lambda = +-F^deg together with its certification.
struct ImageEquation {
  Jet lambda;
  std::size_t k = 0;
  Jet reduced;
  unsigned deg = 1;
  int sign = 1;  // lambda = sign * reduced^deg
  int certified_to = -1;
};

namespace detail {

inline unsigned z_degree(const Poly& p, std::size_t z) {
  unsigned d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max<unsigned>(d, m[z]);
  return d;
}

}  // namespace detail

/// Checks that lambda has Z-degree k with Z^k coefficient (-1)^k, Z being the
/// last target variable.
inline void check_lambda_shape(const Jet& lambda, std::size_t k) {
  const std::size_t z = lambda.ring()->size() - 1;
  const Monomial zk = Monomial::variable(lambda.ring()->size(), z, static_cast<Monomial::Exponent>(k));
  if (detail::z_degree(lambda.value(), z) != k || lambda.value().coefficient(zk) != (k % 2 ? -1 : 1))
    throw InternalError("fitting equation: Z-degree or leading Z coefficient is wrong");
}

/// Largest divisor d of k with +-lambda = F^d. The reduced equation is never
/// a proper power, so d is the degree of the map onto its image.
///
/// A truncated lambda can look like a power when its high-order terms are
/// missing. Roots rejected by `admissible` (callers check that F vanishes
/// along the germ) are skipped.
inline ImageEquation map_degree(const Jet& lambda, std::size_t k,
                                const std::function<bool(const Jet&)>& admissible = {}) {
  if (lambda.vanishes()) throw CertificationError("map_degree: lambda vanishes to the certified degree");
  if (k == 0) throw std::invalid_argument("map_degree: k must be positive");
  ImageEquation out{lambda, k, lambda, 1, 1, lambda.budget()};
  for (std::size_t d = k; d > 1; --d) {
    if (k % d != 0) continue;
    for (int sign : {1, -1}) {
      auto root = kth_root_jet(sign > 0 ? lambda : -lambda, static_cast<unsigned>(d));
      if (!root || root->vanishes() || root->value().order() > root->budget()) continue;
      if (admissible && !admissible(*root)) continue;
      out.reduced = *root;
      out.deg = static_cast<unsigned>(d);
      out.sign = sign;
      out.certified_to = root->budget();
      return out;
    }
  }
  return out;
}

/// Initial form of lambda; its order must be within the certified degree.
inline Poly tangent_cone(const Jet& lambda) {
  if (lambda.vanishes()) throw CertificationError("tangent_cone: lambda vanishes to the certified degree; raise --jet");
  const Poly& v = lambda.value();
  if (!lambda.exact() && v.order() > lambda.budget())
    throw CertificationError("tangent_cone: order of lambda exceeds the certified degree; raise --jet");
  return initial_form(v);
}

enum class Smooth { Yes, No, Uncertified };
enum class Lne { Yes, No, Undetermined };

inline std::string to_string(Smooth s) {
  switch (s) {
    case Smooth::Yes: return "Yes";
    case Smooth::No: return "No";
    case Smooth::Uncertified: return "Uncertified";
  }
  return "?";
}

inline std::string to_string(Lne s) {
  switch (s) {
    case Lne::Yes: return "Yes";
    case Lne::No: return "No";
    case Lne::Undetermined: return "Undetermined";
  }
  return "?";
}

/// The image is smooth iff its reduced equation has order 1.
inline Smooth smoothness(const Jet& reduced) {
  if (reduced.vanishes() || (!reduced.exact() && reduced.budget() < 1)) return Smooth::Uncertified;
  return reduced.value().order() == 1 ? Smooth::Yes : Smooth::No;
}

/// Which hypotheses were checked before the verdict.
struct Hypotheses {
  bool finite = false;
  bool mult_eq_gd = false;
  int corank = 0;
  bool injective_asserted = false;
};

struct Verdict {
  Smooth smooth = Smooth::Uncertified;
  Lne lne = Lne::Undetermined;
  std::optional<LinearPower> cone_linear;
  std::string theorem_fired;
  std::string explanation;
  Hypotheses hypotheses;
  std::vector<std::string> notes;
};

/// Inputs of the classification besides the equation.
struct ClassifyInput {
  int corank = 0;
  std::size_t mult = 0;
  bool mult_eq_gd = false;
  bool injective_asserted = false;
};

/// Decision cascade for smoothness and Lipschitz normal embedding of the image.
inline Verdict classify(const ClassifyInput& in, const ImageEquation& eq, const Poly& cone) {
  Verdict v;
  v.hypotheses = {true, in.mult_eq_gd, in.corank, in.injective_asserted};
  const Smooth by_order = smoothness(eq.reduced);
  if (cone.is_homogeneous() && !cone.is_zero())
    v.cone_linear = power_of_linear(cone, static_cast<unsigned>(cone.total_degree()));

  if (in.mult_eq_gd) {
    const bool equal = in.mult == eq.deg;
    if (by_order != Smooth::Uncertified && equal != (by_order == Smooth::Yes))
      throw InternalError("classify: mult = deg disagrees with the order of the reduced equation");
  }

  if (in.corank == 0) {
    v.smooth = Smooth::Yes;
    v.lne = Lne::Yes;
    v.theorem_fired = "immersion";
    v.explanation = "corank 0: the image is the graph of a function";
    if (by_order == Smooth::No) throw InternalError("classify: immersive germ with singular image equation");
  } else if (by_order == Smooth::Yes) {
    v.smooth = Smooth::Yes;
    v.lne = Lne::Yes;
    v.theorem_fired = "smooth-image";
    v.explanation = "reduced equation has order 1";
  } else if (in.mult_eq_gd) {
    const bool equal = in.mult == eq.deg;
    v.smooth = equal ? Smooth::Yes : Smooth::No;
    v.lne = equal ? Lne::Yes : Lne::No;
    v.theorem_fired = "mult-gd-equivalence";
    v.explanation = "mult = gd: LNE iff smooth iff mult = deg (mult " + std::to_string(in.mult) +
                    (equal ? " = " : " != ") + "deg " + std::to_string(eq.deg) + ")";
  } else if (in.injective_asserted) {
    v.smooth = by_order;
    v.lne = Lne::No;
    v.theorem_fired = "injective-embedding";
    v.explanation = "injective germ: LNE iff embedding, and corank " + std::to_string(in.corank) + " > 0";
    v.notes.push_back("injectivity is asserted, not checked; the equivalence is applied to a finite germ only");
  } else {
    v.smooth = by_order;
    if (v.cone_linear && by_order == Smooth::No) {
      v.lne = Lne::No;
      v.theorem_fired = "linear-cone-singular";
      v.explanation = "tangent cone is a hyperplane but the image is singular";
    } else {
      v.lne = Lne::Undetermined;
      v.theorem_fired = "none";
      v.explanation = "mult != gd, injectivity not asserted, and the tangent cone is not a hyperplane";
    }
  }

  if (v.smooth == Smooth::Yes && v.lne != Lne::Yes) throw InternalError("verdict: smooth image must be LNE");
  if (v.cone_linear && v.smooth == Smooth::No && v.lne != Lne::No)
    throw InternalError("verdict: singular image with a hyperplane cone cannot be LNE");
  return v;
}

/// Substitution taking polynomials in working coordinates (after the linear
/// change M and the shear Z -> Z - p(X)) back to the original target coordinates.
inline std::vector<Jet> working_coordinates(const RatMatrix& change, const Jet& shear, const RingPtr& target) {
  const std::size_t m = change.size();
  std::vector<Poly> t;
  for (std::size_t i = 0; i < m; ++i) t.push_back(Poly::variable(target, i));
  std::vector<Poly> mt = apply_matrix(change, t);
  std::vector<Poly> head(mt.begin(), mt.end() - 1);
  head.push_back(Poly(target));
  std::vector<Jet> out;
  for (std::size_t i = 0; i + 1 < m; ++i) out.push_back(Jet::exact(mt[i]));
  const Poly p = compose(shear.value(), head, Jet::as_optional(shear.budget()));
  out.push_back(Jet(mt.back() - p, shear.exact() ? kExactBudget : shear.budget()));
  return out;
}

/// A target function pulled back along the germ, truncated to `budget`.
inline Poly pullback_along(const Jet& g, const MapGerm& f) {
  return compose(g.value(), f.components, Jet::as_optional(g.budget()));
}

}  // namespace germscope
