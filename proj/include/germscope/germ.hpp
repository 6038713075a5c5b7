#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "local_algebra.hpp"
#include "poly.hpp"

namespace germscope {

inline constexpr int kDefaultTrials = 8;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// A polynomial map germ (C^n, 0) -> (C^{n+1}, 0).
struct MapGerm {
  RingPtr source;
  std::vector<Poly> components;
  bool injective = false;  // user assertion, never computed

  std::size_t n() const { return source->size(); }
};

/// Builds a germ and checks its invariants: n >= 1, n+1 components in the
/// source ring, each vanishing at the origin.
inline MapGerm make_germ(RingPtr source, std::vector<Poly> components, bool injective = false) {
  if (!source || source->size() == 0) throw std::invalid_argument("map germ needs at least one source variable");
  if (components.size() != source->size() + 1)
    throw std::invalid_argument("map germ from C^" + std::to_string(source->size()) + " needs " +
                                std::to_string(source->size() + 1) + " components, got " +
                                std::to_string(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!same_ring(components[i].ring(), source)) throw std::invalid_argument("map germ component in a foreign ring");
    if (components[i].constant_term() != 0)
      throw std::invalid_argument("component " + std::to_string(i + 1) + " does not vanish at the origin");
  }
  return MapGerm{std::move(source), std::move(components), injective};
}

/// Target coordinates: upper-cased source names for the first n, then `Z`
/// (or the first free name among W, V, U, T, S, Z0, Z1, ...). Falls back to
/// X1..Xn when upper-casing collides.
inline RingPtr target_ring(const MapGerm& f) {
  std::vector<std::string> names;
  for (const auto& v : f.source->names()) {
    std::string up = v;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    names.push_back(up);
  }
  auto has = [&](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
  bool clash = false;
  for (std::size_t i = 0; i < names.size() && !clash; ++i)
    for (std::size_t j = 0; j < i && !clash; ++j) clash = names[i] == names[j];
  if (clash) {
    names.clear();
    for (std::size_t i = 0; i < f.n(); ++i) names.push_back("X" + std::to_string(i + 1));
  }
  std::vector<std::string> candidates{"Z", "W", "V", "U", "T", "S"};
  for (int i = 0; candidates.size() < 64; ++i) candidates.push_back("Z" + std::to_string(i));
  for (const auto& c : candidates)
    if (!has(c)) {
      names.push_back(c);
      break;
    }
  return make_ring(std::move(names));
}

/// n minus the rank of the Jacobian at the origin.
inline int corank(const MapGerm& f) {
  const std::size_t n = f.n();
  RatMatrix jac(f.components.size(), std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < f.components.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i][j] = f.components[i].coefficient(Monomial::variable(n, j));
  return static_cast<int>(n - rank(jac));
}

/// dim O_n / <f_1, ..., f_{n+1}>; nullopt when f is not finite.
inline Dim multiplicity(const MapGerm& f) { return quotient_dim(f.components); }

inline std::vector<Poly> apply_matrix(const RatMatrix& m, const std::vector<Poly>& v) {
  std::vector<Poly> out;
  for (const auto& row : m) {
    if (row.size() != v.size()) throw std::invalid_argument("apply_matrix: size mismatch");
    Poly acc(v.front().ring());
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) acc += row[j] * v[j];
    out.push_back(std::move(acc));
  }
  return out;
}

/// The gd value together with the projection that attains it.
struct GenericDegree {
  std::size_t gd = 0;
  RatMatrix projection;     // n x (n+1)
  std::string attained_by;  // "drop coordinate j" or "random trial t"
  int trials = 0;
  std::uint64_t seed = 0;
  std::size_t evaluated = 0;  // projections actually tried
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Integer projection matrix for one trial; each trial owns its generator so
/// results do not depend on how many trials run or in which order.
inline RatMatrix random_projection(std::size_t n, std::uint64_t seed, int trial) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
  RatMatrix m(n, std::vector<Rat>(n + 1));
  for (auto& row : m)
    for (auto& e : row) e = static_cast<long>(rng() % 21) - 10;
  return m;
}

inline RatMatrix drop_coordinate(std::size_t n, std::size_t dropped) {
  RatMatrix m(n, std::vector<Rat>(n + 1, Rat(0)));
  for (std::size_t i = 0, j = 0; j <= n; ++j) {
    if (j == dropped) continue;
    m[i++][j] = 1;
  }
  return m;
}

}  // namespace detail

/// Sampled generic degree: the minimum of dim O_n/<pi o f> over the n+1
/// coordinate-dropping projections (last coordinate first) and `trials`
/// seeded random integer projections with entries in [-10, 10].
///
/// The true gd is attained by generic projections, so the sampled minimum is
/// correct with probability one. When `lower_bound` is reached (mult f is a
/// lower bound for gd) the search stops early.
inline GenericDegree generic_degree(const MapGerm& f, int trials = kDefaultTrials, std::uint64_t seed = kDefaultSeed,
                                    std::optional<std::size_t> lower_bound = std::nullopt) {
  const std::size_t n = f.n();
  GenericDegree best;
  best.trials = trials;
  best.seed = seed;
  bool found = false;

  auto consider = [&](const RatMatrix& pi, const std::string& label) {
    if (rank(pi) != n) return false;
    ++best.evaluated;
    const auto g = apply_matrix(pi, f.components);
    Dim d = found ? quotient_dim_at_most(g, best.gd - 1) : quotient_dim(g);
    if (d && (!found || *d < best.gd)) {
      found = true;
      best.gd = *d;
      best.projection = pi;
      best.attained_by = label;
    }
    return found && lower_bound && best.gd <= *lower_bound;
  };

  for (std::size_t j = n + 1; j-- > 0;)
    if (consider(detail::drop_coordinate(n, j), "drop coordinate " + std::to_string(j + 1))) return best;
  for (int t = 0; t < trials; ++t)
    if (consider(detail::random_projection(n, seed, t), "random trial " + std::to_string(t))) return best;

  if (!found) throw NonFiniteGerm("generic_degree: no sampled projection is finite");
  return best;
}

/// Completes an n x (n+1) projection to an invertible square matrix by
/// appending a unit row e_j, trying j from the last coordinate down.
inline RatMatrix complete_projection(const RatMatrix& projection) {
  const std::size_t n = projection.size();
  for (std::size_t j = n + 1; j-- > 0;) {
    RatMatrix m = projection;
    std::vector<Rat> row(n + 1, Rat(0));
    row[j] = 1;
    m.push_back(row);
    if (is_invertible(m)) return m;
  }
  throw std::invalid_argument("complete_projection: projection is not surjective");
}

/// Linear target change: components become M * components.
inline MapGerm apply_target_change(const MapGerm& f, const RatMatrix& m) {
  if (m.size() != f.components.size() || !is_invertible(m))
    throw std::invalid_argument("apply_target_change: matrix must be invertible of size n+1");
  return MapGerm{f.source, apply_matrix(m, f.components), f.injective};
}

/// Target shear (X, Z) -> (X, Z - p(X)); `p` lives in the target ring and may
/// not involve the last coordinate. With a budget, the result is a jet of that
/// source degree.
inline MapGerm apply_shear(const MapGerm& f, const Poly& p, std::optional<unsigned> budget = std::nullopt) {
  const std::size_t n = f.n();
  if (p.nvars() != n + 1) throw std::invalid_argument("apply_shear: p must live in the target ring");
  if (p.involves(n)) throw std::invalid_argument("apply_shear: p may only involve the first n target coordinates");
  std::vector<Poly> subst(f.components.begin(), f.components.end());
  MapGerm g = f;
  g.components.back() -= compose(p, subst, budget);
  if (budget) g.components.back() = g.components.back().truncated(*budget);
  if (g.components.back().constant_term() != 0)
    throw std::invalid_argument("apply_shear: p must vanish at the origin");
  return g;
}

/// Outcome of the mult = gd check, with the Remark's membership witness.
struct MultGdCheck {
  bool equal = false;
  std::size_t mult = 0;
  GenericDegree gd;
  RatMatrix change;   // invertible target change whose first n rows attain gd
  MapGerm normalized; // (fbar, h) after the change
  bool witness = false;  // h in <fbar>
};

/// mult f = gd(f) iff, after the gd-attaining linear change, h lies in <fbar>.
/// Both routes are computed and must agree.
inline MultGdCheck mult_eq_gd(const MapGerm& f, int trials = kDefaultTrials, std::uint64_t seed = kDefaultSeed) {
  Dim mult = multiplicity(f);
  if (!mult) throw NonFiniteGerm("the quotient by the components is infinite-dimensional");
  MultGdCheck out;
  out.mult = *mult;
  out.gd = generic_degree(f, trials, seed, mult);
  out.change = complete_projection(out.gd.projection);
  out.normalized = apply_target_change(f, out.change);
  out.equal = out.mult == out.gd.gd;

  std::vector<Poly> fbar(out.normalized.components.begin(), out.normalized.components.end() - 1);
  const Poly& h = out.normalized.components.back();
  out.witness = ideal_member(h, std_basis(fbar, MonomialOrder::local_negdegrevlex()));
  if (out.witness != out.equal)
    throw InternalError("mult = gd check disagrees with the membership witness h in <fbar>");
  return out;
}

/// First-order invariants of a germ.
struct Invariants {
  int corank = 0;
  Dim mult;
  Dim gd;
  RatMatrix gd_projection;
  bool mult_eq_gd = false;
};

}  // namespace germscope
