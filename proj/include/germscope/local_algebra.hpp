#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"

#ifdef GERMSCOPE_CHECK_NF
#include <atomic>
#endif

namespace germscope {

inline constexpr unsigned kDefaultStaircaseCap = 64;
inline constexpr unsigned kCornerSearchCap = 24;
inline constexpr std::size_t kCornerJetSize = 500;  // monomials in the largest jet space searched

/// Quotient dimension; nullopt stands for an infinite-dimensional quotient.
using Dim = std::optional<std::size_t>;

inline std::string dim_string(const Dim& d) { return d ? std::to_string(*d) : "infinite"; }

#ifdef GERMSCOPE_CHECK_NF
/// Number of normal forms whose defining identity was verified (test builds).
inline std::atomic<std::size_t> verified_normal_forms{0};
#endif

/// Result of Mora's weak normal form: unit * p = sum(quotients[i] * basis[i]) + remainder.
struct NormalForm {
  Poly unit;
  std::vector<Poly> quotients;
  Poly remainder;
};

namespace detail {

inline unsigned ecart(const Poly& p, const Monomial& lm) {
  return static_cast<unsigned>(p.total_degree()) - lm.degree();
}

}  // namespace detail

/// Mora's weak normal form of `p` with respect to `basis` under a local order.
///
/// Reducers are chosen by minimal ecart, then smallest leading monomial, then
/// insertion order; intermediate remainders join the reducer set whenever the
/// chosen reducer has larger ecart. The remainder is zero or has a leading
/// monomial divisible by no leading monomial of the basis.
inline NormalForm mora_nf(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& order) {
  if (!order.is_local()) throw std::invalid_argument("mora_nf: order must be local");
  const RingPtr& ring = p.ring();
  const std::size_t nb = basis.size();

  // Each reducer t is tracked as t = u_t * p + sum(c_t[i] * basis[i]).
  struct Reducer {
    Poly poly;
    Monomial lm;
    Rat lc;
    unsigned ecart;
    Poly u;
    std::vector<Poly> c;
  };
  std::vector<Reducer> reducers;
  reducers.reserve(nb + 8);
  for (std::size_t i = 0; i < nb; ++i) {
    if (basis[i].is_zero()) continue;
    if (!same_ring(basis[i].ring(), ring)) throw std::invalid_argument("mora_nf: ring mismatch");
    auto [lm, lc] = basis[i].leading_term(order);
    std::vector<Poly> c(nb, Poly(ring));
    c[i] = Poly::constant(ring, Rat(1));
    unsigned e = detail::ecart(basis[i], lm);
    reducers.push_back({basis[i], std::move(lm), std::move(lc), e, Poly(ring), std::move(c)});
  }

  Poly h = p;
  Poly u = Poly::constant(ring, Rat(1));
  std::vector<Poly> c(nb, Poly(ring));

  while (!h.is_zero()) {
    auto [lm, lc] = h.leading_term(order);
    const Reducer* best = nullptr;
    for (const auto& r : reducers) {
      if (!r.lm.divides(lm)) continue;
      if (!best || r.ecart < best->ecart ||
          (r.ecart == best->ecart && order.compare(r.lm, best->lm) == Cmp::LT))
        best = &r;
    }
    if (!best) break;
    const unsigned h_ecart = detail::ecart(h, lm);
    Monomial m = lm / best->lm;
    Rat factor = lc / best->lc;
    // Copy before a possible reallocation of `reducers`.
    Reducer chosen = *best;
    if (chosen.ecart > h_ecart) reducers.push_back({h, lm, lc, h_ecart, u, c});
    h.sub_scaled(factor, m, chosen.poly);
    u.sub_scaled(factor, m, chosen.u);
    for (std::size_t i = 0; i < nb; ++i) c[i].sub_scaled(factor, m, chosen.c[i]);
  }

  NormalForm nf{std::move(u), {}, std::move(h)};
  nf.quotients.reserve(nb);
  for (auto& ci : c) nf.quotients.push_back(-ci);

#ifdef GERMSCOPE_CHECK_NF
  Poly lhs = nf.unit * p - nf.remainder;
  for (std::size_t i = 0; i < nb; ++i) lhs -= nf.quotients[i] * basis[i];
  if (!lhs.is_zero()) throw InternalError("mora_nf: u*p - sum(q*b) - r != 0");
  if (nf.unit.constant_term() != 1) throw InternalError("mora_nf: u(0) != 1");
  ++verified_normal_forms;
#endif
  return nf;
}

namespace detail {

struct CornerSearch {
  std::optional<unsigned> corner;
  bool over_limit = false;  // the jet quotient passed dim_limit first
};

inline CornerSearch corner_search(const std::vector<Poly>& gens, unsigned cap, std::optional<std::size_t> dim_limit) {
  std::vector<const Poly*> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(&g);
  if (nonzero.empty()) return {};
  const RingPtr& ring = nonzero.front()->ring();
  const std::size_t n = ring->size();
  unsigned start = cap + 1;
  for (const Poly* g : nonzero) start = std::min(start, static_cast<unsigned>(g->order()));
  if (start == 0) return {0u, false};  // unit ideal
  // m^d lies in I + m^{d+1} exactly when the jet quotient stops growing at d.
  std::size_t prev = monomials_up_to(n, start - 1).size();
  for (unsigned d = start; d <= cap; ++d) {
    const auto monos = monomials_up_to(n, d);
    if (monos.size() > kCornerJetSize) break;
    SparseEchelon echelon(ring, false);
    for (const Poly* g : nonzero) {
      const unsigned ord = static_cast<unsigned>(g->order());
      for (const auto& m : monos) {
        if (m.degree() + ord > d) break;
        echelon.insert(g->times_monomial(m, d), 0);
      }
    }
    const std::size_t cur = monos.size() - echelon.rank();
    if (cur == prev) return {d, false};
    if (dim_limit && cur > *dim_limit) return {std::nullopt, true};
    prev = cur;
  }
  return {};
}

}  // namespace detail

/// Smallest d with m^d inside <gens> + m^{d+1}, found by linear algebra on
/// d-jets; by Nakayama m^d then lies in the local ideal itself. nullopt when
/// no such d <= cap exists within jet spaces of kCornerJetSize monomials, or
/// once the jet quotient exceeds `dim_limit`.
inline std::optional<unsigned> corner_degree(const std::vector<Poly>& gens, unsigned cap = kCornerSearchCap,
                                             std::optional<std::size_t> dim_limit = std::nullopt) {
  return detail::corner_search(gens, cap, dim_limit).corner;
}

/// A local standard basis with its leading data.
///
/// When the ideal contains a power m^N of the maximal ideal, `corner` holds
/// the least such N. The monomials of degree N then belong to the ideal and
/// `reducers()` appends them, which keeps every normal form below degree N.
struct StdBasis {
  std::vector<Poly> generators;
  MonomialOrder order;
  std::vector<Monomial> leading_monomials;
  std::optional<unsigned> corner;

  const RingPtr& ring() const { return generators.front().ring(); }

  std::vector<Poly> reducers() const {
    std::vector<Poly> out = generators;
    if (corner && *corner > 0)
      for (const auto& m : monomials_up_to(ring()->size(), *corner))
        if (m.degree() == *corner) out.push_back(Poly::term(ring(), m, Rat(1)));
    return out;
  }
};

/// Standard basis of the ideal generated by `gens` under a local order.
///
/// Buchberger-style pair completion with Mora's weak normal form; pairs are
/// processed in order of the degree of their lcm. The result is minimal and
/// has leading coefficients 1. For finite colength the corner monomials join
/// the working set, since without them reductions can descend through
/// arbitrarily many degrees with swelling coefficients.
inline StdBasis std_basis(const std::vector<Poly>& gens, const MonomialOrder& order) {
  if (gens.empty()) throw std::invalid_argument("std_basis: empty generator list");
  if (!order.is_local()) throw std::invalid_argument("std_basis: order must be local");

  std::vector<Poly> basis;
  std::vector<Monomial> lms;
  auto push = [&](Poly g) {
    auto [lm, lc] = g.leading_term(order);
    g *= Rat(1) / lc;
    basis.push_back(std::move(g));
    lms.push_back(std::move(lm));
  };
  for (const auto& g : gens)
    if (!g.is_zero()) push(g);
  if (basis.empty()) throw std::invalid_argument("std_basis: all generators are zero");
  const std::optional<unsigned> corner = corner_degree(basis);
  if (corner && *corner > 0)
    for (const auto& m : monomials_up_to(basis.front().nvars(), *corner))
      if (m.degree() == *corner) push(Poly::term(basis.front().ring(), m, Rat(1)));
  struct Pair {
    std::size_t i, j;
    unsigned degree;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j, lcm(lms[i], lms[j]).degree()});
  };
  for (std::size_t j = 1; j < basis.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = *it;
    pairs.erase(it);

    const Monomial l = lcm(lms[pr.i], lms[pr.j]);
    Poly s(basis[pr.i].ring());
    s.sub_scaled(Rat(-1), l / lms[pr.i], basis[pr.i]);
    s.sub_scaled(Rat(1), l / lms[pr.j], basis[pr.j]);
    if (s.is_zero()) continue;
    NormalForm nf = mora_nf(s, basis, order);
    if (!nf.remainder.is_zero()) {
      push(std::move(nf.remainder));
      add_pairs(basis.size() - 1);
    }
  }

  // Minimalise: drop generators whose leading monomial is a multiple of another's.
  StdBasis out{{}, order, {}, corner};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || !lms[j].divides(lms[i])) continue;
      redundant = !(lms[j] == lms[i]) || j < i;
    }
    if (!redundant) {
      out.generators.push_back(basis[i]);
      out.leading_monomials.push_back(lms[i]);
    }
  }
  return out;
}

/// Standard monomials of a standard basis' leading ideal.
struct Staircase {
  std::vector<Monomial> monomial_basis;
  bool infinite = false;
  std::string diagnostic;

  Dim dimension() const { return infinite ? Dim{} : Dim{monomial_basis.size()}; }
};

/// Enumerates the standard monomials, sorted canonically (degree, then lex).
/// Reports an infinite staircase when some variable has no pure power of
/// exponent <= cap among the leading monomials.
inline Staircase staircase(const StdBasis& basis, unsigned cap = kDefaultStaircaseCap) {
  const std::size_t n = basis.ring()->size();
  if (std::any_of(basis.leading_monomials.begin(), basis.leading_monomials.end(),
                  [](const Monomial& m) { return m.is_one(); }))
    return Staircase{};  // unit ideal
  std::vector<unsigned> axis(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& lm : basis.leading_monomials)
      if (lm[v] == lm.degree() && (axis[v] == 0 || lm.degree() < axis[v])) axis[v] = lm.degree();
    if (axis[v] == 0 || axis[v] > cap) {
      Staircase s;
      s.infinite = true;
      s.diagnostic = "no pure power of " + basis.ring()->name(v) + " of degree <= " + std::to_string(cap) +
                     " in the leading ideal";
      return s;
    }
  }

  Staircase s;
  std::vector<Monomial::Exponent> e(n, 0);
  for (;;) {
    Monomial m(e);
    bool standard = std::none_of(basis.leading_monomials.begin(), basis.leading_monomials.end(),
                                 [&](const Monomial& lm) { return lm.divides(m); });
    if (standard) s.monomial_basis.push_back(std::move(m));
    std::size_t i = 0;
    while (i < n && e[i] + 1 == axis[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  std::sort(s.monomial_basis.begin(), s.monomial_basis.end(), CanonicalLess{});
  return s;
}

/// dim of O/<gens> at the origin.
inline Dim quotient_dim(const std::vector<Poly>& gens, const MonomialOrder& order = MonomialOrder::local_negdegrevlex(),
                        unsigned cap = kDefaultStaircaseCap) {
  if (gens.empty()) throw std::invalid_argument("quotient_dim: empty generator list");
  if (std::all_of(gens.begin(), gens.end(), [](const Poly& g) { return g.is_zero(); })) {
    if (gens.front().nvars() == 0) return Dim{1};
    return std::nullopt;
  }
  return staircase(std_basis(gens, order), cap).dimension();
}

/// quotient_dim when it is at most `limit`, nullopt otherwise (including
/// infinite colength). Jet quotients bound the dimension from below, so the
/// search stops once they pass the limit.
inline Dim quotient_dim_at_most(const std::vector<Poly>& gens, std::size_t limit) {
  if (detail::corner_search(gens, kCornerSearchCap, limit).over_limit) return std::nullopt;
  Dim d = quotient_dim(gens);
  return d && *d <= limit ? d : std::nullopt;
}

/// dim of the degree-<=D jet space modulo the span of all truncated monomial
/// multiples m*g. Pure linear algebra, independent of standard bases; equals
/// quotient_dim once D passes the stabilisation degree of a finite-colength ideal.
inline std::size_t jet_dim_oracle(const std::vector<Poly>& gens, unsigned degree) {
  if (degree < 1) throw std::invalid_argument("jet_dim_oracle: D must be >= 1");
  if (gens.empty()) throw std::invalid_argument("jet_dim_oracle: empty generator list");
  const RingPtr& ring = gens.front().ring();
  const auto monos = monomials_up_to(ring->size(), degree);
  SparseEchelon echelon(ring, false);
  std::size_t id = 0;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const unsigned ord = static_cast<unsigned>(g.order());
    for (const auto& m : monos) {
      if (m.degree() + ord > degree) break;
      echelon.insert(g.times_monomial(m, degree), id++);
    }
  }
  return monos.size() - echelon.rank();
}

/// Membership in the ideal of a standard basis (weak normal form vanishes).
inline bool ideal_member(const Poly& p, const StdBasis& basis) {
  if (p.is_zero()) return true;
  return mora_nf(p, basis.reducers(), basis.order).remainder.is_zero();
}

}  // namespace germscope
