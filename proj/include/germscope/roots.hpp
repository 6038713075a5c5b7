#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "poly.hpp"

namespace germscope {

/// Exact division `a / b` in the polynomial ring, or nullopt when b does not divide a.
inline std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_divide: division by zero");
  const auto order = MonomialOrder::global_degrevlex();
  const auto [lm_b, lc_b] = b.leading_term(order);
  Poly quotient(a.ring());
  Poly rest = a;
  while (!rest.is_zero()) {
    const auto [lm, lc] = rest.leading_term(order);
    if (!lm_b.divides(lm)) return std::nullopt;
    Monomial m = lm / lm_b;
    Rat c = lc / lc_b;
    quotient.add_term(m, c);
    rest.sub_scaled(c, m, b);
  }
  return quotient;
}

namespace detail {

/// Monomial that fixes the sign of an even root: greatest in lex order with
/// the last ring variable most significant (so `Z^2 - X*Y` keeps its Z^2 positive).
inline Rat sign_leading_coefficient(const Poly& p) {
  const Monomial* best = nullptr;
  Rat coeff;
  for (const auto& [m, c] : p.terms()) {
    if (!best) {
      best = &m;
      coeff = c;
      continue;
    }
    std::vector<Monomial::Exponent> a(m.exponents().rbegin(), m.exponents().rend());
    std::vector<Monomial::Exponent> b(best->exponents().rbegin(), best->exponents().rend());
    if (a > b) {
      best = &m;
      coeff = c;
    }
  }
  return coeff;
}

/// d-th root of a homogeneous polynomial by peeling lex-leading terms:
/// each new root term t satisfies lt(P - G^d) = d * lt(G)^(d-1) * t.
inline std::optional<Poly> homogeneous_root(const Poly& form, unsigned d) {
  if (form.is_zero()) return std::nullopt;
  // Within one degree the canonical map order is descending lex, so the
  // first term of a homogeneous polynomial is its lex-leading term.
  const auto& [lead_mono, lead_coeff] = *form.terms().begin();
  for (auto e : lead_mono.exponents())
    if (e % d != 0) return std::nullopt;
  auto root_coeff = rational_root(lead_coeff, d);
  if (!root_coeff) return std::nullopt;
  std::vector<Monomial::Exponent> root_exps;
  for (auto e : lead_mono.exponents()) root_exps.push_back(e / d);
  Monomial root_mono(std::move(root_exps));

  Poly root = Poly::term(form.ring(), root_mono, *root_coeff);
  const Monomial step_mono = root_mono.pow(d - 1);
  const Rat step_coeff = Rat(d) * pow(*root_coeff, d - 1);
  Monomial last = root_mono;
  for (;;) {
    Poly rest = form - pow(root, d);
    if (rest.is_zero()) break;
    const auto& [m, c] = *rest.terms().begin();
    if (static_cast<int>(m.degree()) != form.total_degree() || !step_mono.divides(m)) return std::nullopt;
    Monomial t = m / step_mono;
    if (!(last.exponents() > t.exponents())) return std::nullopt;
    root.add_term(t, c / step_coeff);
    last = t;
  }
  return root;
}

}  // namespace detail

/// d-th root of a jet, or nullopt when it is not a d-th power.
///
/// The initial form's root is found by lex peeling; every higher graded piece
/// G_j then solves d * G_0^(d-1) * G_j = (piece of p) - (known part of G^d),
/// and a failed exact division means p is not a power. For even d the root
/// is normalised to a positive sign-leading coefficient. A truncated input
/// certified to D yields a root certified to D - (d-1) * ord(root).
inline std::optional<Jet> kth_root_jet(const Jet& p, unsigned d) {
  if (d == 0) throw std::invalid_argument("kth_root_jet: d must be positive");
  if (p.vanishes()) throw std::invalid_argument("kth_root_jet: zero input");
  if (d == 1) return p;

  const Poly& value = p.value();
  const unsigned ord = static_cast<unsigned>(value.order());
  if (ord % d != 0) return std::nullopt;
  const unsigned root_ord = ord / d;

  auto lead = detail::homogeneous_root(initial_form(value), d);
  if (!lead) return std::nullopt;
  if (d % 2 == 0 && detail::sign_leading_coefficient(*lead) < 0) *lead = -*lead;

  // Highest input degree that can be matched.
  unsigned top;
  if (p.exact()) {
    const unsigned deg = static_cast<unsigned>(value.total_degree());
    if (deg % d != 0) return std::nullopt;
    top = deg;
  } else {
    top = static_cast<unsigned>(p.budget());
  }

  const Poly divisor = Rat(d) * pow(*lead, d - 1);
  Poly root = *lead;
  for (unsigned deg = ord + 1; deg <= top; ++deg) {
    Poly known = pow(root, d, deg).homogeneous_part(deg);
    Poly rest = value.homogeneous_part(deg) - known;
    if (rest.is_zero()) continue;
    auto piece = exact_divide(rest, divisor);
    if (!piece) return std::nullopt;
    root += *piece;
  }

  if (p.exact()) {
    if (!(pow(root, d) == value)) return std::nullopt;
    return Jet::exact(root);
  }
  const int budget = p.budget() - static_cast<int>((d - 1) * root_ord);
  return Jet(root, budget);
}

/// `scalar * linear^k`, the shape of a hyperplane counted k times.
struct LinearPower {
  Rat scalar;
  Poly linear;
};

/// Decides whether a homogeneous form of degree k is c * L^k for a linear form L.
///
/// L is read off the gradient at an integer point where the form does not
/// vanish and normalised to have first nonzero coefficient 1; c then follows
/// from one evaluation and the identity is verified term by term.
inline std::optional<LinearPower> power_of_linear(const Poly& form, unsigned k) {
  if (form.is_zero()) throw std::invalid_argument("power_of_linear: zero input");
  if (!form.is_homogeneous()) throw std::invalid_argument("power_of_linear: input is not homogeneous");
  if (k == 0) throw std::invalid_argument("power_of_linear: k must be positive");
  if (static_cast<unsigned>(form.total_degree()) != k) return std::nullopt;

  const std::size_t n = form.nvars();
  // A nonzero form of degree k cannot vanish on all of {0..k}^n.
  std::vector<Rat> point(n, Rat(0));
  std::vector<unsigned> digits(n, 0);
  Rat value(0);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) point[i] = digits[i];
    value = form.evaluate(point);
    if (value != 0) break;
    std::size_t i = 0;
    while (i < n && digits[i] == k) digits[i++] = 0;
    if (i == n) throw InternalError("power_of_linear: no nonvanishing integer point");
    ++digits[i];
  }

  Poly linear(form.ring());
  for (std::size_t i = 0; i < n; ++i) {
    Rat g = partial(form, i).evaluate(point);
    linear.add_term(Monomial::variable(n, i), g);
  }
  // Normalise so the first nonzero coefficient (in variable order) is 1.
  Rat first(0);
  for (std::size_t i = 0; i < n && first == 0; ++i) first = linear.coefficient(Monomial::variable(n, i));
  linear *= Rat(1) / first;

  const Rat at_point = linear.evaluate(point);
  const Rat scalar = value / pow(at_point, k);
  if (!(scalar * pow(linear, k) == form)) return std::nullopt;
  return LinearPower{scalar, linear};
}

}  // namespace germscope
