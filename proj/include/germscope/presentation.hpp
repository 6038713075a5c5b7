#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "germ.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "local_algebra.hpp"
#include "poly.hpp"

namespace germscope {

/// Ordered monomial generators of fbar_* O_n: the staircase of <fbar>,
/// sorted by degree then lex, so g_1 = 1.
inline std::vector<Monomial> pushforward_generators(const std::vector<Poly>& fbar) {
  if (fbar.empty()) throw std::invalid_argument("pushforward_generators: empty map");
  Staircase st = staircase(std_basis(fbar, MonomialOrder::local_negdegrevlex()));
  if (st.infinite) throw NonFiniteGerm("fbar is not finite: " + st.diagnostic);
  return st.monomial_basis;
}

/// Degree up to which coefficients recovered from a source jet of degree D
/// are exact. With m^N in <fbar> (N = 1 + top generator degree), freeness of
/// the pushforward forces any error in a_s into m_X^{E+1} for
/// E = floor((D+1)/N) - 1.
inline int certified_target_degree(unsigned source_budget, const std::vector<Monomial>& gens) {
  unsigned top = 0;
  for (const auto& g : gens) top = std::max(top, g.degree());
  return static_cast<int>((source_budget + 1) / (top + 1)) - 1;
}

namespace detail {

/// Leading term under a degree-compatible local order: the greatest monomial
/// among the terms of lowest degree.
inline std::pair<Monomial, Rat> local_lead(const Poly& p, const MonomialOrder& order) {
  auto it = p.terms().begin();
  auto best = it;
  const unsigned low = it->first.degree();
  for (++it; it != p.terms().end() && it->first.degree() == low; ++it)
    if (order.greater(it->first, best->first)) best = it;
  return *best;
}

/// `p -= c * m * o`, dropping terms above `budget`.
inline void sub_scaled_truncated(Poly& p, const Rat& c, const Monomial& m, const Poly& o, unsigned budget) {
  for (const auto& [om, oc] : o.terms()) {
    if (om.degree() + m.degree() > budget) break;
    p.add_term(m * om, -(c * oc));
  }
}

}  // namespace detail

/// Writes source functions as sum a_s(fbar(x)) g_s(x) on jets of degree D.
///
/// A standard basis of <fbar> + m^{D+1} is built once, each element carrying
/// cofactors over fbar. Dividing r by it gives r = sum c_s g_s + sum q_i fbar_i
/// with constant c_s; the c_s are the X^0 coefficients and the q_i are divided
/// in turn for the coefficients of X^{e_i}, and so on level by level up to E.
/// The remainder left after level E lies in <fbar>^{E+1}, which contains
/// m^{D+1}, so the coefficients are exact to X-degree E.
class GeneratorExpander {
 public:
  GeneratorExpander(std::vector<Poly> fbar, std::vector<Monomial> gens, unsigned budget, RingPtr coeff_ring)
      : fbar_(std::move(fbar)),
        gens_(std::move(gens)),
        budget_(budget),
        coeff_ring_(std::move(coeff_ring)),
        order_(MonomialOrder::local_negdegrevlex()) {
    const std::size_t n = fbar_.size();
    if (coeff_ring_->size() < n) throw std::invalid_argument("GeneratorExpander: coefficient ring too small");
    certified_ = certified_target_degree(budget_, gens_);
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      gen_index_.emplace(gens_[s], s);
      corner_ = std::max(corner_, gens_[s].degree() + 1);
    }
    for (const auto& f : fbar_) {
      if (f.is_zero() || f.order() < 1) throw std::invalid_argument("GeneratorExpander: components must vanish at 0");
      orders_.push_back(static_cast<unsigned>(f.order()));
    }
    build_basis();
  }

  int certified() const noexcept { return certified_; }
  unsigned budget() const noexcept { return budget_; }
  const std::vector<Monomial>& generators() const noexcept { return gens_; }

  /// Coefficients a_1..a_k, each certified to X-degree `certified()`.
  std::vector<Jet> expand(const Poly& a) const {
    if (certified_ < 0) throw CertificationError("jet budget too small to certify any coefficient");
    const std::size_t n = fbar_.size();
    const unsigned top = static_cast<unsigned>(certified_);
    std::vector<Poly> coeffs(gens_.size(), Poly(coeff_ring_));

    std::map<Monomial, Poly, CanonicalLess> level{{Monomial(n), a.truncated(budget_)}};
    for (unsigned e = 0; e <= top && !level.empty(); ++e) {
      std::map<Monomial, Poly, CanonicalLess> next;
      for (auto& [alpha, r] : level) {
        const unsigned b = budget_for(alpha);
        Division d = divide(std::move(r), b);
        for (std::size_t s = 0; s < gens_.size(); ++s) {
          if (d.constants[s] == 0) continue;
          std::vector<Monomial::Exponent> x(coeff_ring_->size(), 0);
          for (std::size_t i = 0; i < n; ++i) x[i] = alpha[i];
          coeffs[s].add_term(Monomial(std::move(x)), d.constants[s]);
        }
        if (e == top) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (d.quotients[i].is_zero()) continue;
          auto [it, fresh] = next.try_emplace(alpha * Monomial::variable(n, i), Poly(a.ring()));
          it->second += d.quotients[i];
        }
      }
      level = std::move(next);
    }

    // Residual check: a - sum a_s(fbar) g_s must vanish below degree E + 1.
    const unsigned e_budget = static_cast<unsigned>(certified_);
    Poly residual = a.truncated(e_budget);
    std::vector<Poly> subst(fbar_.begin(), fbar_.end());
    const RingPtr& src = fbar_.front().ring();
    while (subst.size() < coeff_ring_->size()) subst.push_back(Poly(src));
    for (std::size_t s = 0; s < gens_.size(); ++s)
      residual -= compose(coeffs[s], subst, e_budget).times_monomial(gens_[s], e_budget);
    if (!residual.is_zero()) throw CertificationError("express_in_generators: residual does not vanish to certified degree");

    std::vector<Jet> out;
    for (auto& c : coeffs) out.emplace_back(std::move(c), certified_);
    return out;
  }

 private:
  /// A basis element p = sum cofactors_i fbar_i modulo degree > D.
  struct Element {
    Poly p;
    std::vector<Poly> cofactors;
    Monomial lead;
  };

  struct Division {
    std::vector<Rat> constants;
    std::vector<Poly> quotients;
  };

  /// Source degree up to which the remainder at level alpha matters. Beyond
  /// D - ord(fbar^alpha) the product leaves the jet; from N (E - |alpha| + 1)
  /// on the remainder lies in <fbar>^{E - |alpha| + 1} and only feeds levels
  /// above E.
  unsigned budget_for(const Monomial& alpha) const {
    unsigned shift = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) shift += alpha[i] * orders_[i];
    const unsigned by_jet = shift > budget_ ? 0 : budget_ - shift;
    const unsigned left = static_cast<unsigned>(certified_) - alpha.degree() + 1;
    return std::min(by_jet, corner_ * left - 1);
  }

  /// Cofactor budget for fbar_i when the product is needed up to `b`.
  unsigned cofactor_budget(std::size_t i, unsigned b) const { return b >= orders_[i] ? b - orders_[i] : 0; }

  /// Reduces the leading term of `el` while some basis element divides it.
  void top_reduce(Element& el) const {
    while (!el.p.is_zero()) {
      auto [lm, lc] = detail::local_lead(el.p, order_);
      const Element* by = nullptr;
      for (const auto& b : basis_)
        if (b.lead.divides(lm)) {
          by = &b;
          break;
        }
      if (!by) {
        el.lead = lm;
        return;
      }
      const Monomial t = lm / by->lead;
      detail::sub_scaled_truncated(el.p, lc, t, by->p, budget_);
      for (std::size_t i = 0; i < el.cofactors.size(); ++i)
        detail::sub_scaled_truncated(el.cofactors[i], lc, t, by->cofactors[i], cofactor_budget(i, budget_));
    }
  }

  void push(Element el) {
    auto [lm, lc] = detail::local_lead(el.p, order_);
    const Rat inv = Rat(1) / lc;
    el.p *= inv;
    for (auto& c : el.cofactors) c *= inv;
    el.lead = lm;
    basis_.push_back(std::move(el));
  }

  /// Buchberger completion on jets. Reduction cannot loop: every step lowers
  /// the leading monomial inside the finite set of monomials of degree <= D.
  void build_basis() {
    const std::size_t n = fbar_.size();
    const RingPtr& src = fbar_.front().ring();
    for (std::size_t i = 0; i < n; ++i) {
      Element el{fbar_[i].truncated(budget_), std::vector<Poly>(n, Poly(src)), Monomial(n)};
      el.cofactors[i] = Poly::constant(src, Rat(1));
      top_reduce(el);
      if (!el.p.is_zero()) push(std::move(el));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < basis_.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
      auto it = std::min_element(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return lcm(basis_[x.first].lead, basis_[x.second].lead).degree() <
               lcm(basis_[y.first].lead, basis_[y.second].lead).degree();
      });
      auto [i, j] = *it;
      pairs.erase(it);
      const Monomial l = lcm(basis_[i].lead, basis_[j].lead);
      if (l.degree() > budget_) continue;
      Element s{Poly(src), std::vector<Poly>(n, Poly(src)), Monomial(n)};
      const Monomial ti = l / basis_[i].lead, tj = l / basis_[j].lead;
      detail::sub_scaled_truncated(s.p, Rat(-1), ti, basis_[i].p, budget_);
      detail::sub_scaled_truncated(s.p, Rat(1), tj, basis_[j].p, budget_);
      for (std::size_t v = 0; v < n; ++v) {
        detail::sub_scaled_truncated(s.cofactors[v], Rat(-1), ti, basis_[i].cofactors[v], cofactor_budget(v, budget_));
        detail::sub_scaled_truncated(s.cofactors[v], Rat(1), tj, basis_[j].cofactors[v], cofactor_budget(v, budget_));
      }
      top_reduce(s);
      if (s.p.is_zero()) continue;
      push(std::move(s));
      for (std::size_t k = 0; k + 1 < basis_.size(); ++k) pairs.emplace_back(k, basis_.size() - 1);
    }
  }

  /// r = sum constants_s g_s + sum quotients_i fbar_i modulo degree > b.
  ///
  /// Terms are taken in storage order rather than by leading term: a step
  /// trades one term for terms of higher degree or of equal degree and lower
  /// local order, so the multiset of terms still decreases.
  Division divide(Poly r, unsigned b) const {
    const std::size_t n = fbar_.size();
    Division d{std::vector<Rat>(gens_.size(), Rat(0)), std::vector<Poly>(n, Poly(r.ring()))};
    r = r.truncated(b);
    while (!r.is_zero()) {
      const auto [lm, lc] = *r.terms().begin();
      const Element* by = nullptr;
      for (const auto& el : basis_)
        if (el.lead.divides(lm)) {
          by = &el;
          break;
        }
      if (!by) {
        auto g = gen_index_.find(lm);
        if (g == gen_index_.end())
          throw InternalError("express_in_generators: " + Poly::term(r.ring(), lm, Rat(1)).to_string() + " is neither reducible nor a generator");
        d.constants[g->second] = lc;
        r.add_term(lm, -lc);
        continue;
      }
      const Monomial t = lm / by->lead;
      detail::sub_scaled_truncated(r, lc, t, by->p, b);
      for (std::size_t i = 0; i < n; ++i)
        detail::sub_scaled_truncated(d.quotients[i], Rat(-1) * lc, t, by->cofactors[i], cofactor_budget(i, b));
    }
    return d;
  }

  std::vector<Poly> fbar_;
  std::vector<Monomial> gens_;
  unsigned budget_;
  RingPtr coeff_ring_;
  MonomialOrder order_;
  int certified_ = -1;
  unsigned corner_ = 1;  // N: m^N lies in <fbar>
  std::vector<unsigned> orders_;
  std::map<Monomial, std::size_t, CanonicalLess> gen_index_;
  std::vector<Element> basis_;
};

/// One-shot form of GeneratorExpander::expand.
inline std::vector<Jet> express_in_generators(const Poly& a, const std::vector<Poly>& fbar,
                                              const std::vector<Monomial>& gens, unsigned budget,
                                              const RingPtr& coeff_ring) {
  return GeneratorExpander(fbar, gens, budget, coeff_ring).expand(a);
}

/// Presentation matrix of f_* O_n over the target ring, in sheared coordinates.
struct PresentationData {
  RingPtr source;
  RingPtr target;
  std::vector<Monomial> generators;
  /// Entry (i, j) is a_ij(X) - Z * delta_ij where g_j h = sum_i a_ij(X) g_i.
  std::vector<std::vector<Jet>> matrix;
  std::vector<std::vector<Jet>> matrix_pre_shear;
  Jet shear;                 // p_1(X), removed from h
  unsigned budget = 0;       // source jet budget D
  int certified = -1;        // target degree to which entries are exact

  std::size_t size() const { return generators.size(); }
};

/// Default source jet budget: max(16, 2k) raised so that entries are certified
/// beyond the matrix size k (needs D + 1 >= N (k + 2), N = 1 + top generator degree).
inline unsigned default_jet_budget(std::size_t k, const std::vector<Monomial>& gens) {
  unsigned top = 0;
  for (const auto& g : gens) top = std::max(top, g.degree());
  const unsigned n = top + 1;
  return std::max({16u, static_cast<unsigned>(2 * k), static_cast<unsigned>(n * (k + 2) - 1)});
}

namespace detail {

inline bool has_linear_part(const Poly& p, std::size_t skip) {
  for (const auto& [m, c] : p.terms())
    if (m.degree() == 1 && m[skip] == 0) return true;
  return false;
}

}  // namespace detail

/// Checks the structural invariants of a presentation: g_1 = 1, -Z with
/// coefficient -1 on the diagonal only, and when mult = gd every entry in m
/// with the upper triangle (diagonal included, -Z aside) in m^2.
inline void validate_presentation(const PresentationData& p, bool mult_eq_gd) {
  const std::size_t k = p.size();
  const std::size_t z = p.target->size() - 1;
  const Monomial z_mono = Monomial::variable(p.target->size(), z);
  if (k == 0 || !p.generators.front().is_one()) throw InternalError("presentation: g_1 must be 1");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Poly& e = p.matrix[i][j].value();
      Poly without_z = e;
      if (i == j) {
        if (e.coefficient(z_mono) != -1) throw InternalError("presentation: diagonal entry lacks -Z");
        without_z.add_term(z_mono, Rat(1));
      }
      if (without_z.involves(z)) throw InternalError("presentation: Z outside the diagonal term");
      if (!mult_eq_gd) continue;
      if (without_z.constant_term() != 0) throw InternalError("presentation: entry outside the maximal ideal");
      if (i <= j && detail::has_linear_part(without_z, z))
        throw InternalError("presentation: upper-triangle entry not in m^2");
    }
  }
}

/// Mond-Pellikaan presentation of a germ already in the form (fbar, h) with
/// dim O_n/<fbar> = gd(f). Applies the shear Z -> Z - p_1(X) first.
inline PresentationData presentation_matrix(const MapGerm& f, unsigned budget, bool mult_eq_gd) {
  const std::size_t n = f.n();
  const RingPtr target = target_ring(f);
  std::vector<Poly> fbar(f.components.begin(), f.components.begin() + static_cast<long>(n));
  const Poly& h = f.components.back();

  PresentationData out{f.source, target, pushforward_generators(fbar), {}, {}, Jet::exact(Poly(target)), budget, -1};
  const std::size_t k = out.size();
  GeneratorExpander expander(fbar, out.generators, budget, target);
  out.certified = expander.certified();
  if (out.certified < static_cast<int>(k))
    throw CertificationError("jet budget " + std::to_string(budget) + " certifies entries only to degree " +
                             std::to_string(out.certified) + " < matrix size " + std::to_string(k));

  // Shear: remove the coefficient of g_1 = 1 from h. Since the expansion is
  // linear over the target ring, the sheared matrix is the unsheared one
  // minus p_1 on the diagonal.
  std::vector<Jet> h_coeffs = expander.expand(h);
  out.shear = h_coeffs.front();

  const Poly z = Poly::variable(target, n);
  out.matrix.assign(k, std::vector<Jet>(k, Jet::exact(Poly(target))));
  out.matrix_pre_shear = out.matrix;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Jet> column = j == 0 ? h_coeffs : expander.expand(h.times_monomial(out.generators[j]));
    for (std::size_t i = 0; i < k; ++i) {
      Poly entry = column[i].value();
      if (i == j) entry -= z;
      out.matrix_pre_shear[i][j] = Jet(entry, out.certified);
      out.matrix[i][j] = Jet(i == j ? entry - out.shear.value() : entry, out.certified);
    }
  }
  validate_presentation(out, mult_eq_gd);
  return out;
}

}  // namespace germscope
