#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "geometry.hpp"
#include "germ.hpp"
#include "parser.hpp"
#include "presentation.hpp"
#include "version.hpp"

namespace germscope {

struct AnalysisOptions {
  std::optional<unsigned> jet;  // source jet budget D; default derived from gd
  int trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  bool assert_injective = false;
  int retry_budget = 1;  // extra attempts at D + 8 after a certification failure or drift
};

/// Everything computed at one jet budget.
struct Attempt {
  unsigned budget = 0;
  PresentationData presentation;
  Jet working_lambda;
  Poly working_cone;
  ImageEquation equation;  // original target coordinates
  Poly cone;
  Verdict verdict;
  bool lambda_vanishes_on_image = false;
  bool reduced_vanishes_on_image = false;
};

struct Certification {
  unsigned jet_budget = 0;
  int entries_certified_to = -1;
  int lambda_certified_to = -1;
  int reduced_certified_to = -1;
  unsigned stability_budget = 0;
  bool stable = false;
  int attempts = 0;
};

struct Report {
  MapGerm germ;
  AnalysisOptions options;
  RingPtr target;
  int corank = 0;
  MultGdCheck mult_gd;
  Attempt result;
  Certification certification;

  std::size_t mult() const { return mult_gd.mult; }
  std::size_t gd() const { return mult_gd.gd.gd; }
  unsigned deg() const { return result.equation.deg; }
};

namespace detail {

/// Runs presentation -> equation -> cone -> verdict at one budget.
inline Attempt analyze_at(const MapGerm& f, const MultGdCheck& mg, int corank, bool injective, unsigned budget) {
  Attempt a;
  a.budget = budget;
  a.presentation = presentation_matrix(mg.normalized, budget, mg.equal);
  const std::size_t k = a.presentation.size();
  const RingPtr& target = a.presentation.target;

  a.working_lambda = fitting_equation(a.presentation);
  if (a.working_lambda.vanishes()) throw CertificationError("lambda vanishes to the certified degree; raise --jet");
  check_lambda_shape(a.working_lambda, k);
  a.working_cone = tangent_cone(a.working_lambda);
  if (mg.equal) {
    // After the shear the initial part of lambda is (-Z)^k.
    const Poly minus_z_k = pow(-Poly::variable(target, target->size() - 1), static_cast<unsigned>(k));
    if (!(a.working_cone == minus_z_k)) throw InternalError("tangent cone in working coordinates is not (-Z)^k");
  }

  const auto subst = working_coordinates(mg.change, a.presentation.shear, target);
  const Jet lambda = compose(a.working_lambda, subst);
  a.equation = map_degree(lambda, k, [&](const Jet& root) { return pullback_along(root, f).is_zero(); });
  a.cone = tangent_cone(lambda);

  // Multiplicativity of initial forms.
  const Poly& red = a.equation.reduced.value();
  if (red.order() > a.equation.reduced.budget()) throw CertificationError("reduced equation is not certified to its order");
  if (!(Rat(a.equation.sign) * pow(initial_form(red), a.equation.deg) == a.cone))
    throw InternalError("initial form of lambda is not the deg-th power of that of F");
  if (a.equation.deg > mg.mult) throw InternalError("deg f exceeds mult f");

  a.lambda_vanishes_on_image = pullback_along(lambda, f).is_zero();
  a.reduced_vanishes_on_image = pullback_along(a.equation.reduced, f).is_zero();
  if (!a.lambda_vanishes_on_image || !a.reduced_vanishes_on_image)
    throw InternalError("image equation does not vanish along the germ");

  a.verdict = classify({corank, mg.mult, mg.equal, injective}, a.equation, a.cone);
  return a;
}

inline bool same_outcome(const Attempt& a, const Attempt& b) {
  return a.cone == b.cone && a.equation.deg == b.equation.deg && a.verdict.smooth == b.verdict.smooth &&
         a.verdict.lne == b.verdict.lne && a.verdict.theorem_fired == b.verdict.theorem_fired &&
         a.verdict.cone_linear.has_value() == b.verdict.cone_linear.has_value();
}

}  // namespace detail

/// Full pipeline: corank, mult, gd and target change, presentation, lambda,
/// deg, tangent cone, verdict. Every run is repeated at D + 8 and must agree;
/// certification failures and drift escalate D by 8 while retries remain.
inline Report analyze(const MapGerm& input, const AnalysisOptions& options = {}) {
  Report r;
  r.germ = input;
  r.germ.injective = input.injective || options.assert_injective;
  r.options = options;
  r.target = target_ring(r.germ);
  r.corank = corank(r.germ);
  r.mult_gd = mult_eq_gd(r.germ, options.trials, options.seed);

  std::vector<Poly> fbar(r.mult_gd.normalized.components.begin(), r.mult_gd.normalized.components.end() - 1);
  const auto gens = pushforward_generators(fbar);
  unsigned budget = options.jet ? *options.jet : default_jet_budget(gens.size(), gens);

  int retries = options.retry_budget;
  for (int attempt = 1;; ++attempt) {
    try {
      Attempt a = detail::analyze_at(r.germ, r.mult_gd, r.corank, r.germ.injective, budget);
      Attempt check = detail::analyze_at(r.germ, r.mult_gd, r.corank, r.germ.injective, budget + 8);
      if (!detail::same_outcome(a, check))
        throw CertificationError("result drifts between jet budgets " + std::to_string(budget) + " and " +
                                 std::to_string(budget + 8));
      r.result = std::move(a);
      r.certification = {budget,
                         r.result.presentation.certified,
                         r.result.equation.lambda.budget(),
                         r.result.equation.reduced.budget(),
                         budget + 8,
                         true,
                         attempt};
      return r;
    } catch (const CertificationError& e) {
      if (retries-- <= 0)
        throw CertificationError(std::string(e.what()) + " (after " + std::to_string(attempt) + " attempt" +
                                 (attempt == 1 ? "" : "s") + ", last jet budget " + std::to_string(budget) + ")");
      budget += 8;
    }
  }
}

// ---------------------------------------------------------------------------
// Serialization

using Json = nlohmann::ordered_json;

namespace detail {

inline Json matrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    out.push_back(std::move(r));
  }
  return out;
}

inline Json jet_matrix_json(const std::vector<std::vector<Jet>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.value().to_string());
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string yes_no(bool b) { return b ? "Yes" : "No"; }

}  // namespace detail

inline Json input_json(const MapGerm& f) {
  Json j;
  j["vars"] = f.source->names();
  Json map = Json::array();
  for (const auto& c : f.components) map.push_back(c.to_string());
  j["map"] = std::move(map);
  j["assert_injective"] = f.injective;
  return j;
}

inline Json options_json(const AnalysisOptions& o) {
  Json j;
  j["jet"] = o.jet ? Json(*o.jet) : Json(nullptr);
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  j["assert_injective"] = o.assert_injective;
  j["retry_budget"] = o.retry_budget;
  return j;
}

inline Json invariants_json(const Report& r) {
  Json j;
  j["corank"] = r.corank;
  j["mult"] = r.mult();
  j["gd"] = r.gd();
  j["gd_projection"] = detail::matrix_json(r.mult_gd.gd.projection);
  j["gd_attained_by"] = r.mult_gd.gd.attained_by;
  j["gd_projections_evaluated"] = r.mult_gd.gd.evaluated;
  j["gd_trials"] = r.mult_gd.gd.trials;
  j["gd_seed"] = r.mult_gd.gd.seed;
  j["mult_eq_gd"] = r.mult_gd.equal;
  j["membership_witness"] = r.mult_gd.witness;
  j["deg"] = r.deg();
  j["deg_certified_to"] = r.result.equation.certified_to;
  return j;
}

inline Json presentation_json(const Report& r) {
  const auto& p = r.result.presentation;
  Json j;
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back(Poly::term(p.source, g, Rat(1)).to_string());
  j["generators"] = std::move(gens);
  j["size"] = p.size();
  j["target_change"] = detail::matrix_json(r.mult_gd.change);
  j["shear"] = p.shear.value().to_string();
  j["matrix"] = detail::jet_matrix_json(p.matrix);
  j["matrix_pre_shear"] = detail::jet_matrix_json(p.matrix_pre_shear);
  j["jet_budget"] = p.budget;
  j["certified_to"] = p.certified;
  return j;
}

inline Json equation_json(const Report& r) {
  const auto& e = r.result.equation;
  Json j;
  j["lambda"] = e.lambda.value().to_string();
  j["lambda_certified_to"] = e.lambda.budget();
  j["reduced"] = e.reduced.value().to_string();
  j["reduced_certified_to"] = e.reduced.budget();
  j["deg"] = e.deg;
  j["sign"] = e.sign;
  j["working_lambda"] = r.result.working_lambda.value().to_string();
  return j;
}

inline Json tangent_cone_json(const Report& r) {
  Json j;
  j["cone"] = r.result.cone.to_string();
  const auto& lin = r.result.verdict.cone_linear;
  if (lin) {
    Json h;
    h["linear_form"] = lin->linear.to_string();
    h["scalar"] = to_string(lin->scalar);
    h["power"] = r.result.cone.total_degree();
    j["hyperplane"] = std::move(h);
  } else {
    j["hyperplane"] = nullptr;
  }
  j["working_cone"] = r.result.working_cone.to_string();
  return j;
}

inline Json verdict_json(const Report& r) {
  const auto& v = r.result.verdict;
  Json j;
  j["smooth"] = to_string(v.smooth);
  j["lne"] = to_string(v.lne);
  j["cone_linear"] = detail::yes_no(v.cone_linear.has_value());
  j["theorem_fired"] = v.theorem_fired;
  j["explanation"] = v.explanation;
  Json h;
  h["finite"] = v.hypotheses.finite;
  h["mult_eq_gd"] = v.hypotheses.mult_eq_gd;
  h["corank"] = v.hypotheses.corank;
  h["injective_asserted"] = v.hypotheses.injective_asserted;
  j["hypotheses"] = std::move(h);
  j["notes"] = v.notes;
  return j;
}

inline Json certification_json(const Report& r) {
  const auto& c = r.certification;
  Json j;
  j["jet_budget"] = c.jet_budget;
  j["entries_certified_to"] = c.entries_certified_to;
  j["lambda_certified_to"] = c.lambda_certified_to;
  j["reduced_certified_to"] = c.reduced_certified_to;
  j["stability_budget"] = c.stability_budget;
  j["stable"] = c.stable;
  j["attempts"] = c.attempts;
  j["lambda_vanishes_on_image"] = r.result.lambda_vanishes_on_image;
  j["reduced_vanishes_on_image"] = r.result.reduced_vanishes_on_image;
  j["tool_version"] = kToolVersion;
  return j;
}

/// Which part of the report to emit.
enum class Fragment { Analyze, Presentation, TangentCone, Invariants };

inline Json report_json(const Report& r, Fragment what = Fragment::Analyze) {
  Json j;
  j["input"] = input_json(r.germ);
  j["options"] = options_json(r.options);
  if (what == Fragment::Analyze || what == Fragment::Invariants) j["invariants"] = invariants_json(r);
  if (what == Fragment::Analyze || what == Fragment::Presentation) j["presentation"] = presentation_json(r);
  if (what == Fragment::Analyze) j["equation"] = equation_json(r);
  if (what == Fragment::Analyze || what == Fragment::TangentCone) j["tangent_cone"] = tangent_cone_json(r);
  if (what == Fragment::Analyze) j["verdict"] = verdict_json(r);
  j["certification"] = certification_json(r);
  return j;
}

namespace detail {

inline std::string germ_line(const MapGerm& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.components.size(); ++i) s += (i ? ", " : "") + f.components[i].to_string();
  return s + ")";
}

}  // namespace detail

inline std::string report_text(const Report& r, Fragment what = Fragment::Analyze) {
  std::ostringstream out;
  const auto& a = r.result;
  out << "germ: " << detail::germ_line(r.germ) << (r.germ.injective ? "  [injective asserted]" : "") << '\n';
  if (what == Fragment::Analyze || what == Fragment::Invariants) {
    out << "corank: " << r.corank << '\n'
        << "mult: " << r.mult() << '\n'
        << "gd: " << r.gd() << " (" << r.mult_gd.gd.attained_by << ")\n"
        << "mult = gd: " << (r.mult_gd.equal ? "yes" : "no") << '\n'
        << "deg: " << r.deg() << " (certified to degree " << a.equation.certified_to << ")\n";
  }
  if (what == Fragment::Analyze || what == Fragment::Presentation) {
    out << "generators:";
    for (const auto& g : a.presentation.generators) out << ' ' << Poly::term(r.germ.source, g, Rat(1)).to_string();
    out << '\n';
    if (!a.presentation.shear.vanishes()) out << "shear: Z -> Z - (" << a.presentation.shear.value().to_string() << ")\n";
    out << "presentation matrix (entries certified to degree " << a.presentation.certified << "):\n";
    for (const auto& row : a.presentation.matrix) {
      out << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j].value().to_string();
      out << "]\n";
    }
  }
  if (what == Fragment::Analyze) {
    out << "lambda: " << a.equation.lambda.value().to_string() << '\n'
        << "reduced equation: " << a.equation.reduced.value().to_string() << '\n';
  }
  if (what == Fragment::Analyze || what == Fragment::TangentCone) {
    out << "tangent cone: " << a.cone.to_string() << '\n';
    if (a.verdict.cone_linear)
      out << "hyperplane: " << a.verdict.cone_linear->linear.to_string() << " (power " << a.cone.total_degree() << ")\n";
    else
      out << "hyperplane: none\n";
  }
  if (what == Fragment::Analyze) {
    out << "smooth: " << to_string(a.verdict.smooth) << '\n'
        << "LNE: " << to_string(a.verdict.lne) << '\n'
        << "theorem: " << a.verdict.theorem_fired << " (" << a.verdict.explanation << ")\n";
    for (const auto& n : a.verdict.notes) out << "note: " << n << '\n';
  }
  out << "certification: jet budget " << r.certification.jet_budget << ", stable at " << r.certification.stability_budget
      << ", version " << kToolVersion << '\n';
  return out.str();
}

}  // namespace germscope
