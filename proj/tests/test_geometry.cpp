#include <gtest/gtest.h>

#include "corpus.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace germscope;
using testing_support::G;
using testing_support::P;

namespace {

RingPtr XYZ() { return make_ring({"X", "Y", "Z"}); }

ImageEquation equation_of(const Poly& lambda, std::size_t k) { return map_degree(Jet::exact(lambda), k); }

}  // namespace

TEST(JetDeterminant, MatchesLeibniz) {
  corpus::Rng rng(61);
  auto r = XYZ();
  for (int t = 0; t < 25; ++t) {
    const std::size_t k = static_cast<std::size_t>(corpus::uniform(rng, 1, 4));
    const int budget = corpus::uniform(rng, 3, 7);
    std::vector<std::vector<Jet>> m(k);
    std::vector<std::vector<Poly>> raw(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Poly e = corpus::random_poly(r, rng, 0, 3, 3);
        m[i].push_back(Jet(e, budget));
        raw[i].push_back(e.truncated(static_cast<unsigned>(budget)));
      }
    Jet det = jet_determinant(m);
    EXPECT_EQ(det.budget(), budget);
    EXPECT_EQ(det.value(), oracle::leibniz_det(raw, static_cast<unsigned>(budget)));
  }
}

TEST(FittingEquation, CrossCap) {
  PresentationData p = presentation_matrix(G("x y", "x, y^2, x*y"), 16, true);
  EXPECT_EQ(fitting_equation(p).value().to_string(), "Z^2 - X^2*Y");
}

TEST(MapDegree, Examples) {
  auto r = XYZ();
  ImageEquation a = equation_of(P(r, "Z^2 - X^2*Y"), 2);
  EXPECT_EQ(a.deg, 1u);
  EXPECT_EQ(a.reduced.value().to_string(), "Z^2 - X^2*Y");

  ImageEquation b = equation_of(P(r, "(Z - X^2)^2"), 2);
  EXPECT_EQ(b.deg, 2u);
  EXPECT_EQ(b.sign, 1);
  EXPECT_EQ(b.reduced.value().to_string(), "Z - X^2");

  ImageEquation c = equation_of(P(r, "-(Z^2 - X*Y)^2"), 4);
  EXPECT_EQ(c.deg, 2u);
  EXPECT_EQ(c.sign, -1);

  ImageEquation d = equation_of(P(r, "-(Z + X)^3"), 3);
  EXPECT_EQ(d.deg, 3u);
  EXPECT_EQ(Rat(d.sign) * pow(d.reduced.value(), 3), P(r, "-(Z + X)^3"));

  EXPECT_THROW(map_degree(Jet(P(r, "Z^9"), 4), 9), CertificationError);
}

TEST(TangentCone, Examples) {
  auto r = XYZ();
  EXPECT_EQ(tangent_cone(Jet::exact(P(r, "Z^2 - X^2*Y"))).to_string(), "Z^2");
  EXPECT_EQ(tangent_cone(Jet(P(r, "X*Y + Z^3"), 3)).to_string(), "X*Y");
  EXPECT_THROW(tangent_cone(Jet(P(r, "Z^5"), 3)), CertificationError);
}

TEST(Smoothness, Examples) {
  auto r = XYZ();
  EXPECT_EQ(smoothness(Jet::exact(P(r, "Z - X^2"))), Smooth::Yes);
  EXPECT_EQ(smoothness(Jet::exact(P(r, "Z^2 - X^2*Y"))), Smooth::No);
  EXPECT_EQ(smoothness(Jet(P(r, "Z^2"), 0)), Smooth::Uncertified);
}

TEST(Classify, Cascade) {
  auto r = XYZ();
  const ImageEquation cap = equation_of(P(r, "Z^2 - X^2*Y"), 2);
  const Poly cap_cone = P(r, "Z^2");

  Verdict a = classify({1, 2, true, false}, cap, cap_cone);
  EXPECT_EQ(a.theorem_fired, "mult-gd-equivalence");
  EXPECT_EQ(a.smooth, Smooth::No);
  EXPECT_EQ(a.lne, Lne::No);
  ASSERT_TRUE(a.cone_linear);
  EXPECT_EQ(a.cone_linear->linear.to_string(), "Z");

  Verdict b = classify({0, 1, true, false}, equation_of(P(r, "-Z + X^2"), 1), P(r, "-Z"));
  EXPECT_EQ(b.theorem_fired, "immersion");
  EXPECT_EQ(b.lne, Lne::Yes);

  Verdict c = classify({1, 2, true, false}, equation_of(P(r, "(Z - X)^2"), 2), P(r, "(Z - X)^2"));
  EXPECT_EQ(c.theorem_fired, "smooth-image");
  EXPECT_EQ(c.smooth, Smooth::Yes);

  Verdict d = classify({2, 3, false, true}, equation_of(P(r, "Z^2 - X^3"), 2), P(r, "Z^2"));
  EXPECT_EQ(d.theorem_fired, "injective-embedding");
  EXPECT_EQ(d.lne, Lne::No);
  EXPECT_FALSE(d.notes.empty());

  Verdict e = classify({2, 3, false, false}, equation_of(P(r, "Z^2 - X^3"), 2), P(r, "Z^2"));
  EXPECT_EQ(e.theorem_fired, "linear-cone-singular");
  EXPECT_EQ(e.lne, Lne::No);

  const Poly quad = P(r, "(Z^2 - X*Y)^2");
  Verdict f = classify({2, 3, false, false}, equation_of(quad, 4), quad);
  EXPECT_EQ(f.theorem_fired, "none");
  EXPECT_EQ(f.lne, Lne::Undetermined);
  EXPECT_EQ(f.smooth, Smooth::No);
}

TEST(Classify, InconsistentInputIsAnInternalError) {
  auto r = XYZ();
  // mult = gd with mult = deg but a singular reduced equation.
  EXPECT_THROW(classify({1, 1, true, false}, equation_of(P(r, "Z^2 - X^3"), 1), P(r, "Z^2")), InternalError);
}

TEST(Analyze, Examples) {
  Report cap = analyze(G("x y", "x, y^2, x*y"));
  EXPECT_EQ(cap.result.equation.lambda.value().to_string(), "Z^2 - X^2*Y");
  EXPECT_EQ(cap.result.cone.to_string(), "Z^2");
  EXPECT_EQ(cap.deg(), 1u);
  EXPECT_EQ(cap.result.verdict.smooth, Smooth::No);
  EXPECT_EQ(cap.result.verdict.lne, Lne::No);

  Report graph = analyze(G("x y", "x, y, x^2 + y^2"));
  EXPECT_EQ(graph.result.equation.lambda.value().to_string(), "-Z + X^2 + Y^2");
  EXPECT_EQ(graph.result.verdict.theorem_fired, "immersion");

  Report c2 = analyze(G("x y", "x^2, y^2, x*y"));
  EXPECT_EQ(c2.mult(), 3u);
  EXPECT_EQ(c2.gd(), 4u);
  EXPECT_EQ(c2.deg(), 2u);
  EXPECT_EQ(c2.result.equation.lambda.value().to_string(), "X^2*Y^2 - 2*X*Y*Z^2 + Z^4");
  EXPECT_EQ(c2.result.equation.reduced.value().to_string(), "-X*Y + Z^2");
  EXPECT_EQ(c2.result.verdict.smooth, Smooth::No);
  EXPECT_EQ(c2.result.verdict.lne, Lne::Undetermined);
  EXPECT_FALSE(c2.result.verdict.cone_linear);
}

TEST(Analyze, FoldOfASmoothSurface) {
  Report r = analyze(G("x y", "x, y^2, x + y^2"));
  EXPECT_EQ(r.deg(), 2u);
  EXPECT_EQ(r.mult(), 2u);
  EXPECT_EQ(r.result.verdict.smooth, Smooth::Yes);
  EXPECT_EQ(r.result.verdict.lne, Lne::Yes);
}

TEST(Analyze, CorpusInvariants) {
  auto germs = corpus::germ_corpus(62, 30);
  for (const auto& f : corpus::family_corpus(62, 10)) germs.push_back(f);
  for (const auto& f : germs) {
    SCOPED_TRACE(render_germ(f));
    Report r = analyze(f);
    const Attempt& a = r.result;
    const std::size_t k = a.presentation.size();
    const std::size_t z = r.target->size() - 1;

    // In working coordinates lambda has Z-degree k with Z^k coefficient (-1)^k.
    unsigned zdeg = 0;
    for (const auto& [m, c] : a.working_lambda.value().terms()) zdeg = std::max<unsigned>(zdeg, m[z]);
    EXPECT_EQ(zdeg, k);
    const Monomial zk = Monomial::variable(z + 1, z, static_cast<Monomial::Exponent>(k));
    EXPECT_EQ(a.working_lambda.value().coefficient(zk), k % 2 ? -1 : 1);

    // lambda = sign * reduced^deg to the certified degree.
    const unsigned e = static_cast<unsigned>(a.equation.lambda.budget());
    EXPECT_EQ((Rat(a.equation.sign) * pow(a.equation.reduced.value(), a.equation.deg, e)).truncated(e),
              a.equation.lambda.value());

    EXPECT_LE(r.deg(), r.mult());
    EXPECT_LE(r.mult(), r.gd());
    EXPECT_EQ(k, r.gd());

    // The cone is the initial form of lambda, and with mult = gd the working cone is (-Z)^k.
    EXPECT_EQ(a.cone, initial_form(a.equation.lambda.value()));
    if (r.mult_gd.equal) EXPECT_EQ(a.working_cone, Rat(k % 2 ? -1 : 1) * pow(Poly::variable(r.target, z), k));

    // Both equations vanish on the image.
    EXPECT_TRUE(compose(a.equation.lambda.value(), f.components, e).is_zero());
    const unsigned re = static_cast<unsigned>(a.equation.reduced.budget());
    EXPECT_TRUE(compose(a.equation.reduced.value(), f.components, re).is_zero());

    const Verdict& v = a.verdict;
    if (v.smooth == Smooth::Yes) EXPECT_EQ(v.lne, Lne::Yes);
    if (r.mult_gd.equal) EXPECT_EQ(v.smooth == Smooth::Yes, r.mult() == r.deg());
    if (r.corank == 0) EXPECT_EQ(v.theorem_fired, "immersion");
    EXPECT_TRUE(r.certification.stable);
  }
}
