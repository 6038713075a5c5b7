#include <gtest/gtest.h>

#include "corpus.hpp"
#include "helpers.hpp"

using namespace germscope;
using testing_support::P;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }
RingPtr XYZ() { return make_ring({"X", "Y", "Z"}); }

Monomial mono(std::vector<Monomial::Exponent> e) { return Monomial(std::move(e)); }

}  // namespace

TEST(MonoCmp, LocalOrderPutsOneAboveVariables) {
  auto local = MonomialOrder::local_negdegrevlex();
  EXPECT_EQ(mono_cmp(local, mono({1, 0}), mono({0, 0})), Cmp::LT);
  EXPECT_EQ(mono_cmp(local, mono({0, 0}), mono({0, 1})), Cmp::GT);
}

TEST(MonoCmp, GlobalDegrevlexTieBreak) {
  EXPECT_EQ(mono_cmp(MonomialOrder::global_degrevlex(), mono({2, 0}), mono({1, 1})), Cmp::GT);
}

TEST(MonoCmp, Reflexive) {
  for (const auto& order : {MonomialOrder::global_degrevlex(), MonomialOrder::local_negdegrevlex()})
    EXPECT_EQ(mono_cmp(order, mono({1, 2}), mono({1, 2})), Cmp::EQ);
}

TEST(MonoCmp, LocalPrefersLowerDegree) {
  auto local = MonomialOrder::local_negdegrevlex();
  EXPECT_EQ(mono_cmp(local, mono({0, 3}), mono({2, 2})), Cmp::GT);
  EXPECT_EQ(mono_cmp(local, mono({3, 1}), mono({0, 3})), Cmp::LT);
}

TEST(MonoCmp, OrdersAreMultiplicative) {
  corpus::Rng rng(11);
  auto local = MonomialOrder::local_negdegrevlex();
  auto global = MonomialOrder::global_degrevlex();
  auto block = MonomialOrder::block(local, local, 1);
  auto rand_mono = [&] {
    return mono({static_cast<Monomial::Exponent>(corpus::uniform(rng, 0, 3)),
                 static_cast<Monomial::Exponent>(corpus::uniform(rng, 0, 3))});
  };
  for (int t = 0; t < 200; ++t) {
    Monomial u = rand_mono(), v = rand_mono(), w = rand_mono();
    for (const auto& order : {local, global, block})
      EXPECT_EQ(mono_cmp(order, u, v), mono_cmp(order, u * w, v * w));
  }
}

TEST(Render, CanonicalOrder) {
  auto r = xyz();
  EXPECT_EQ(P(r, "-x^2*y + z^2").to_string(), "z^2 - x^2*y");
  EXPECT_EQ(P(r, "1/2*x - 3").to_string(), "-3 + 1/2*x");
  EXPECT_EQ(P(r, "y*z*(-2/3) + x*z + y^2 + x*y + x^2").to_string(), "x^2 + x*y + x*z + y^2 - 2/3*y*z");
  EXPECT_EQ(P(r, "x - x").to_string(), "0");
  EXPECT_EQ(P(r, "-x").to_string(), "-x");
}

TEST(Rational, LowestTerms) {
  Rat q(6, -4);
  q.canonicalize();
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  auto r = xyz();
  EXPECT_EQ(P(r, "4/6*x").to_string(), "2/3*x");
}

TEST(Compose, CrossCapEquationVanishesOnImage) {
  auto src = make_ring({"x", "y"});
  auto tgt = XYZ();
  Poly eq = P(tgt, "Z^2 - X*Y");
  EXPECT_TRUE(compose(eq, {P(src, "x^2"), P(src, "y^2"), P(src, "x*y")}).is_zero());
}

TEST(Compose, IdentitySubstitution) {
  auto r = xyz();
  Poly p = P(r, "x^3 - 2*x*y*z + 1/5*z^2 + 7");
  EXPECT_EQ(compose(p, {P(r, "x"), P(r, "y"), P(r, "z")}), p);
}

TEST(Compose, JetMultiplicationTruncates) {
  auto r = make_ring({"x"});
  EXPECT_EQ(mul_truncated(P(r, "x + x^3"), P(r, "x"), 2u).to_string(), "x^2");
}

TEST(Compose, RequiresFullSubstitution) {
  auto r = xyz();
  EXPECT_THROW(compose(P(r, "x"), {P(r, "x")}), std::invalid_argument);
}

TEST(Compose, TruncatedMatchesTruncatedExact) {
  corpus::Rng rng(5);
  auto src = make_ring({"s", "t"});
  auto tgt = xyz();
  for (int t = 0; t < 20; ++t) {
    Poly p = corpus::random_poly(tgt, rng, 0, 4, 5);
    std::vector<Poly> subst;
    for (int i = 0; i < 3; ++i) subst.push_back(corpus::random_poly(src, rng, 1, 3, 3));
    EXPECT_EQ(compose(p, subst, 6u), compose(p, subst).truncated(6));
  }
}

TEST(Compose, JetCertificationSurvivesSubstitution) {
  // Changing p above its budget changes compose(p, subst) only above that budget
  // when every substitute vanishes at 0.
  corpus::Rng rng(6);
  auto src = make_ring({"s", "t"});
  auto tgt = xyz();
  for (int t = 0; t < 20; ++t) {
    const unsigned d = 5;
    Poly p = corpus::random_poly(tgt, rng, 0, d, 5);
    Poly noise = corpus::random_poly(tgt, rng, d + 1, d + 3, 3);
    std::vector<Jet> subst;
    for (int i = 0; i < 3; ++i) subst.push_back(Jet(corpus::random_poly(src, rng, 1, 3, 3), 9));
    Jet a = compose(Jet(p, d), subst);
    Jet b = compose(Jet(p + noise, d), subst);
    EXPECT_EQ(a.budget(), static_cast<int>(d));
    EXPECT_EQ(a, b);
  }
}

TEST(Jet, BudgetIsMinimumOfOperands) {
  auto r = xyz();
  Jet a(P(r, "x + y^3"), 4), b(P(r, "z + z^2"), 2);
  EXPECT_EQ((a + b).budget(), 2);
  EXPECT_EQ((a * b).budget(), 2);
  EXPECT_EQ((a * b).value().to_string(), "x*z");
  EXPECT_TRUE(Jet::exact(P(r, "x")).exact());
  EXPECT_EQ(Jet(P(r, "x + x^5"), 3).value().to_string(), "x");
}

TEST(InitialForm, Examples) {
  auto r = XYZ();
  EXPECT_EQ(initial_form(P(r, "Z^2 - X^2*Y")).to_string(), "Z^2");
  Poly h = P(r, "X^3 + X*Y*Z");
  EXPECT_EQ(initial_form(h), h);
  Poly sq = P(r, "(Z^2 - X*Y)^2");
  EXPECT_EQ(initial_form(sq), sq);
  EXPECT_THROW(initial_form(Poly(r)), std::invalid_argument);
}

TEST(Partial, Examples) {
  auto r = make_ring({"x", "y"});
  EXPECT_EQ(partial(P(r, "x*y"), "y").to_string(), "x");
  EXPECT_EQ(partial(P(r, "y^2 + x"), "y").evaluate(std::vector<Rat>{Rat(0), Rat(0)}), 0);
  EXPECT_TRUE(partial(P(r, "0"), "x").is_zero());
  EXPECT_TRUE(partial(Poly::constant(r, Rat(7)), "x").is_zero());
  EXPECT_THROW(partial(P(r, "x"), "w"), std::invalid_argument);
}

TEST(RingLaws, RandomPolynomials) {
  corpus::Rng rng(1);
  auto r = xyz();
  for (int t = 0; t < 60; ++t) {
    Poly a = corpus::random_poly(r, rng, 0, 3, 4, 5);
    Poly b = corpus::random_poly(r, rng, 0, 3, 4, 5);
    Poly c = corpus::random_poly(r, rng, 0, 3, 4, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(RingLaws, EvaluationIsAHomomorphism) {
  corpus::Rng rng(2);
  auto r = xyz();
  for (int t = 0; t < 40; ++t) {
    Poly a = corpus::random_poly(r, rng, 0, 3, 4);
    Poly b = corpus::random_poly(r, rng, 0, 3, 4);
    std::vector<Rat> pt{Rat(corpus::uniform(rng, -4, 4)) / 3, Rat(corpus::uniform(rng, -4, 4)), Rat(1) / 2};
    EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
  }
}

TEST(InitialForm, Multiplicative) {
  corpus::Rng rng(3);
  auto r = xyz();
  for (int t = 0; t < 80; ++t) {
    Poly a = corpus::random_poly(r, rng, 0, 4, 5);
    Poly b = corpus::random_poly(r, rng, 0, 4, 5);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ(initial_form(a * b), initial_form(a) * initial_form(b));
  }
}

TEST(Embed, ByVariableName) {
  auto small = make_ring({"y"});
  auto big = xyz();
  EXPECT_EQ(embed(P(small, "y^2 + 1"), big), P(big, "y^2 + 1"));
  EXPECT_THROW(embed(P(big, "x"), small), std::invalid_argument);
}
