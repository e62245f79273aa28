#include "alsq/closed_form.hpp"
#include "alsq/measure.hpp"
#include "alsq/product_diagram.hpp"
#include "alsq/quadratic_system.hpp"
#include "alsq/rules.hpp"
#include "alsq/solver.hpp"

#include <gtest/gtest.h>

#include <string>
#include <utility>
#include <vector>

using namespace alsq;

namespace {

using Spec = std::vector<std::pair<std::string, std::string>>;

AtomicMeasure<Surd> exact(const Spec& atoms) {
  std::vector<Atom<Surd>> out;
  for (const auto& [x, w] : atoms) out.push_back({Position::parse(x), Surd::parse(w)});
  return AtomicMeasure<Surd>::from_atoms(std::move(out));
}

std::vector<Position> positions(std::initializer_list<long> xs) {
  std::vector<Position> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<std::string> values(const std::vector<Position>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

const Spec kExampleOne = {{"1", "1/8"},
                          {"2", "(sqrt(2)-1)/2"},
                          {"4", "(7-4*sqrt(2))/4"},
                          {"8", "(sqrt(2)-1)/2"},
                          {"16", "1/8"}};

const Spec kExampleTwo = {{"1", "1/4"}, {"3", "1/3"},  {"6", "1/6"},
                          {"9", "1/9"}, {"18", "1/9"}, {"36", "1/36"}};

}  // namespace

TEST(Measure, ValidationNamesAtom) {
  try {
    exact({{"1", "1/2"}, {"2", "0"}});
    FAIL();
  } catch (const MeasureError& e) {
    ASSERT_TRUE(e.atom().has_value());
    EXPECT_EQ(*e.atom(), 1u);
  }
  EXPECT_THROW(exact({{"2", "1"}, {"2", "1"}}), MeasureError);
  EXPECT_THROW(exact({}), MeasureError);
}

TEST(Measure, ConvolutionOfTwoAtoms) {
  auto nu = exact({{"1", "1/2"}, {"2", "1/2"}});
  auto sq = convolve(nu, nu);
  EXPECT_TRUE(same_measure(sq, exact({{"1", "1/4"}, {"2", "1/2"}, {"4", "1/4"}}), {}));
}

TEST(Measure, TWeightAndMoments) {
  auto mu = exact({{"1", "1/2"}, {"2", "1/2"}});
  EXPECT_TRUE(same_measure(t_weight(mu), exact({{"1", "1/2"}, {"2", "1"}}), {}));
  EXPECT_EQ(moment(mu, 0), Surd(1));
  EXPECT_EQ(moment(mu, 3), Surd(Rational(9, 2)));
}

TEST(Measure, ScalingAndPowers) {
  auto mu = exact({{"1", "1/2"}, {"3", "1/2"}});
  auto s = scale_positions(mu, Rational(2));
  EXPECT_EQ(values(s.support()), (std::vector<std::string>{"2", "6"}));
  EXPECT_THROW(scale_positions(mu, Rational(0)), MeasureError);
  auto pw = power_positions(mu, 2);
  EXPECT_EQ(values(pw.support()), (std::vector<std::string>{"1", "9"}));
  EXPECT_THROW(power_positions(mu, 0), MeasureError);
  EXPECT_EQ(normalize(exact({{"1", "2"}, {"2", "6"}})).weight(0), Surd(Rational(1, 4)));
}

TEST(Measure, ZeroAtomIsSplitOff) {
  HalfLineMeasure<Surd> h{Surd(Rational(1, 3)), exact({{"2", "2/3"}}).atoms()};
  auto split = strip_zero_atom(h);
  EXPECT_EQ(split.zero_mass, Surd(Rational(1, 3)));
  EXPECT_EQ(split.rest.size(), 1u);
  HalfLineMeasure<Surd> only{Surd(1), {}};
  EXPECT_THROW(strip_zero_atom(only), MeasureError);
}

TEST(Diagram, PowersOfTwo) {
  auto d = pair_diagram(positions({1, 2, 4, 8, 16}));
  EXPECT_EQ(d.size(), 9u);
  auto ur = classify_ur(d);
  EXPECT_EQ(values(ur.ur), (std::vector<std::string>{"1", "2", "128", "256"}));
  EXPECT_EQ(ur.nur.size(), 5u);
  auto g = geometric_profile(d.support());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->a, Position(1));
  EXPECT_EQ(g->r, Position(2));
}

TEST(Diagram, MaximalSixAtomSupport) {
  auto d = pair_diagram(positions({1, 3, 6, 9, 18, 36}));
  EXPECT_EQ(values(d.support()).size(), 6u);
  std::vector<std::string> want = {"1",  "3",   "6",   "9",   "18",  "27",  "36",  "54",
                                   "81", "108", "162", "216", "324", "648", "1296"};
  std::vector<std::string> got;
  for (const auto& e : d.entries()) got.push_back(e.value.to_string());
  EXPECT_EQ(got, want);
  EXPECT_FALSE(d.unique(1, 2));  // 18 = 3*6 = 1*18
  EXPECT_TRUE(d.same(1, 2, 0, 4));
  EXPECT_TRUE(d.same(2, 2, 0, 5));
  EXPECT_FALSE(geometric_profile(d.support()));
  auto c = cardinality_check(d);
  EXPECT_EQ(c.card, 15u);
  EXPECT_EQ(c.lower, 11u);
  ASSERT_TRUE(c.upper);
  EXPECT_EQ(*c.upper, 15u);
  EXPECT_FALSE(c.violated);
}

TEST(Diagram, SmallSupports) {
  auto d = pair_diagram(positions({1, 2}));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_TRUE(classify_ur(d).nur.empty());
  auto g = geometric_profile(positions({1, 3, 9, 27}));
  ASSERT_TRUE(g);
  EXPECT_EQ(g->r, Position(3));
  auto four = cardinality_check(pair_diagram(positions({1, 2, 4, 8})));
  EXPECT_EQ(four.lower, 7u);
  EXPECT_EQ(*four.upper, 7u);
  EXPECT_EQ(pair_diagram(positions({5})).size(), 1u);
  EXPECT_THROW(pair_diagram(positions({2, 1})), std::invalid_argument);
}

TEST(Diagram, BoundaryProductsAlwaysUnique) {
  for (auto s : {positions({1, 2, 3}), positions({1, 2, 4, 8, 16}), positions({1, 3, 6, 9, 18, 36}),
                 positions({2, 3, 5, 7, 11, 13, 17})}) {
    auto d = pair_diagram(s);
    std::size_t p = s.size();
    EXPECT_TRUE(d.unique(0, 0));
    EXPECT_TRUE(d.unique(0, 1));
    EXPECT_TRUE(d.unique(p - 2, p - 1));
    EXPECT_TRUE(d.unique(p - 1, p - 1));
  }
}

TEST(Rules, UniqueSecondSquare) {
  auto c = structural_certificate(pair_diagram(positions({1, 2, 3, 5, 7, 11})));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, Rule::BoundaryProductsShared);
  EXPECT_TRUE(recheck(*c, pair_diagram(positions({1, 2, 3, 5, 7, 11}))));
}

TEST(Rules, MaximalSixAtomSupportPasses) {
  EXPECT_FALSE(structural_certificate(pair_diagram(positions({1, 3, 6, 9, 18, 36}))));
  EXPECT_FALSE(structural_certificate(pair_diagram(positions({1, 2, 4, 8, 16}))));
}

TEST(Rules, ThreeAtomsNeedGeometricSupport) {
  auto c = structural_certificate(pair_diagram(positions({1, 2, 5})));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, Rule::BoundaryProductsShared);
  EXPECT_FALSE(structural_certificate(pair_diagram(positions({1, 2, 4}))));
}

TEST(Rules, ExhaustiveListingRechecks) {
  auto d = pair_diagram(positions({1, 2, 3, 5, 7, 11}));
  auto all = structural_violations(d);
  ASSERT_FALSE(all.empty());
  for (const auto& c : all) EXPECT_TRUE(recheck(c, d)) << c.to_string();
  EXPECT_EQ(rule_from_id(rule_id(Rule::UniqueFourCycle)), Rule::UniqueFourCycle);
}

TEST(System, ThreeAtomEquations) {
  auto mu = exact({{"1", "1/4"}, {"2", "1/2"}, {"4", "1/4"}});
  auto target = convolve(mu, t_weight(mu));
  auto built = build_system(target, mu.support());
  ASSERT_TRUE(std::holds_alternative<QuadraticSystem<Surd>>(built));
  const auto& sys = std::get<QuadraticSystem<Surd>>(built);
  std::vector<std::string> rhs;
  for (const auto& eq : sys.equations) rhs.push_back(eq.rhs.to_string());
  EXPECT_EQ(rhs, (std::vector<std::string>{"1/16", "3/8", "13/16", "3/4", "1/4"}));
  EXPECT_EQ(sys.equations[2].pairs.size(), 2u);

  auto red = propagate_ur(sys, {});
  ASSERT_FALSE(red.conflict);
  ASSERT_TRUE(red.partial.complete());
  EXPECT_EQ(*red.partial.value[0], Surd(Rational(1, 4)));
  EXPECT_EQ(*red.partial.value[1], Surd(Rational(3, 4)));
  EXPECT_EQ(*red.partial.value[2], Surd(Rational(1, 2)));
}

TEST(System, MissingProductIsAMismatch) {
  auto target = exact({{"1", "1"}, {"2", "1"}, {"3", "1"}, {"6", "1"}, {"9", "1"}});
  auto built = build_system(target, positions({1, 2, 3}));
  ASSERT_TRUE(std::holds_alternative<Certificate>(built));
  EXPECT_EQ(std::get<Certificate>(built).rule, Rule::SupportMismatch);
}

TEST(System, BoundaryIndicesResolved) {
  auto mu = exact(kExampleTwo);
  auto target = convolve(mu, t_weight(mu));
  auto sys = std::get<QuadraticSystem<Surd>>(build_system(target, mu.support()));
  auto red = propagate_ur(sys, {});
  ASSERT_FALSE(red.inexact);
  for (std::size_t i : {0u, 1u, 4u, 5u}) EXPECT_TRUE(red.partial.known(i)) << i;
}

TEST(Solver, AluthgeThreeAtomWitness) {
  auto mu = exact({{"1", "1/4"}, {"2", "1/2"}, {"4", "1/4"}});
  auto v = aluthge_subnormal(mu);
  ASSERT_EQ(v.outcome, Outcome::Witness) << v.note;
  ASSERT_TRUE(v.exact_witness());
  auto nu = std::get<AtomicMeasure<Surd>>(*v.witness);
  EXPECT_TRUE(same_measure(nu, exact({{"1", "1/4"}, {"2", "3/4"}, {"4", "1/2"}}), {}));
}

TEST(Solver, AluthgeThreeAtomImpossible) {
  auto mu = exact({{"1", "1/3"}, {"2", "1/3"}, {"4", "1/3"}});
  auto v = aluthge_subnormal(mu);
  ASSERT_EQ(v.outcome, Outcome::Impossible);
  ASSERT_TRUE(v.certificate);
}

TEST(Solver, AluthgeFourAtomsImpossible) {
  for (auto s : {Spec{{"1", "1/4"}, {"2", "1/4"}, {"4", "1/4"}, {"8", "1/4"}},
                 Spec{{"1", "1/5"}, {"3", "1/5"}, {"9", "2/5"}, {"27", "1/5"}},
                 Spec{{"1", "1/4"}, {"2", "1/4"}, {"3", "1/4"}, {"5", "1/4"}}}) {
    auto v = aluthge_subnormal(exact(s));
    EXPECT_EQ(v.outcome, Outcome::Impossible) << v.note;
  }
}

TEST(Solver, AluthgeExampleOne) {
  auto v = aluthge_subnormal(exact(kExampleOne));
  ASSERT_EQ(v.outcome, Outcome::Witness) << v.note;
  auto mu = exact(kExampleOne);
  auto target = to_real(convolve(mu, t_weight(mu)), 256);
  auto nu = any_to_real(*v.witness, 256);
  auto err = max_relative_error(convolve(nu, nu), target, 256);
  ASSERT_TRUE(err);
  EXPECT_LT(err->to_double(), 1e-25);
}

TEST(Solver, SqrtExampleOne) {
  auto v = sqrt_of(exact(kExampleOne));
  ASSERT_EQ(v.outcome, Outcome::Witness) << v.note;
  auto want = exact({{"1", "sqrt(2)/4"}, {"2", "(2-sqrt(2))/2"}, {"4", "sqrt(2)/4"}});
  auto err = max_relative_error(any_to_real(*v.witness, 128), to_real(want, 128), 128);
  ASSERT_TRUE(err);
  EXPECT_LT(err->to_double(), 1e-25);
}

TEST(Solver, SqrtExampleTwoIsExact) {
  auto v = sqrt_of(exact(kExampleTwo));
  ASSERT_EQ(v.outcome, Outcome::Witness) << v.note;
  ASSERT_TRUE(v.exact_witness());
  EXPECT_TRUE(same_measure(std::get<AtomicMeasure<Surd>>(*v.witness),
                           exact({{"1", "1/2"}, {"3", "1/3"}, {"6", "1/6"}}), {}));
  EXPECT_EQ(aluthge_subnormal(exact(kExampleTwo)).outcome, Outcome::Witness);
}

TEST(Solver, SqrtSmallCases) {
  auto v = sqrt_of(exact({{"1", "1/4"}, {"2", "1/2"}, {"4", "1/4"}}));
  ASSERT_EQ(v.outcome, Outcome::Witness);
  EXPECT_TRUE(same_measure(std::get<AtomicMeasure<Surd>>(*v.witness), exact({{"1", "1/2"}, {"2", "1/2"}}), {}));
  EXPECT_EQ(sqrt_of(exact({{"4", "9"}})).outcome, Outcome::Witness);
  EXPECT_EQ(sqrt_of(exact({{"1", "1"}, {"2", "1"}})).outcome, Outcome::Impossible);
  EXPECT_EQ(sqrt_of(exact({{"1", "1"}, {"2", "1"}, {"4", "1"}, {"8", "1"}})).outcome, Outcome::Impossible);
  EXPECT_EQ(sqrt_of(exact({{"1", "1/3"}, {"2", "1/3"}, {"4", "1/3"}})).outcome, Outcome::Impossible);
}

TEST(Solver, MixedRadicandRoot) {
  // (delta_sqrt2 + delta_sqrt3)^2 = delta_2 + 2 delta_sqrt6 + delta_3
  auto mu = exact({{"2", "1"}, {"sqrt(6)", "2"}, {"3", "1"}});
  auto v = sqrt_of(mu);
  ASSERT_EQ(v.outcome, Outcome::Witness) << v.note;
  auto nu = std::get<AtomicMeasure<Surd>>(*v.witness);
  EXPECT_EQ(values(nu.support()), (std::vector<std::string>{"sqrt(2)", "sqrt(3)"}));
}

TEST(ClosedForm, ExampleTwoCaseOne) {
  auto s = classify_small(exact(kExampleTwo));
  EXPECT_EQ(s.which, SmallCase::SixSquaresThroughFourth);
  ASSERT_EQ(s.verdict.outcome, Outcome::Witness) << s.verdict.note;
  EXPECT_TRUE(same_measure(std::get<AtomicMeasure<Surd>>(*s.verdict.witness),
                           exact({{"1", "1/2"}, {"3", "1/3"}, {"6", "1/6"}}), {}));
}

TEST(ClosedForm, ExampleOneFiveAtoms) {
  auto s = classify_small(exact(kExampleOne));
  EXPECT_EQ(s.which, SmallCase::FiveGeometric);
  ASSERT_EQ(s.verdict.outcome, Outcome::Witness) << s.verdict.note;
  ASSERT_TRUE(s.verdict.exact_witness());
  EXPECT_TRUE(same_measure(std::get<AtomicMeasure<Surd>>(*s.verdict.witness),
                           exact({{"1", "sqrt(2)/4"}, {"2", "(2-sqrt(2))/2"}, {"4", "sqrt(2)/4"}}), {}));
}

TEST(ClosedForm, RangeAndFourAtoms) {
  EXPECT_THROW(classify_small(exact({{"1", "1"}, {"2", "1"}})), std::invalid_argument);
  EXPECT_EQ(classify_small(exact({{"1", "1"}, {"2", "1"}, {"4", "1"}, {"8", "1"}})).verdict.outcome,
            Outcome::Impossible);
  auto three = classify_small(exact({{"1", "1/3"}, {"2", "1/3"}, {"4", "1/3"}}));
  EXPECT_EQ(three.verdict.outcome, Outcome::Impossible);
  EXPECT_EQ(classify_small(exact({{"1", "1/4"}, {"2", "1/2"}, {"4", "1/4"}})).verdict.outcome, Outcome::Witness);
}

TEST(ClosedForm, CrossedSquaresImpossible) {
  // lambda_2^2 = lambda_1 lambda_3 and lambda_5^2 = lambda_4 lambda_6
  auto s = classify_small(exact({{"1", "1"}, {"2", "1"}, {"4", "1"}, {"9", "1"}, {"27", "1"}, {"81", "1"}}));
  EXPECT_EQ(s.verdict.outcome, Outcome::Impossible);
}
