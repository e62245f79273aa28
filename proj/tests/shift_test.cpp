#include "alsq/recurrence.hpp"
#include "alsq/shift.hpp"
#include "alsq/solver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace alsq;

namespace {

constexpr unsigned kBits = 128;

AtomicMeasure<Surd> rational_measure(const std::vector<std::pair<long, Rational>>& atoms) {
  std::vector<Atom<Surd>> out;
  for (const auto& [x, w] : atoms) out.push_back({Position(x), Surd(w)});
  return AtomicMeasure<Surd>::from_atoms(std::move(out));
}

Real exact_real(const Rational& q) { return Real(q, kBits); }

double rel(const Real& a, const Real& b) { return relative_error(a, b).to_double(); }

AtomicMeasure<Surd> random_measure(std::mt19937_64& rng, std::size_t p) {
  std::uniform_int_distribution<long> pos(1, 40), wt(1, 20);
  std::vector<std::pair<long, Rational>> atoms;
  std::set<long> used;
  while (atoms.size() < p) {
    long x = pos(rng);
    if (!used.insert(x).second) continue;
    atoms.push_back({x, Rational(wt(rng), wt(rng))});
  }
  return rational_measure(atoms);
}

const auto kTwoPoint = [] { return rational_measure({{1, Rational(1, 2)}, {2, Rational(1, 2)}}); };

}  // namespace

TEST(Shift, TwoPointWeights) {
  auto a = weights_from_measure(kTwoPoint(), 3, kBits);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_LT(rel(a[0], sqrt(exact_real(Rational(3, 2)))), 1e-35);
  EXPECT_LT(rel(a[1], sqrt(exact_real(Rational(5, 3)))), 1e-35);
  EXPECT_LT(rel(a[2], sqrt(exact_real(Rational(9, 5)))), 1e-35);
  auto t = aluthge_weights(a);
  EXPECT_LT(rel(t[0], root4(exact_real(Rational(5, 2)))), 1e-35);
  auto g = moments_from_weights(a, kBits);
  std::vector<Rational> want = {Rational(1), Rational(3, 2), Rational(5, 2), Rational(9, 2)};
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_LT(rel(g[k], exact_real(want[k])), 1e-35) << k;
}

TEST(Shift, DiracIsConstant) {
  auto a = weights_from_measure(rational_measure({{7, Rational(1)}}), 6, kBits);
  for (const auto& x : a) EXPECT_LT(rel(x, sqrt(Real(7, kBits))), 1e-35);
  auto t = aluthge_weights(a);
  for (const auto& x : t) EXPECT_LT(rel(x, sqrt(Real(7, kBits))), 1e-35);
  WeightSequence ones(5, Real(1, kBits));
  for (const auto& g : moments_from_weights(ones, kBits)) EXPECT_EQ(g, Real(1, kBits));
  EXPECT_THROW(aluthge_weights(WeightSequence{Real(1, kBits)}), std::invalid_argument);
}

TEST(Shift, WeightsNondecreasingAndRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = random_measure(rng, 1 + trial % 6);
    auto a = weights_from_measure(mu, 15, kBits);
    for (std::size_t k = 0; k + 1 < a.size(); ++k) EXPECT_LE(a[k], a[k + 1] * (Real(1, kBits) + Real::pow2(-100, kBits)));
    auto g = moments_from_weights(a, kBits);
    auto direct = berger_moments(mu, 16, kBits);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_LT(rel(g[k], direct[k]), 1e-30);
  }
}

TEST(Shift, AluthgeMomentIdentity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = random_measure(rng, 1 + trial % 6);
    auto g = berger_moments(mu, 22, kBits);
    auto gt = aluthge_moments(mu, 21, kBits);
    for (std::size_t n = 0; n <= 20; ++n)
      EXPECT_LT(rel(gt[n] * gt[n] * g[1], g[n] * g[n + 1]), std::ldexp(1.0, -100)) << n;
  }
}

TEST(Hankel, TwoPointMoments) {
  auto g = berger_moments(kTwoPoint(), 8, kBits);
  auto r1 = hankel_psd(g, 1);
  EXPECT_TRUE(r1.a && r1.b);
  auto r2 = hankel_psd(g, 2);
  EXPECT_TRUE(r2.a && r2.b);
  MomentSequence pw;
  for (int k = 0; k < 10; ++k) pw.push_back(Real::pow2(k, kBits));
  for (std::size_t n = 0; n <= 4; ++n) {
    auto r = hankel_psd(pw, n);
    EXPECT_TRUE(r.a && r.b) << n;
  }
  EXPECT_THROW(hankel_psd(g, 4), std::invalid_argument);
}

TEST(Hankel, RejectsNonMomentSequence) {
  MomentSequence g;
  for (long v : {1, 1, 3, 1, 1, 1}) g.push_back(Real(v, kBits));
  auto r1 = hankel_psd(g, 1);
  EXPECT_TRUE(r1.a);   // [[1,1],[1,3]]
  EXPECT_FALSE(r1.b);  // [[1,3],[3,1]] has eigenvalue -2
  EXPECT_FALSE(hankel_psd(g, 2).a);
}

TEST(Hankel, AluthgeWitnessGivesStieltjesSequence) {
  auto mu = rational_measure({{1, Rational(1, 4)}, {3, Rational(1, 3)}, {6, Rational(1, 6)},
                              {9, Rational(1, 9)}, {18, Rational(1, 9)}, {36, Rational(1, 36)}});
  auto v = aluthge_subnormal(mu);
  ASSERT_EQ(v.outcome, Outcome::Witness);
  auto gt = aluthge_moments(mu, 14, kBits);
  for (std::size_t n = 0; n <= 6; ++n) {
    auto r = hankel_psd(gt, n);
    EXPECT_TRUE(r.a && r.b) << n;
  }
  auto nu = any_to_real(*v.witness, kBits);
  auto m = berger_moments(nu, 14, kBits);
  for (std::size_t n = 0; n < 14; ++n) EXPECT_LT(rel(m[n], gt[n]), 1e-30) << n;
}

TEST(Recurrence, TwoPoint) {
  auto g = exact_moments(kTwoPoint(), 8);
  auto r = minimal_recurrence(g, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->order, 2u);
  EXPECT_EQ(r->coeffs, (std::vector<Rational>{Rational(-2), Rational(3)}));
}

TEST(Recurrence, Dirac) {
  auto g = exact_moments(rational_measure({{5, Rational(2)}}), 6);
  auto r = minimal_recurrence(g, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->order, 1u);
  EXPECT_EQ(r->coeffs[0], Rational(5));
}

TEST(Recurrence, SixAtoms) {
  auto mu = rational_measure({{1, Rational(1, 4)}, {3, Rational(1, 3)}, {6, Rational(1, 6)},
                              {9, Rational(1, 9)}, {18, Rational(1, 9)}, {36, Rational(1, 36)}});
  auto r = minimal_recurrence(exact_moments(mu, 16), 7);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->order, 6u);
  std::vector<Rational> roots;
  for (long x : {1, 3, 6, 9, 18, 36}) roots.emplace_back(x);
  EXPECT_EQ(r->characteristic(), monic_from_roots(roots));
}

TEST(Recurrence, NoneWithinOrderAndLengthCheck) {
  std::vector<Rational> g;
  for (long v : {1, 2, 7, 3, 11, 5, 13, 4}) g.emplace_back(v);
  EXPECT_FALSE(minimal_recurrence(g, 2));
  EXPECT_THROW(minimal_recurrence(g, 4), std::invalid_argument);
}
