#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coneslice/embedding.hpp"
#include "coneslice/errors.hpp"
#include "coneslice/group.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coneslice;

namespace {

Eigen::MatrixXd eta(int n) {
  Eigen::VectorXd d(n + 2);
  for (int i = 0; i < n + 2; ++i) d(i) = oracle::eta_sign(i, n + 2);
  return d.asDiagonal();
}

// Rotation/boost generator in the (a, b) plane built by hand.
AlgebraElement plane(int n, int a, int b, double angle) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 2, n + 2);
  m(a, b) = angle * oracle::eta_sign(b, n + 2);
  m(b, a) = -angle * oracle::eta_sign(a, n + 2);
  return AlgebraElement(m, Signature(n));
}

}  // namespace

TEST(AlgebraBasis, SizeAntisymmetryAndIndependence) {
  for (int n : {2, 3, 5}) {
    const auto basis = algebra_basis(n);
    const int d = n + 2;
    ASSERT_EQ(static_cast<int>(basis.size()), d * (d - 1) / 2);
    Eigen::MatrixXd stacked(d * d, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_EQ(basis[i].antisymmetry_defect(), 0.0);
      stacked.col(static_cast<Eigen::Index>(i)) = basis[i].matrix().reshaped();
    }
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(stacked).rank(), static_cast<Eigen::Index>(basis.size()));
  }
}

TEST(AlgebraBasis, ClosedUnderCommutator) {
  const auto basis = algebra_basis(3);
  Eigen::MatrixXd stacked(25, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = basis[i].matrix().reshaped();
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      const AlgebraElement c = commutator(a, b);
      EXPECT_LE(c.antisymmetry_defect(), 1e-14);
      const Eigen::VectorXd coeffs = stacked.colPivHouseholderQr().solve(Eigen::VectorXd(c.matrix().reshaped()));
      EXPECT_LE((stacked * coeffs - c.matrix().reshaped()).norm(), 1e-12);
    }
  }
}

TEST(AlgebraElement, RejectsNonAntisymmetric) {
  EXPECT_THROW(AlgebraElement(Eigen::MatrixXd::Identity(4, 4), Signature(2)), ContractViolation);
  EXPECT_THROW(AlgebraElement(Eigen::MatrixXd::Zero(5, 5), Signature(2)), ContractViolation);
}

TEST(Exponential, ZeroIsIdentity) {
  const GroupElement g = exponential(AlgebraElement::zero(Signature(3)));
  EXPECT_EQ(g.matrix(), Eigen::MatrixXd::Identity(5, 5));
}

TEST(Exponential, RotationAndBoostExamples) {
  const double half_pi = std::numbers::pi / 2;
  // (1, 2) spatial plane: a Euclidean rotation.
  const GroupElement r = exponential(plane(2, 1, 2, half_pi));
  EXPECT_NEAR(r.matrix()(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.matrix()(1, 2)), 1.0, 1e-15);
  // (0, 1) mixed-sign plane: a boost.
  const GroupElement b = exponential(plane(2, 0, 1, 0.7));
  EXPECT_NEAR(b.matrix()(0, 0), std::cosh(0.7), 1e-14);
  EXPECT_NEAR(std::abs(b.matrix()(0, 1)), std::sinh(0.7), 1e-14);
  EXPECT_NEAR(b.matrix()(1, 1), std::cosh(0.7), 1e-14);
  // (0, 3) both-positive plane: a rotation mixing the two timelike axes.
  const GroupElement t = exponential(plane(2, 0, 3, 0.4));
  EXPECT_NEAR(t.matrix()(0, 0), std::cos(0.4), 1e-15);
  EXPECT_NEAR(std::abs(t.matrix()(0, 3)), std::sin(0.4), 1e-15);
}

TEST(Exponential, MatchesTaylorOracle) {
  Engine rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const AlgebraElement x = random_algebra_element(n, uniform(rng, 0.0, 3.0), rng);
    const Eigen::MatrixXd expected = oracle::taylor_expm(x.matrix(), 80);
    EXPECT_LE((exponential(x).matrix() - expected).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST(Exponential, IsometryAndDeterminantUpToNormFive) {
  Engine rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 4;
    const AlgebraElement x = random_algebra_element(n, uniform(rng, 0.0, 5.0), rng);
    const GroupElement g = exponential(x);
    const Eigen::MatrixXd& a = g.matrix();
    EXPECT_LE((a.transpose() * eta(n) * a - eta(n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(a.determinant(), 1.0, 1e-8);
  }
}

TEST(Exponential, InverseIsNegatedGenerator) {
  Engine rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement x = random_algebra_element(3, 2.0, rng);
    const GroupElement g = exponential(x);
    const Eigen::MatrixXd via_neg = exponential(-1.0 * x).matrix();
    EXPECT_LE((g.inverse().matrix() - via_neg).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(((g * g.inverse()).matrix() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Exponential, RejectsHugeGenerators) {
  EXPECT_THROW(exponential(plane(2, 0, 1, 60.0)), ContractViolation);
}

TEST(RandomAlgebraElement, HasRequestedNorm) {
  Engine rng(44);
  for (double rho : {0.0, 0.5, 3.0}) {
    const AlgebraElement x = random_algebra_element(4, rho, rng);
    EXPECT_NEAR(x.matrix().norm(), rho, 1e-12);
    EXPECT_LE(x.antisymmetry_defect(), 1e-15);
  }
  EXPECT_THROW(random_algebra_element(4, -1.0, rng), ContractViolation);
}

TEST(GroupElement, RejectsNonIsometries) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(0, 0) = 2.0;
  EXPECT_THROW(GroupElement(a, Signature(2)), ContractViolation);
  Eigen::MatrixXd reflection = Eigen::MatrixXd::Identity(4, 4);
  reflection(1, 1) = -1.0;
  EXPECT_THROW(GroupElement(reflection, Signature(2)), ContractViolation);
}

TEST(ActOnSlice, IdentityAndStabilizer) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  EXPECT_EQ(act_on_slice(GroupElement::identity(Signature(2)), p, f).y().coords(), p.y().coords());
  // Rotations of the (0, 1) coordinates fix (0, 0, 1, 1).
  Engine rng(45);
  const SliceChart chart = ds_graph_chart(2, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const GroupElement g = exponential(plane(2, 1, 2, uniform(rng, -3, 3)));
    const Eigen::VectorXd x = draw_chart_point(chart, rng);
    const SlicePoint q = chart.point(x);
    // Rotation in the (1, 2) plane preserves y^3 and hence the slice.
    const SlicePoint r = act_on_slice(g, q, f);
    EXPECT_LE((r.y().coords() - g.matrix() * q.y().coords()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ActOnSlice, ConformalBoundaryIsAnError) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  // Rotating the two timelike axes by pi flips y^3.
  const GroupElement g = exponential(plane(2, 0, 3, std::numbers::pi));
  EXPECT_THROW(act_on_slice(g, p, f), ConformalBoundary);
  EXPECT_THROW(conformal_factor(g, p, f), ConformalBoundary);
}

TEST(ActOnSlice, CompositionLaw) {
  Engine rng(46);
  for (int n : {2, 4}) {
    const SliceChart chart = ds_graph_chart(n, 1.0);
    const HomogeneousFn f = chart.slice();
    int checked = 0;
    while (checked < 200) {
      const GroupElement a = exponential(random_algebra_element(n, 0.5, rng));
      const GroupElement b = exponential(random_algebra_element(n, 0.5, rng));
      const SlicePoint p = chart.point(draw_chart_point(chart, rng));
      try {
        const SlicePoint stepwise = act_on_slice(b, act_on_slice(a, p, f), f);
        const SlicePoint direct = act_on_slice(b * a, p, f);
        EXPECT_LE((stepwise.y().coords() - direct.y().coords()).cwiseAbs().maxCoeff(),
                  1e-10 * std::max(1.0, direct.y().max_abs()));
        ++checked;
      } catch (const ConformalBoundary&) {
      }
    }
  }
}

TEST(TangentAction, MatchesCurveTransportAndIsLinear) {
  Engine rng(47);
  const SliceChart chart = ds_graph_chart(3, 1.0);
  const HomogeneousFn k = compose_k(chart.slice(), fixtures::wavy_l(3));
  const Deformation d(chart.slice(), fixtures::wavy_l(3));
  const SliceChart w = deformed_chart(d, chart);
  int checked = 0;
  while (checked < 200) {
    const GroupElement g = exponential(random_algebra_element(3, 0.5, rng));
    const Eigen::VectorXd x = draw_chart_point(w, rng);
    const SlicePoint p = w.point(x);
    const Eigen::VectorXd c = gaussian_vector(rng, 3);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
    for (int i = 0; i < 3; ++i) v += c(i) * w.tangent(x, i).coords();
    try {
      const AmbientVector analytic = tangent_action(g, p, AmbientVector(v), k);
      const Eigen::VectorXd fd = oracle::curve_transport(
          [&](double t) { return act_on_slice(g, w.point(x + t * c), k).y().coords(); });
      EXPECT_LE(oracle::rel_diff(fd, analytic.coords()), 1e-6);
      const AmbientVector u = random_chart_tangent(w, x, rng);
      const double s = uniform(rng, -2, 2);
      const Eigen::VectorXd lhs = tangent_action(g, p, AmbientVector(v) + s * u, k).coords();
      const Eigen::VectorXd rhs = analytic.coords() + s * tangent_action(g, p, u, k).coords();
      EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
      ++checked;
    } catch (const ConformalBoundary&) {
    } catch (const OutOfDomain&) {
      // The finite-difference curve left the chart.
    }
  }
}

TEST(ConformalFactor, IdentityAndOrthogonality) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  const GroupElement id = GroupElement::identity(Signature(2));
  const AmbientVector e0 = AmbientVector::unit(4, 0);
  const AmbientVector e1 = AmbientVector::unit(4, 1);
  EXPECT_EQ(conformal_factor_residual(id, p, e0, e1, f), 0.0);
  EXPECT_EQ(conformal_factor_residual(id, p, e0, e0, f), 0.0);
  EXPECT_EQ(conformal_factor(id, p, f), 1.0);
  const GroupElement g = exponential(plane(2, 0, 1, 0.3));
  EXPECT_LE(std::abs(conformal_factor_residual(g, p, e0, e1, f)), 1e-14);
}

TEST(ConformalFactor, PositiveWhereDefined) {
  Engine rng(48);
  const SliceChart chart = ds_graph_chart(3, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const GroupElement g = exponential(random_algebra_element(3, 1.0, rng));
    const SlicePoint p = chart.point(draw_chart_point(chart, rng));
    try {
      EXPECT_GT(conformal_factor(g, p, chart.slice()), 0.0);
    } catch (const ConformalBoundary&) {
    }
  }
}

TEST(GroupCampaign, SmallRadiusPasses) {
  GroupCampaignOptions options;
  options.trials = 1000;
  options.seed = 3;
  for (int n : {2, 4}) {
    const SliceChart chart = ds_graph_chart(n, 1.0);
    const Deformation d(chart.slice(), fixtures::wavy_l(n));
    const SliceChart w = deformed_chart(d, chart);
    const VerificationReport r = group_campaign(d.k(), w, options);
    EXPECT_EQ(r.failures, 0u) << r.max_residual;
    EXPECT_LE(r.max_residual, 1e-9);
    EXPECT_EQ(r.trials, 1000u);
  }
}

TEST(GroupCampaign, ZeroRadiusIsIdentity) {
  GroupCampaignOptions options;
  options.trials = 100;
  options.rho = 0.0;
  const SliceChart chart = ds_graph_chart(2, 1.0);
  const VerificationReport r = group_campaign(chart.slice(), chart, options);
  EXPECT_EQ(r.max_residual, 0.0);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.rejections, 0u);
}

TEST(GroupCampaign, LargeRadiusLogsRejectionsWithoutFailing) {
  GroupCampaignOptions options;
  options.trials = 500;
  options.rho = 5.0;
  options.seed = 11;
  const SliceChart chart = ds_graph_chart(2, 1.0);
  const VerificationReport r = group_campaign(chart.slice(), chart, options);
  EXPECT_GT(r.rejections, 0u);
  EXPECT_EQ(r.failures, 0u) << r.max_residual;
}

TEST(GroupCampaign, FailingTrialsCarryTheGroupElement) {
  GroupCampaignOptions options;
  options.trials = 50;
  options.tolerance = 0.0;
  options.rho = 1.0;
  const SliceChart chart = ds_graph_chart(2, 1.0);
  const VerificationReport r = group_campaign(chart.slice(), chart, options);
  ASSERT_GT(r.failures, 0u);
  ASSERT_FALSE(r.failing.empty());
  ASSERT_TRUE(r.failing.front().payload.has_value());
  const Eigen::MatrixXd a = *r.failing.front().payload;
  EXPECT_NO_THROW(GroupElement(a, Signature(2)));
  EXPECT_TRUE(to_json(r).contains("failing_trials"));
}
