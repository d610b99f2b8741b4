#include <gtest/gtest.h>

#include <cmath>

#include "coneslice/embedding.hpp"
#include "coneslice/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coneslice;

namespace {

Deformation wavy_deformation(int n) { return Deformation(fixtures::curved_f(n), fixtures::wavy_l(n)); }

// Graph-like chart of the curved slice: project the dS chart along rays.
SliceChart curved_chart(int n) {
  const SliceChart ds = ds_graph_chart(n, 1.0);
  const HomogeneousFn f = fixtures::curved_f(n);
  return SliceChart(
      "curved", f, [ds, f](const Eigen::VectorXd& x) { return ray_project(ds.point(x).y(), f).y(); },
      [ds, f](const Eigen::VectorXd& x, int i) {
        // d/dx_i (y / f(y)) = V / f - df(V) y / f^2
        const AmbientVector y = ds.point(x).y();
        const AmbientVector v = ds.tangent(x, i);
        const double fy = f.eval(y);
        return AmbientVector(v.coords() / fy - f.directional(y, v) / (fy * fy) * y.coords());
      },
      [ds](const Eigen::VectorXd& x) { return ds.contains(x); },
      [ds](Engine& rng) { return ds.draw(rng); });
}

}  // namespace

TEST(LambdaMap, Examples) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  const Deformation zero(f, fixtures::constant_l(2, 0.0));
  EXPECT_EQ(lambda_map(zero, p).y().coords(), p.y().coords());
  const Deformation c(f, fixtures::constant_l(2, 0.3));
  const SlicePoint q = lambda_map(c, p);
  EXPECT_LE((q.y().coords() - std::exp(0.3) * p.y().coords()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(c.k().eval(q.y()), 1.0, 1e-15);
}

TEST(LambdaMap, RejectsPointsOffTheSourceSlice) {
  const Deformation d(de_sitter_function(2, 1.0), fixtures::constant_l(2, 0.0));
  const SlicePoint other(AmbientVector({0, 0, 2, 2}), de_sitter_function(2, 0.5));
  EXPECT_THROW(lambda_map(d, other), ContractViolation);
}

TEST(LambdaMap, LandsOnTargetSlice) {
  Engine rng(31);
  const Deformation d = wavy_deformation(3);
  const SliceChart chart = curved_chart(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::VectorXd x = draw_chart_point(chart, rng);
    const SlicePoint q = lambda_map(d, chart.point(x));
    const auto [c, h] = slice_residuals(q.y(), d.k());
    EXPECT_LE(std::abs(c), 1e-12 * std::max(1.0, q.y().max_abs() * q.y().max_abs()));
    EXPECT_LE(std::abs(h), 1e-13);
  }
}

TEST(LambdaPushforward, Examples) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  const AmbientVector e0 = AmbientVector::unit(4, 0);
  const Deformation zero(f, fixtures::constant_l(2, 0.0));
  EXPECT_EQ(lambda_pushforward(zero, p, e0).coords(), e0.coords());
  const Deformation c(f, fixtures::constant_l(2, -0.2));
  EXPECT_LE((lambda_pushforward(c, p, e0).coords() - std::exp(-0.2) * e0.coords()).norm(), 1e-15);
  EXPECT_THROW(lambda_pushforward(zero, p, AmbientVector::unit(4, 3)), ContractViolation);
}

TEST(LambdaPushforward, MatchesCurveTransport) {
  Engine rng(32);
  for (int n : {2, 4}) {
    const Deformation d = wavy_deformation(n);
    const SliceChart chart = curved_chart(n);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd x = draw_chart_point(chart, rng);
      const SlicePoint p = chart.point(x);
      const Eigen::VectorXd c = gaussian_vector(rng, n);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 2);
      for (int i = 0; i < n; ++i) v += c(i) * chart.tangent(x, i).coords();
      const Eigen::VectorXd fd = oracle::curve_transport(
          [&](double t) { return lambda_map(d, chart.point(x + t * c)).y().coords(); });
      const AmbientVector analytic = lambda_pushforward(d, p, AmbientVector(v));
      EXPECT_LE(oracle::rel_diff(fd, analytic.coords()), 1e-6);
      EXPECT_TRUE(tangency(lambda_map(d, p), analytic).within(1e-10));
    }
  }
}

TEST(LambdaPushforward, IsLinear) {
  Engine rng(33);
  const Deformation d = wavy_deformation(3);
  const SliceChart chart = curved_chart(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = draw_chart_point(chart, rng);
    const SlicePoint p = chart.point(x);
    const AmbientVector u = random_chart_tangent(chart, x, rng);
    const AmbientVector v = random_chart_tangent(chart, x, rng);
    const double a = uniform(rng, -2, 2);
    const double b = uniform(rng, -2, 2);
    const Eigen::VectorXd lhs = lambda_pushforward(d, p, a * u + b * v).coords();
    const Eigen::VectorXd rhs =
        a * lambda_pushforward(d, p, u).coords() + b * lambda_pushforward(d, p, v).coords();
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(WeylResidual, Examples) {
  const HomogeneousFn f = de_sitter_function(2, 1.0);
  const SlicePoint p(AmbientVector({0, 0, 1, 1}), f);
  const AmbientVector e0 = AmbientVector::unit(4, 0);
  const AmbientVector e1 = AmbientVector::unit(4, 1);
  const Deformation zero(f, fixtures::constant_l(2, 0.0));
  EXPECT_EQ(weyl_residual(zero, p, e0, e1), 0.0);
  const Deformation c(f, fixtures::constant_l(2, 0.3));
  EXPECT_LE(std::abs(weyl_residual(c, p, e0, e0)), 1e-15);
  const AmbientVector null = e0 + e1;
  EXPECT_LE(std::abs(weyl_residual(c, p, null, null)), 1e-15);
}

TEST(WeylResidual, GramMatricesRelateByConformalFactor) {
  Engine rng(34);
  const Deformation d = wavy_deformation(3);
  const SliceChart chart = curved_chart(3);
  const SliceChart target = deformed_chart(d, chart);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = draw_chart_point(chart, rng);
    std::vector<Eigen::VectorXd> pushed;
    std::vector<Eigen::VectorXd> plain;
    for (const AmbientVector& t : target.tangents(x)) pushed.push_back(t.coords());
    for (const AmbientVector& t : chart.tangents(x)) plain.push_back(t.coords());
    const double e2l = std::exp(2.0 * d.l().eval(chart.point(x).y()));
    const Eigen::MatrixXd lhs = oracle::gram(pushed);
    const Eigen::MatrixXd rhs = e2l * oracle::gram(plain);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(DeformationCampaign, ZeroConstantAndWavy) {
  CampaignOptions options;
  options.trials = 1000;
  options.seed = 7;
  for (int n : {2, 4}) {
    const SliceChart ds = ds_graph_chart(n, 1.0);
    const HomogeneousFn f = ds.slice();
    for (const HomogeneousFn& l : {fixtures::constant_l(n, 0.0), fixtures::constant_l(n, 0.3),
                                   fixtures::wavy_l(n)}) {
      const VerificationReport r = deformation_campaign(Deformation(f, l), ds, options);
      EXPECT_EQ(r.trials, 1000u);
      EXPECT_EQ(r.failures, 0u) << l.name() << " max " << r.max_residual;
      EXPECT_LE(r.max_residual, 1e-9);
      EXPECT_EQ(r.campaign, "weyl:" + l.name());
    }
  }
}

TEST(DeformationCampaign, IndependentOfThreadCount) {
  const SliceChart chart = curved_chart(3);
  const Deformation d = wavy_deformation(3);
  CampaignOptions options;
  options.trials = 300;
  options.seed = 99;
  options.threads = 1;
  const VerificationReport serial = deformation_campaign(d, chart, options);
  options.threads = 4;
  const VerificationReport parallel = deformation_campaign(d, chart, options);
  EXPECT_EQ(serial.max_residual, parallel.max_residual);
  EXPECT_EQ(serial.mean_residual, parallel.mean_residual);
  EXPECT_EQ(dump_json(to_json(serial)), dump_json(to_json(parallel)));
}

TEST(DeformedChart, PointsAndTangentsMatchPushforward) {
  Engine rng(35);
  const SliceChart base = ds_graph_chart(2, 1.5);
  const Deformation d(base.slice(), fixtures::wavy_l(2));
  const SliceChart w = deformed_chart(d, base);
  EXPECT_EQ(w.slice().name(), d.k().name());
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = draw_chart_point(w, rng);
    for (int i = 0; i < 2; ++i) {
      const Eigen::VectorXd fd = oracle::curve_transport([&](double t) {
        Eigen::VectorXd xt = x;
        xt(i) += t;
        return w.point(xt).y().coords();
      });
      EXPECT_LE(oracle::rel_diff(fd, w.tangent(x, i).coords()), 1e-6);
    }
  }
}

TEST(DrawChartPoint, ExhaustionIsReported) {
  Engine rng(36);
  const SliceChart chart = ds_graph_chart(2, 1.0);
  EXPECT_THROW(draw_chart_point(chart, rng, [](const Eigen::VectorXd&) { return false; }), DomainExhausted);
}
