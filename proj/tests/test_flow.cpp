#include <gtest/gtest.h>

#include <numbers>

#include "kahlerlab/error.hpp"
#include "kahlerlab/functionals.hpp"
#include "kahlerlab/sampling.hpp"
#include "test_util.hpp"

using namespace kl;

namespace {

HiggsInstance abelian_start(const ChartPtr& c) {
  const ScalarField f = ScalarField::from_function(c, [](const std::vector<double>& x) {
    return 0.3 * std::cos(2.0 * std::numbers::pi * x[0]);
  });
  MatrixField k(c, 1);
  for (std::size_t i = 0; i < c->points(); ++i) k.at(i)[0] = std::exp(-f[i].real());
  return HiggsInstance(MetricField(k), EndForm(c, 1, 1, 0));
}

void expect_monotone(const FunctionalReport& r) {
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i].value, r.trace[i - 1].value);
}

}  // namespace

TEST(Flow, AbelianScenarioReachesFlatMetric) {
  const ChartPtr c = make_chart(1, 16);
  FlowOptions opt;
  opt.steps = 500;
  opt.step_size = 0.01;
  opt.seed = 1;
  const FlowResult res = flow_minimize(abelian_start(c), opt);
  EXPECT_LT(res.report.value("final_value"), 1e-8);
  EXPECT_EQ(res.report.status, "converged");
  EXPECT_LE(res.accepted_steps, 500);
  EXPECT_EQ(res.report.trace.size(), static_cast<std::size_t>(res.accepted_steps) + 1);
  EXPECT_GE(res.report.value("min_probe_value"), res.report.value("final_value"));
  expect_monotone(res.report);
  EXPECT_NEAR(sw_value(res.final_instance), res.report.value("final_value"), 1e-14);
}

TEST(Flow, KobayashiTargetDecreases) {
  const ChartPtr c = make_chart(1, 16);
  FlowOptions opt;
  opt.target = FlowTarget::J;
  opt.steps = 20;
  opt.step_size = 0.01;
  const FlowResult res = flow_minimize(abelian_start(c), opt);
  EXPECT_LT(res.report.value("final_value"), res.report.value("initial_value"));
  expect_monotone(res.report);
}

TEST(Flow, SolutionDoesNotMove) {
  const ChartPtr c = make_chart(1, 8);
  const HiggsInstance sol(MetricField::identity(c, 2), random_normal_higgs(c, 2, 3));
  EXPECT_LE(sw_value(sol), 1e-12);
  FlowOptions opt;
  opt.steps = 10;
  const FlowResult res = flow_minimize(sol, opt);
  EXPECT_EQ(res.accepted_steps, 0);
  EXPECT_EQ(res.report.trace.size(), 1u);
  EXPECT_EQ((res.final_instance.metric().matrix() - sol.metric().matrix()).max_abs(), 0.0);
}

TEST(Flow, ZeroStepsEchoesInitialValues) {
  const ChartPtr c = make_chart(1, 8);
  FlowOptions opt;
  opt.steps = 0;
  const HiggsInstance inst = abelian_start(c);
  const FlowResult res = flow_minimize(inst, opt);
  ASSERT_EQ(res.report.trace.size(), 1u);
  EXPECT_EQ(res.report.value("initial_value"), res.report.value("final_value"));
  EXPECT_NEAR(res.report.trace[0].value, sw_value(inst), 1e-12 * sw_value(inst));
  EXPECT_EQ(res.report.status, "max_steps");
}

TEST(Flow, NonAbelianMonotone) {
  const ChartPtr c = make_chart(1, 8);
  FlowOptions opt;
  opt.steps = 5;
  opt.step_size = 0.01;
  const FlowResult res = flow_minimize(random_instance(c, 2, 4), opt);
  expect_monotone(res.report);
  EXPECT_GT(res.accepted_steps, 0);
}

TEST(Flow, Deterministic) {
  const ChartPtr c = make_chart(1, 8);
  FlowOptions opt;
  opt.steps = 5;
  opt.step_size = 0.01;
  opt.seed = 9;
  const FlowResult a = flow_minimize(abelian_start(c), opt);
  const FlowResult b = flow_minimize(abelian_start(c), opt);
  ASSERT_EQ(a.report.trace.size(), b.report.trace.size());
  for (std::size_t i = 0; i < a.report.trace.size(); ++i) EXPECT_EQ(a.report.trace[i].value, b.report.trace[i].value);
  EXPECT_EQ(a.report.value("min_probe_value"), b.report.value("min_probe_value"));
}

TEST(Flow, InvalidOptions) {
  const ChartPtr c = make_chart(1, 8);
  FlowOptions opt;
  opt.step_size = 0.0;
  EXPECT_THROW(flow_minimize(abelian_start(c), opt), InvalidArgument);
  opt.step_size = 0.1;
  opt.steps = -1;
  EXPECT_THROW(flow_minimize(abelian_start(c), opt), InvalidArgument);
}
