#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "loewner/scalar_function.hpp"

using loewner::FunctionClass;
using loewner::FunctionDescriptor;

namespace {

std::vector<FunctionDescriptor> log_convex_registry() {
  std::vector<FunctionDescriptor> out;
  for (auto& f : loewner::function_registry())
    if (f.has(FunctionClass::LogConvex)) out.push_back(f);
  return out;
}

std::vector<FunctionDescriptor> superquadratic_powers() {
  return {loewner::parse_function_spec("pow:p=2"), loewner::parse_function_spec("pow:p=3"),
          loewner::parse_function_spec("pow:p=2.5")};
}

// A point of f's domain drawn from a window that keeps exp(2t) moderate.
double draw_point(const FunctionDescriptor& f, loewner::Rng& rng) {
  const auto& d = f.domain();
  if (std::isfinite(d.lo)) return d.lo + rng.uniform(0.05, 5.0);
  return rng.uniform(-3.0, 3.0);
}

}  // namespace

TEST(FunctionSpec, ParsesEveryForm) {
  EXPECT_EQ(loewner::parse_function_spec("exp").id(), "exp");
  EXPECT_DOUBLE_EQ(loewner::parse_function_spec("exp:a=2")(1.0), std::exp(2.0));
  EXPECT_DOUBLE_EQ(loewner::parse_function_spec("recip")(4.0), 0.25);
  EXPECT_DOUBLE_EQ(loewner::parse_function_spec("pow:p=2.5")(4.0), 32.0);
  EXPECT_DOUBLE_EQ(loewner::parse_function_spec("const:c=-1.5")(7.0), -1.5);
  EXPECT_EQ(loewner::parse_function_spec("recip").params().at("p"), -1.0);
}

TEST(FunctionSpec, RejectsUnknownOrMalformed) {
  for (const char* bad : {"", "sin", "exp:", "exp:b=1", "pow:p=", "pow:p=1x", "pow:p=nan", "EXP"}) {
    EXPECT_THROW(loewner::parse_function_spec(bad), loewner::ParseError) << bad;
  }
}

TEST(FunctionSpec, PowerDomainsAndZero) {
  const auto recip = loewner::power_function(-1);
  EXPECT_FALSE(recip.domain().contains(0.0));
  EXPECT_THROW(recip(0.0), loewner::DomainViolation);
  EXPECT_EQ(loewner::power_function(2.5)(0.0), 0.0);
  EXPECT_TRUE(recip.has(FunctionClass::LogConvex));
  EXPECT_TRUE(loewner::power_function(2).has(FunctionClass::Superquadratic));
  EXPECT_FALSE(loewner::power_function(1.5).has(FunctionClass::Superquadratic));
}

TEST(FunctionSpec, ApplyScalarFunctionChecksDomain) {
  EXPECT_THROW(loewner::apply_scalar_function(loewner::Hermitian::diagonal({1, -1}),
                                              loewner::parse_function_spec("recip")),
               loewner::DomainViolation);
}

TEST(KfConstant, Examples) {
  const auto e = loewner::exp_function();
  EXPECT_DOUBLE_EQ(loewner::kf_constant(e, -0.3, 2.2).value, 1.0);
  EXPECT_NEAR(loewner::kf_constant(loewner::power_function(-1), 1, 4).value, 0.64, 1e-15);
  const double m = 1, big_m = 4, p = -1;
  const double closed = std::pow((m + big_m) / (2 * std::sqrt(m * big_m)), 2 * p);
  EXPECT_NEAR(closed, 0.64, 1e-15);
  EXPECT_TRUE(loewner::kf_constant(loewner::power_function(3), 1, 2).class_warning);
}

TEST(KfConstant, ZeroDenominator) {
  EXPECT_THROW(loewner::kf_constant(loewner::power_function(2), 0, 1), loewner::DivisionByZero);
}

TEST(RAlpha, Examples) {
  EXPECT_EQ(loewner::r_alpha(0.5), 0.5);
  EXPECT_DOUBLE_EQ(loewner::r_alpha(0.3), 0.3);
  EXPECT_DOUBLE_EQ(loewner::r_alpha(0.7), 0.3);
  EXPECT_EQ(loewner::r_alpha(2), -1);
}

TEST(TildeT, Examples) {
  EXPECT_EQ(loewner::tilde_t(1, 1, 3), 0);
  EXPECT_EQ(loewner::tilde_t(3, 1, 3), 0);
  EXPECT_EQ(loewner::tilde_t(2, 1, 3), 0.5);
  EXPECT_EQ(loewner::tilde_t(0.25, 0, 1), 0.25);
  EXPECT_THROW(loewner::tilde_t(1, 2, 2), loewner::DegenerateInterval);
}

TEST(LogConvexChain, ExpAtQuarter) {
  const auto r = loewner::check_logconvex_chain(loewner::exp_function(), 0, 1, 0.25, 1e-12);
  EXPECT_NEAR(r.values[0], 2.11700, 1e-5);
  EXPECT_NEAR(r.values[1], std::exp(0.75), 1e-14);
  EXPECT_NEAR(r.values[2], 0.25 + 0.75 * std::numbers::e, 1e-14);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.equality[0]);
  EXPECT_FALSE(r.equality[1]);
}

TEST(LogConvexChain, ReciprocalMidpointEquality) {
  const auto r = loewner::check_logconvex_chain(loewner::power_function(-1), 1, 4, 0.5, 1e-12);
  EXPECT_NEAR(r.values[0], 0.4, 1e-15);
  EXPECT_NEAR(r.values[1], 0.4, 1e-15);
  EXPECT_NEAR(r.values[2], 0.625, 1e-15);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.equality[0]);
}

TEST(LogConvexChain, ReversedOutsideUnitInterval) {
  const auto r = loewner::check_logconvex_chain(loewner::exp_function(), 0, 1, 2, 1e-12);
  EXPECT_TRUE(r.reversed);
  EXPECT_NEAR(r.values[0], std::exp(-1.0), 1e-15);
  EXPECT_NEAR(r.values[1], std::exp(-1.0), 1e-15);
  EXPECT_NEAR(r.values[2], 2 - std::numbers::e, 1e-15);
  EXPECT_TRUE(r.pass());
}

TEST(LogConvexChain, OutOfDomainPoint) {
  // 2 * 1 + (1 - 2) * 4 = -2 lies outside (0, inf).
  EXPECT_THROW(loewner::check_logconvex_chain(loewner::power_function(-1), 1, 4, 2, 1e-12),
               loewner::DomainViolation);
}

TEST(Characterization, Examples) {
  const auto sq = loewner::check_superquadratic_characterization(loewner::power_function(2), 1, 3, 0.5, 1e-12);
  EXPECT_EQ(sq.lhs, 4);
  EXPECT_EQ(sq.rhs, 4);
  EXPECT_TRUE(sq.pass);

  const auto cube =
      loewner::check_superquadratic_characterization(loewner::power_function(3), 0, 1, 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(cube.lhs, 0.125);
  EXPECT_DOUBLE_EQ(cube.rhs, 0.375);
  EXPECT_DOUBLE_EQ(cube.slack, 0.25);

  const auto c = loewner::check_superquadratic_characterization(loewner::constant_function(-1.5), 0.7, 2.9,
                                                                0.2, 1e-12);
  EXPECT_DOUBLE_EQ(c.lhs, -1.5);
  EXPECT_NEAR(c.rhs, 0.0, 1e-15);
  EXPECT_NEAR(c.slack, 1.5, 1e-15);
}

TEST(Definition, Examples) {
  std::vector<double> half_grid, unit_grid;
  for (int i = 0; i <= 10; ++i) half_grid.push_back(0.5 * i);
  for (int i = 0; i <= 5; ++i) unit_grid.push_back(i);

  const auto sq = loewner::check_superquadratic_definition(loewner::power_function(2), 1, half_grid, 1e-9);
  EXPECT_NEAR(sq.c_s, 2.0, 1e-8);
  EXPECT_NEAR(sq.worst_slack, 0.0, 1e-8);
  EXPECT_TRUE(sq.pass);

  EXPECT_TRUE(loewner::check_superquadratic_definition(loewner::power_function(3), 1, unit_grid, 1e-9).pass);

  const auto e = loewner::check_superquadratic_definition(loewner::exp_function(), 1, unit_grid, 1e-9);
  EXPECT_FALSE(e.pass);
  EXPECT_LT(e.worst_slack, 0);
}

// --- properties ---------------------------------------------------------------

TEST(ScalarProperties, LogConvexChainOnAlphaGrid) {
  for (const auto& f : log_convex_registry()) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto rng = gen::case_rng(201, i);
      const double x = draw_point(f, rng), y = draw_point(f, rng);
      for (int k = 0; k <= 100; ++k) {
        const auto r = loewner::check_logconvex_chain(f, x, y, 0.01 * k, 1e-12);
        const double scale = std::max({1.0, r.values[0], r.values[2]});
        EXPECT_GE(r.slack[0], -1e-12 * scale) << f.id() << " case " << i << " k " << k;
        EXPECT_GE(r.slack[1], -1e-12 * scale) << f.id() << " case " << i << " k " << k;
      }
    }
  }
}

TEST(ScalarProperties, KfAtMostOne) {
  for (const auto& f : log_convex_registry()) {
    for (std::uint64_t i = 0; i < 500; ++i) {
      auto rng = gen::case_rng(202, i);
      EXPECT_LE(loewner::kf_constant(f, draw_point(f, rng), draw_point(f, rng)).value, 1 + 1e-12) << f.id();
    }
  }
}

TEST(ScalarProperties, RSymmetryAndTildeIdentity) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = gen::case_rng(203, i);
    const double a = rng.uniform(-3, 3);
    EXPECT_NEAR(loewner::r_alpha(a), loewner::r_alpha(1 - a), 1e-15);
    const double m = rng.uniform(-2, 2), big_m = m + rng.uniform(0.1, 3), t = rng.uniform(m - 1, big_m + 1);
    EXPECT_NEAR(loewner::tilde_t(t, m, big_m), loewner::r_alpha((big_m - t) / (big_m - m)), 1e-14);
  }
}

TEST(ScalarProperties, CharacterizationSlackNonnegative) {
  for (const auto& f : superquadratic_powers()) {
    for (std::uint64_t i = 0; i < 2000; ++i) {
      auto rng = gen::case_rng(204, i);
      const double x = rng.uniform(0, 5), y = rng.uniform(0, 5), a = rng.uniform();
      const auto r = loewner::check_superquadratic_characterization(f, x, y, a, 1e-12);
      EXPECT_GE(r.slack, -1e-12 * std::max(1.0, std::abs(r.rhs))) << f.id() << " case " << i;
    }
  }
}

TEST(ScalarProperties, ReversedChainOutsideUnitInterval) {
  for (const auto& f : log_convex_registry()) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto rng = gen::case_rng(205, i);
      const double x = draw_point(f, rng), y = draw_point(f, rng);
      for (double a : {-1.0, -0.5, 1.5, 2.0}) {
        if (!f.domain().contains(a * x + (1 - a) * y)) continue;
        const auto r = loewner::check_logconvex_chain(f, x, y, a, 1e-12);
        ASSERT_TRUE(r.reversed);
        const double scale = std::max({1.0, std::abs(r.values[0]), std::abs(r.values[2])});
        EXPECT_GE(r.slack[0], -1e-12 * scale) << f.id() << " alpha " << a << " case " << i;
        EXPECT_GE(r.slack[1], -1e-12 * scale) << f.id() << " alpha " << a << " case " << i;
      }
    }
  }
}

TEST(ScalarProperties, NonnegativeSuperquadraticIsConvex) {
  for (const auto& f : {loewner::power_function(2), loewner::power_function(3)}) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto rng = gen::case_rng(206, i);
      const double x = rng.uniform(0, 5), y = rng.uniform(0, 5), a = rng.uniform();
      const double lhs = f(a * x + (1 - a) * y), rhs = a * f(x) + (1 - a) * f(y);
      EXPECT_LE(lhs, rhs + 1e-12 * std::max(1.0, rhs)) << f.id() << " case " << i;
    }
  }
}
