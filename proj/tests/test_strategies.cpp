// Copyright 2026 The RoboEnergy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/error.hpp"
#include "roboenergy/fixtures.hpp"
#include "roboenergy/kinematics.hpp"
#include "roboenergy/power.hpp"
#include "roboenergy/strategies.hpp"
#include "support/oracles.hpp"

namespace {

using namespace roboenergy;

JointVector one(double x) {
  JointVector q(1);
  q[0] = x;
  return q;
}

struct Ur10 : ::testing::Test {
  static void SetUpTestSuite() {
    model = new RobotModel(oracle::shipped("ur10e_like"));
    fx = new Fixtures(load_fixtures(fixtures_path_for(*model)));
  }
  static void TearDownTestSuite() {
    delete model;
    delete fx;
  }
  static RobotModel* model;
  static Fixtures* fx;
};
RobotModel* Ur10::model = nullptr;
Fixtures* Ur10::fx = nullptr;

// ---- standby ---------------------------------------------------------------

TEST(Standby, PendulumGlobalOptimum) {
  const RobotModel p = oracle::pendulum(1.0, 1.0, 10.0, 1.0, 50.0);
  const StandbyResult r = optimal_standby(p, {}, one(M_PI / 2));
  EXPECT_NEAR(r.q_star[0], 0.0, 1e-4);
  EXPECT_NEAR(r.power_star, 50.0, 1e-9);
  EXPECT_NEAR(r.baseline_power, 50.0 + 0.981 * 0.981, 1e-12);
  EXPECT_GT(r.saving_fraction, 0.0);
}

TEST(Standby, TwoLinkMatchesGrid) {
  oracle::TwoLink tl;
  const RobotModel m = oracle::two_link(tl, 30.0);
  const int n = 721;
  const double step = 2 * M_PI / (n - 1);
  double best_p = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, Eigen::Vector2d>> grid;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2d q(-M_PI + i * step, -M_PI + j * step);
      const double p = standby_power(m, q);
      grid.emplace_back(p, q);
      best_p = std::min(best_p, p);
    }
  }
  // Ties on power go to the lower potential energy (closed form).
  const auto height = [&](const Eigen::Vector2d& q) {
    return -(tl.m1 * tl.lc1 * (tl.g.x() * std::cos(q[0]) + tl.g.y() * std::sin(q[0])) +
             tl.m2 * (tl.g.x() * (tl.l1 * std::cos(q[0]) + tl.lc2 * std::cos(q[0] + q[1])) +
                      tl.g.y() * (tl.l1 * std::sin(q[0]) + tl.lc2 * std::sin(q[0] + q[1]))));
  };
  Eigen::Vector2d arg;
  double best_u = std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : grid) {
    if (p <= best_p * (1 + 1e-9) && height(q) < best_u) {
      best_u = height(q);
      arg = q;
    }
  }
  const StandbyResult r = optimal_standby(m, {}, Eigen::Vector2d(0.4, 1.1));
  EXPECT_LE(std::abs(r.q_star[0] - arg[0]), step);
  EXPECT_LE(std::abs(r.q_star[1] - arg[1]), step);
  EXPECT_LE(r.power_star, best_p + 1e-9);
}

TEST_F(Ur10, StandbyDominatesMonteCarlo) {
  const StandbyResult r = optimal_standby(*model, {}, fx->reference_standby);
  std::mt19937_64 rng(1234);
  double mc = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    mc = std::min(mc, standby_power(*model, oracle::random_in_box(*model, rng, -7.0, 7.0)));
  }
  EXPECT_LE(r.power_star, mc);
  EXPECT_NEAR(r.power_star, standby_power(*model, r.q_star), 1e-9);
  EXPECT_GT(r.saving_fraction, 0.0);
  EXPECT_LT(r.saving_fraction, 1.0);
  EXPECT_NEAR(r.saving_fraction, 1.0 - r.power_star / r.baseline_power, 1e-15);
}

TEST_F(Ur10, StandbyDeterministicPerSeed) {
  StandbyOptions o;
  o.seed = 99;
  const StandbyResult a = optimal_standby(*model, {}, fx->reference_standby, {}, o);
  const StandbyResult b = optimal_standby(*model, {}, fx->reference_standby, {}, o);
  EXPECT_EQ(a.q_star, b.q_star);
  EXPECT_EQ(a.power_star, b.power_star);
}

TEST_F(Ur10, StandbyFixedTcp) {
  Payload payload;
  payload.mass = 5.0;
  const StandbyConstraint c = StandbyConstraint::fixed_tcp_position(0.005);
  const StandbyResult r = optimal_standby(*model, payload, fx->reference_standby, c);
  const Eigen::Vector3d p0 = forward_kinematics(*model, fx->reference_standby).position;
  EXPECT_LE((forward_kinematics(*model, r.q_star).position - p0).norm(), 0.005 + 1e-12);
  EXPECT_LE(r.power_star, r.baseline_power);
  EXPECT_NEAR(r.power_star, standby_power(*model, r.q_star, payload), 1e-9);
}

TEST(Standby, SeedOutsideLimits) {
  const RobotModel p = oracle::pendulum(1.0, 1.0, 10.0, 1.0, 50.0);
  try {
    optimal_standby(p, {}, one(5.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLimitViolation);
  }
}

// ---- command selection ---------------------------------------------------------

TEST_F(Ur10, CommandNullMoveTies) {
  const CommandComparison c =
      select_command(*model, fx->reference_standby, fx->reference_standby, {}, {});
  EXPECT_EQ(c.e_movej, c.e_movel);
  EXPECT_NEAR(c.e_movej, standby_power(*model, fx->reference_standby) * kDefaultDt, 1e-9);
  EXPECT_EQ(c.recommended, CommandKind::kMoveJoint);
}

TEST_F(Ur10, CommandFixturePairPrefersJointMove) {
  for (double mass : fx->command_pair.payloads) {
    Payload payload;
    payload.mass = mass;
    const CommandComparison c = select_command(*model, fx->command_pair.q_start,
                                               fx->command_pair.q_end, payload,
                                               fx->command_pair.limits);
    EXPECT_LT(c.e_movej, c.e_movel) << mass;
    EXPECT_EQ(c.recommended, CommandKind::kMoveJoint);
    EXPECT_GT(c.saving_fraction, 0.0);
  }
}

TEST_F(Ur10, CommandRecommendsArgmin) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  int feasible = 0;
  for (int attempt = 0; attempt < 400 && feasible < 20; ++attempt) {
    JointVector a = fx->command_pair.q_start, b = fx->command_pair.q_end;
    for (int i = 0; i < 6; ++i) {
      a[i] += off(rng);
      b[i] += off(rng);
    }
    CommandComparison c;
    try {
      c = select_command(*model, a, b, {}, fx->command_pair.limits);
    } catch (const Error&) {
      continue;
    }
    if (c.movej_error || c.movel_error) {
      EXPECT_EQ(c.recommended,
                c.movej_error ? CommandKind::kMoveLinear : CommandKind::kMoveJoint);
      continue;
    }
    ++feasible;
    const CommandKind expect =
        c.e_movel < c.e_movej ? CommandKind::kMoveLinear : CommandKind::kMoveJoint;
    EXPECT_EQ(c.recommended, expect);
    const double hi = std::max(c.e_movej, c.e_movel), lo = std::min(c.e_movej, c.e_movel);
    EXPECT_NEAR(c.saving_fraction, (hi - lo) / hi, 1e-15);
  }
  EXPECT_EQ(feasible, 20);
}

TEST_F(Ur10, CommandBothBranchesFail) {
  JointVector far = fx->reference_standby;
  far[0] = 100.0;
  try {
    select_command(*model, far, fx->reference_standby, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFeasiblePlan);
  }
}

// ---- motion time ---------------------------------------------------------------

struct Rotor {
  double j = 0.5, kt = 1.0, r = 1.0, p0 = 20.0;
  double dist = 1.0, v = 1.0, a = 2.0;
  RobotModel model() const { return oracle::inertia_joint(j, kt, r, p0); }
  // Copper energy of the base profile is c / T^3 with
  // c = (j/kt)^2 r * integral(qdd^2) * T^3.
  double c() const {
    const double t = oracle::trapezoid_duration(dist, v, a);
    const double t_acc = v / a;
    return (j / kt) * (j / kt) * r * (2 * a * a * t_acc) * t * t * t;
  }
};

TEST(MotionTime, CurveBookkeeping) {
  const Rotor rt;
  const RobotModel m = rt.model();
  const Trajectory base = plan_movej(m, one(0.0), one(rt.dist), rt.v, rt.a);
  const CharacteristicCurve c = characteristic_curve(m, base, {}, 1.0, 4.0, 3);
  ASSERT_EQ(c.points.size(), 3u);
  const double ks[] = {1.0, 2.0, 4.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(c.points[i].k, ks[i], 1e-12);
    EXPECT_NEAR(c.points[i].duration, ks[i] * base.duration(), 1e-9);
    EXPECT_NEAR(c.points[i].e_grid, simulate_energy(m, time_scale(base, ks[i])).e_grid, 1e-9);
  }
}

TEST(MotionTime, RotorCurveShape) {
  const Rotor rt;
  const RobotModel m = rt.model();
  const Trajectory base = plan_movej(m, one(0.0), one(rt.dist), rt.v, rt.a);
  ASSERT_NEAR(base.duration(), oracle::trapezoid_duration(rt.dist, rt.v, rt.a), 1e-12);
  const CharacteristicCurve c = characteristic_curve(m, base, {}, 0.4, 3.0, 25);
  // Least squares for c_fit in e - p0 T = c_fit / T^3.
  double num = 0, den = 0;
  for (const CurvePoint& p : c.points) {
    const double x = 1.0 / std::pow(p.duration, 3);
    num += x * (p.e_grid - rt.p0 * p.duration);
    den += x * x;
  }
  EXPECT_NEAR(num / den, rt.c(), 0.02 * rt.c());
}

TEST(MotionTime, RotorClosedFormOptimum) {
  const Rotor rt;
  const RobotModel m = rt.model();
  const Trajectory base = plan_movej(m, one(0.0), one(rt.dist), rt.v, rt.a);
  const MotionTimeResult r = optimal_motion_time(m, base, {}, 0.2, 3.0);
  const double t_star = std::pow(3 * rt.c() / rt.p0, 0.25);
  EXPECT_NEAR(r.k_star * base.duration(), t_star, 0.005 * t_star);
  for (const CurvePoint& p : r.curve.points) EXPECT_LE(r.e_star, p.e_grid);
  EXPECT_EQ(r.curve.points.size(), 33u);
}

TEST_F(Ur10, MotionTimeInteriorMinimum) {
  const MotionTimeFixture& mt = fx->motion_time;
  const Trajectory base = plan(*model, mt.move);
  const MotionTimeResult r = optimal_motion_time(*model, base, mt.move.payload, mt.k_min, mt.k_max);
  const double e_lo = scaled_energy(*model, base, mt.move.payload, mt.k_min);
  const double e_hi = scaled_energy(*model, base, mt.move.payload, mt.k_max);
  EXPECT_LT(r.e_star, e_lo);
  EXPECT_LT(r.e_star, e_hi);
  EXPECT_GT(r.k_star, mt.k_min);
  EXPECT_LT(r.k_star, mt.k_max);
  EXPECT_NEAR(r.e_star, scaled_energy(*model, base, mt.move.payload, r.k_star), 1e-9);

  // Coarser brute-force grid than the acceptance run.
  const int n = 600;
  double best = std::numeric_limits<double>::infinity(), arg = 0;
  for (int i = 0; i < n; ++i) {
    const double k = mt.k_min + (mt.k_max - mt.k_min) * i / (n - 1);
    const double e = scaled_energy(*model, base, mt.move.payload, k);
    if (e < best) {
      best = e;
      arg = k;
    }
  }
  EXPECT_LE(std::abs(r.k_star - arg), (mt.k_max - mt.k_min) / (n - 1));
  EXPECT_LE(r.e_star, best + 1e-9);
}

TEST_F(Ur10, MotionTimeExcludesInfeasibleScales) {
  const Trajectory base = plan(*model, fx->descent);
  const CharacteristicCurve c = characteristic_curve(*model, base, fx->descent.payload, 0.3, 2.0, 9);
  EXPECT_FALSE(c.excluded.empty());
  EXPECT_FALSE(c.points.empty());
  for (std::size_t i = 1; i < c.points.size(); ++i) EXPECT_GT(c.points[i].k, c.points[i - 1].k);
  try {
    characteristic_curve(*model, base, fx->descent.payload, 0.05, 0.1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCurve);
  }
}

// ---- saturation ------------------------------------------------------------------

bool on_joint_line(const Trajectory& out, const JointVector& a, const JointVector& b) {
  const JointVector d = b - a;
  int k = 0;
  d.cwiseAbs().maxCoeff(&k);
  for (const auto& s : out.samples) {
    const double u = (s.q[k] - a[k]) / d[k];
    if ((a + u * d - s.q).cwiseAbs().maxCoeff() > 1e-9) return false;
    if (u < -1e-9 || u > 1 + 1e-9) return false;
  }
  return true;
}

TEST_F(Ur10, SaturatorIdentityWithoutRegen) {
  const Trajectory t = plan(*model, PlannedMove{fx->moves[0].q_start, fx->moves[0].q_end, 1.0, 1.4, {}});
  const SaturationResult r = saturate_power(*model, t, {});
  EXPECT_EQ(r.iterations, 0);
  ASSERT_EQ(r.traj_out.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(r.traj_out.samples[i].q, t.samples[i].q);
  EXPECT_EQ(r.e_grid_after, r.e_grid_before);
}

TEST_F(Ur10, SaturatorDescentFixture) {
  const Trajectory t = plan(*model, fx->descent);
  const SaturationResult r = saturate_power(*model, t, fx->descent.payload);
  EXPECT_GT(r.e_dissipated_before, 0.0);
  EXPECT_EQ(r.e_dissipated_after, 0.0);
  EXPECT_LT(r.e_grid_after, r.e_grid_before);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.traj_out.front().q, t.front().q);
  EXPECT_EQ(r.traj_out.back().q, t.back().q);
  EXPECT_TRUE(on_joint_line(r.traj_out, fx->descent.q_start, fx->descent.q_end));
  const EnergyReport e = simulate_energy(*model, r.traj_out, fx->descent.payload);
  EXPECT_NEAR(e.e_grid, r.e_grid_after, 1e-9);
  EXPECT_TRUE(validate_limits(*model, r.traj_out).empty());
}

TEST_F(Ur10, SaturatorVerticalDescentStopsDissipation) {
  const Trajectory t = plan(*model, fx->vertical_descent);
  const SaturationResult r = saturate_power(*model, t, fx->vertical_descent.payload);
  EXPECT_GT(r.e_dissipated_before, 0.0);
  EXPECT_EQ(r.e_dissipated_after, 0.0);
  EXPECT_LE((r.traj_out.back().q - t.back().q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(Ur10, SaturatorRandomFixtures) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 20; ++k) {
    const PlannedMove mv = oracle::random_move(*model, *fx, rng);
    const Trajectory t = plan(*model, mv);
    const SaturationResult r = saturate_power(*model, t, mv.payload);
    EXPECT_LE(r.e_dissipated_after, r.e_dissipated_before) << k;
    EXPECT_EQ(r.traj_out.front().q, t.front().q);
    EXPECT_EQ(r.traj_out.back().q, t.back().q);
    EXPECT_TRUE(r.traj_out.back().qd.isZero(0.0));
    EXPECT_TRUE(on_joint_line(r.traj_out, mv.q_start, mv.q_end)) << k;
  }
}

TEST(Warp, UnitSigmaIsIdentity) {
  const RobotModel m = oracle::inertia_joint(0.1, 1.0, 1.0, 0.0);
  const Trajectory t = plan_movej(m, one(0.0), one(1.0), 1.0, 2.0);
  const Trajectory w = warp_trajectory(t, std::vector<double>(t.size(), 1.0));
  ASSERT_EQ(w.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(w.samples[i].q[0], t.samples[i].q[0], 1e-12);
    EXPECT_NEAR(w.samples[i].qd[0], t.samples[i].qd[0], 1e-9);
  }
}

TEST(Warp, UniformSlowdownMatchesTimeScale) {
  const RobotModel m = oracle::inertia_joint(0.1, 1.0, 1.0, 0.0);
  const Trajectory t = plan_movej(m, one(0.0), one(1.0), 1.0, 2.0);
  const Trajectory w = warp_trajectory(t, std::vector<double>(t.size(), 2.0));
  EXPECT_NEAR(w.duration(), 2.0 * t.duration(), 1e-9);
  double peak = 0;
  for (const auto& s : w.samples) peak = std::max(peak, s.qd[0]);
  EXPECT_NEAR(peak, 0.5, 1e-3);
  EXPECT_THROW(warp_trajectory(t, std::vector<double>(t.size(), 0.5)), Error);
}

}  // namespace
