// Copyright 2026 The geogaze Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "geogaze/error.hpp"
#include "geogaze/metrics.hpp"
#include "geogaze/synth.hpp"
#include "oracle.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

namespace geogaze {
namespace {

using testing_support::rel_diff;

const ScreenGeometry kPanel{1920, 1080, 34.4, 19.35, 60.0};

template <typename F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::kInvalidArgument;
}

double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

TEST(RSquared, PerfectPredictionIsOne) {
  const std::vector<double> t{1, 5, 2, 8};
  EXPECT_EQ(r_squared(t, t), 1.0);
}

TEST(RSquared, MeanPredictionIsZero) {
  const std::vector<double> t{1, 5, 2, 8};
  const std::vector<double> p(4, 4.0);
  EXPECT_NEAR(r_squared(p, t), 0.0, 1e-15);
}

TEST(RSquared, DirectArithmetic) {
  const std::vector<double> t{0, 1, 2, 3};
  const std::vector<double> p{0.1, 0.9, 2.1, 2.9};
  EXPECT_NEAR(r_squared(p, t), 0.992, 1e-12);
}

TEST(RSquared, CanBeNegative) {
  const std::vector<double> t{0, 1, 2, 3};
  const std::vector<double> p{3, 2, 1, 0};
  EXPECT_LT(r_squared(p, t), 0.0);
}

TEST(RSquared, Errors) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{1, 2};
  const std::vector<double> one{1};
  const std::vector<double> flat{2, 2, 2};
  EXPECT_EQ(error_of([&] { r_squared(a, b); }), Errc::kLengthMismatch);
  EXPECT_EQ(error_of([&] { r_squared(one, one); }), Errc::kLengthMismatch);
  EXPECT_EQ(error_of([&] { r_squared(a, flat); }), Errc::kZeroVariance);
}

TEST(RSquared, MatchesLongDoubleReference) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g(500.0, 200.0);
  std::normal_distribution<double> e(0.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> t, p;
    for (int i = 0; i < 20 + trial; ++i) {
      t.push_back(g(rng));
      p.push_back(t.back() + e(rng));
    }
    EXPECT_NEAR(r_squared(p, t), oracle::r2(p, t), 1e-13);
  }
}

TEST(PixelToCm, Conversions) {
  EXPECT_NEAR(pixel_to_cm(100.0, Axis::kX, kPanel), 1.7916666666666667, 1e-15);
  EXPECT_NEAR(pixel_to_cm(100.0, Axis::kX, kPanel), 1.7917, 1e-4);
  EXPECT_EQ(pixel_to_cm(0.0, Axis::kX, kPanel), 0.0);
  EXPECT_EQ(pixel_to_cm(200.0, Axis::kY, kPanel), 2.0 * pixel_to_cm(100.0, Axis::kY, kPanel));
  EXPECT_NEAR(pixel_to_cm(1080.0, Axis::kY, kPanel), 19.35, 1e-13);
}

TEST(CmToDeg, Conversions) {
  EXPECT_NEAR(cm_to_deg(60.0, kPanel), 45.0, 1e-13);
  EXPECT_EQ(cm_to_deg(0.0, kPanel), 0.0);
  EXPECT_EQ(cm_to_deg(1.0, 60.0), deg(std::atan(1.0 / 60.0)));
}

TEST(CmToDeg, ReproducesPublishedPairAtDerivedDistance) {
  // 1.04 cm reported as 1.450 deg.
  EXPECT_NEAR(cm_to_deg(1.04, 41.1), 1.450, 0.01);
  EXPECT_NEAR(cm_to_deg(1.04, frozen::kPublishedPairDistanceCm), 1.450, 1e-12);
}

TEST(CheckScreenGeometry, RejectsNonPositiveOrNonFinite) {
  EXPECT_NO_THROW(check_screen_geometry(kPanel));
  for (int field = 0; field < 5; ++field) {
    for (double bad : {0.0, -1.0, std::nan("")}) {
      ScreenGeometry g = kPanel;
      switch (field) {
        case 0: g.width_px = static_cast<int>(std::isnan(bad) ? 0 : bad); break;
        case 1: g.height_px = static_cast<int>(std::isnan(bad) ? 0 : bad); break;
        case 2: g.width_cm = bad; break;
        case 3: g.height_cm = bad; break;
        default: g.view_distance_cm = bad; break;
      }
      EXPECT_EQ(error_of([&] { check_screen_geometry(g); }), Errc::kInvalidArgument);
    }
  }
}

TEST(StableSum, IsOrderInvariant) {
  std::mt19937_64 rng(42);
  std::lognormal_distribution<double> g(0.0, 4.0);
  std::vector<double> v;
  for (int i = 0; i < 500; ++i) v.push_back(g(rng) * (i % 2 ? 1 : -1));
  const double a = stable_sum(v);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(stable_sum(v), a);
  }
  std::reverse(v.begin(), v.end());
  EXPECT_EQ(stable_sum(v), a);
}

TEST(StandardError, DefinitionAndEdgeCases) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  // Sample variance 32/7.
  EXPECT_NEAR(standard_error(v), std::sqrt(32.0 / 7.0) / std::sqrt(8.0), 1e-15);
  EXPECT_NEAR(mean(v), 5.0, 1e-15);
  EXPECT_TRUE(std::isnan(standard_error(std::vector<double>{1.0})));
  EXPECT_EQ(standard_error(std::vector<double>(5, 3.0)), 0.0);
}

TEST(StandardError, MatchesLongDoubleReference) {
  std::mt19937_64 rng(43);
  std::exponential_distribution<double> g(0.1);
  std::vector<double> v;
  for (int i = 0; i < 77; ++i) v.push_back(g(rng));
  EXPECT_LE(rel_diff(standard_error(v), oracle::sem(v)), 1e-13);
  EXPECT_LE(rel_diff(mean(v), oracle::mean(v)), 1e-15);
}

std::vector<ScreenPoint> random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1920), v(0, 1080);
  std::vector<ScreenPoint> out;
  for (int i = 0; i < n; ++i) out.push_back({u(rng), v(rng)});
  return out;
}

TEST(EvaluatePredictions, PerfectPredictions) {
  std::mt19937_64 rng(44);
  const auto truth = random_points(rng, 20);
  const EvaluationReport r = evaluate_predictions(truth, truth, kPanel);
  EXPECT_EQ(r.x.r_squared, 1.0);
  EXPECT_EQ(r.y.r_squared, 1.0);
  EXPECT_EQ(r.x.mean_abs_error_px, 0.0);
  EXPECT_EQ(r.y.mean_angular_error_deg, 0.0);
  EXPECT_EQ(r.mean_euclidean_error_px, 0.0);
  EXPECT_EQ(r.sample_count, 20u);
  EXPECT_EQ(r.skipped_count, 0u);
}

TEST(EvaluatePredictions, ConstantPredictionAtTheMean) {
  std::mt19937_64 rng(45);
  const auto truth = random_points(rng, 30);
  double mu = 0, mv = 0;
  for (const auto& t : truth) {
    mu += t.u / 30;
    mv += t.v / 30;
  }
  const std::vector<ScreenPoint> pred(30, ScreenPoint{mu, mv});
  const EvaluationReport r = evaluate_predictions(pred, truth, kPanel);
  EXPECT_NEAR(r.x.r_squared, 0.0, 1e-12);
  EXPECT_NEAR(r.y.r_squared, 0.0, 1e-12);
}

TEST(EvaluatePredictions, ConstantTruthGivesNanRSquared) {
  const std::vector<ScreenPoint> truth(5, ScreenPoint{100, 100});
  std::vector<ScreenPoint> pred = truth;
  pred[0].u = 110;
  const EvaluationReport r = evaluate_predictions(pred, truth, kPanel);
  EXPECT_TRUE(std::isnan(r.x.r_squared));
  EXPECT_NEAR(r.x.mean_abs_error_px, 2.0, 1e-15);
}

TEST(EvaluatePredictions, MatchesBruteForceRecomputation) {
  std::mt19937_64 rng(46);
  std::normal_distribution<double> e(0.0, 40.0);
  const auto truth = random_points(rng, 40);
  auto pred = truth;
  for (auto& p : pred) {
    p.u += e(rng);
    p.v += e(rng);
  }
  const EvaluationReport r = evaluate_predictions(pred, truth, kPanel);
  std::vector<double> pu, tu, ex, ey, ecx, ecy, eu;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    pu.push_back(pred[i].u);
    tu.push_back(truth[i].u);
    ex.push_back(std::abs(pred[i].u - truth[i].u));
    ey.push_back(std::abs(pred[i].v - truth[i].v));
    ecx.push_back(ex.back() * 34.4 / 1920);
    ecy.push_back(ey.back() * 19.35 / 1080);
    eu.push_back(std::hypot(ex.back(), ey.back()));
  }
  EXPECT_NEAR(r.x.r_squared, oracle::r2(pu, tu), 1e-13);
  EXPECT_LE(rel_diff(r.x.mean_abs_error_px, oracle::mean(ex)), 1e-14);
  EXPECT_LE(rel_diff(r.y.mean_abs_error_px, oracle::mean(ey)), 1e-14);
  EXPECT_LE(rel_diff(r.x.sem_px, oracle::sem(ex)), 1e-13);
  EXPECT_LE(rel_diff(r.x.mean_abs_error_cm, oracle::mean(ecx)), 1e-13);
  EXPECT_LE(rel_diff(r.y.sem_cm, oracle::sem(ecy)), 1e-13);
  EXPECT_LE(rel_diff(r.y.mean_angular_error_deg, deg(std::atan(oracle::mean(ecy) / 60.0))),
            1e-13);
  EXPECT_LE(rel_diff(r.mean_euclidean_error_px, oracle::mean(eu)), 1e-14);
  EXPECT_LE(rel_diff(r.sem_euclidean_error_px, oracle::sem(eu)), 1e-13);
  EXPECT_EQ(r.view_distance_cm, 60.0);
}

TEST(EvaluatePredictions, EveryReportedPairIsConsistent) {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> e(0.0, 80.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto truth = random_points(rng, 10 + trial);
    auto pred = truth;
    for (auto& p : pred) {
      p.u += e(rng);
      p.v += e(rng);
    }
    ScreenGeometry g = kPanel;
    g.view_distance_cm = 30.0 + trial;
    const EvaluationReport r = evaluate_predictions(pred, truth, g);
    for (const AxisReport* a : {&r.x, &r.y}) {
      EXPECT_NEAR(a->mean_angular_error_deg,
                  deg(std::atan(a->mean_abs_error_cm / g.view_distance_cm)), 1e-12);
      EXPECT_NEAR(a->sem_deg, deg(std::atan(a->sem_cm / g.view_distance_cm)), 1e-12);
    }
    EXPECT_NEAR(r.x.mean_abs_error_cm, r.x.mean_abs_error_px * 34.4 / 1920, 1e-12);
    EXPECT_NEAR(r.y.mean_abs_error_cm, r.y.mean_abs_error_px * 19.35 / 1080, 1e-12);
  }
}

TEST(EvaluatePredictions, IsOrderInvariant) {
  std::mt19937_64 rng(48);
  std::normal_distribution<double> e(0.0, 50.0);
  auto truth = random_points(rng, 50);
  auto pred = truth;
  for (auto& p : pred) p.u += e(rng);
  const EvaluationReport a = evaluate_predictions(pred, truth, kPanel);
  std::vector<std::size_t> idx(truth.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<ScreenPoint> t2, p2;
  for (std::size_t i : idx) {
    t2.push_back(truth[i]);
    p2.push_back(pred[i]);
  }
  const EvaluationReport b = evaluate_predictions(p2, t2, kPanel);
  EXPECT_EQ(a.x.mean_abs_error_px, b.x.mean_abs_error_px);
  EXPECT_EQ(a.x.sem_px, b.x.sem_px);
  EXPECT_EQ(a.x.r_squared, b.x.r_squared);
  EXPECT_EQ(a.mean_euclidean_error_px, b.mean_euclidean_error_px);
}

TEST(EvaluatePredictions, Errors) {
  std::mt19937_64 rng(49);
  const auto truth = random_points(rng, 5);
  const std::vector<ScreenPoint> shorter(truth.begin(), truth.begin() + 4);
  EXPECT_EQ(error_of([&] { evaluate_predictions(shorter, truth, kPanel); }),
            Errc::kLengthMismatch);
  EXPECT_EQ(error_of([&] { evaluate_predictions({}, {}, kPanel); }), Errc::kEmptySession);
  ScreenGeometry g = kPanel;
  g.view_distance_cm = 0.0;
  EXPECT_EQ(error_of([&] { evaluate_predictions(truth, truth, g); }), Errc::kInvalidArgument);
}

// evaluate() over frames.

std::vector<LabeledFrame> synthetic_frames(int session) {
  SynthConfig cfg;
  cfg.seed = 3;
  std::vector<LabeledFrame> out;
  for (const auto& s : synth_session(cfg, session)) out.push_back({s.frame, s.sample.target_px});
  return out;
}

GazeModel synthetic_model() {
  SynthConfig cfg;
  cfg.seed = 3;
  std::vector<CalibrationSample> train;
  for (int k : {1, 2}) {
    for (const auto& s : synth_session(cfg, k)) train.push_back(s.sample);
  }
  return fit(train);
}

TEST(Evaluate, FramesAndSamplesAgree) {
  const GazeModel m = synthetic_model();
  const auto frames = synthetic_frames(3);
  std::vector<CalibrationSample> samples;
  for (const auto& f : frames) samples.push_back({descriptor_vector(f.frame), f.target_px, ""});
  const EvaluationReport a = evaluate(m, frames, kPanel);
  const EvaluationReport b = evaluate(m, samples, kPanel);
  EXPECT_EQ(format_report(a), format_report(b));
  EXPECT_EQ(a.sample_count, 20u);
}

TEST(Evaluate, DegenerateFramesSkipOrFail) {
  const GazeModel m = synthetic_model();
  auto frames = synthetic_frames(3);
  frames.push_back({validate_frame(testing_support::uniform_points()), {10, 10}});
  const EvaluationReport r = evaluate(m, frames, kPanel);
  EXPECT_EQ(r.sample_count, 20u);
  EXPECT_EQ(r.skipped_count, 1u);
  EXPECT_EQ(error_of([&] { evaluate(m, frames, kPanel, DegeneratePolicy::kFailFast); }),
            Errc::kDegenerateGeometry);
}

TEST(Evaluate, AllFramesDegenerateIsEmpty) {
  const GazeModel m = synthetic_model();
  const std::vector<LabeledFrame> frames(
      3, LabeledFrame{validate_frame(testing_support::uniform_points()), {1, 1}});
  EXPECT_EQ(error_of([&] { evaluate(m, frames, kPanel); }), Errc::kEmptySession);
}

TEST(FormatReport, ContainsEveryField) {
  std::mt19937_64 rng(50);
  const auto truth = random_points(rng, 6);
  const std::string text = format_report(evaluate_predictions(truth, truth, kPanel));
  for (const char* key :
       {"x.r_squared", "x.mae_px", "x.sem_px", "x.mae_cm", "x.sem_cm", "x.mae_deg", "x.sem_deg",
        "y.r_squared", "y.mae_deg", "sample_count", "skipped_count", "view_distance_cm"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  const auto header = report_csv_header();
  const auto row = report_csv_row(evaluate_predictions(truth, truth, kPanel));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

}  // namespace
}  // namespace geogaze
