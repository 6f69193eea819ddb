//
// Copyright 2026 The DPSCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpsco/verify/criteria.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "Eigen/Core"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "boost/multiprecision/cpp_bin_float.hpp"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/run_record.h"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/bench/config.h"
#include "dpsco/bench/emit.h"
#include "dpsco/bench/experiment.h"
#include "dpsco/bench/problem.h"
#include "dpsco/bench/synthetic.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"
#include "dpsco/core/privacy_budget.h"
#include "dpsco/engine/partition.h"
#include "dpsco/engine/sgd_pass.h"
#include "dpsco/geometry/feasible_set.h"
#include "dpsco/mechanisms/noise.h"
#include "dpsco/oracle/erm_exact.h"
#include "dpsco/oracle/qp_project.h"
#include "dpsco/oracle/tnc.h"

namespace dpsco::verify {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

struct Verdict {
  Outcome outcome = Outcome::kFail;
  std::string detail;
};

Verdict Pass(std::string detail) { return {Outcome::kPass, std::move(detail)}; }
Verdict Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }
Verdict FailStatus(const absl::Status& status) {
  return Fail(std::string(status.message()));
}

double RelErr(double got, const Big& want) {
  if (want == 0) return got == 0.0 ? 0.0 : INFINITY;
  return static_cast<double>(abs((Big(got) - want) / want));
}

double LogUniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

Eigen::VectorXd Gaussian(Rng& rng, int d, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::VectorXd v(d);
  for (int j = 0; j < d; ++j) v[j] = g(rng);
  return v;
}

Eigen::VectorXd UnitDirection(Rng& rng, int d) {
  Eigen::VectorXd v = Gaussian(rng, d);
  while (v.norm() == 0.0) v = Gaussian(rng, d);
  return v / v.norm();
}

// Criterion 1.
Verdict NoiseCalibrationExactness(const VerifyOptions& options) {
  Rng rng(options.seed);
  std::uniform_int_distribution<int> dim(1, 1000);
  std::uniform_real_distribution<double> log_delta(-20.0, std::log10(0.5));
  double worst_gauss = 0.0;
  double worst_laplace = 0.0;
  double worst_release = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double delta = std::pow(10.0, log_delta(rng));
    const double epsilon =
        LogUniform(rng, 1e-3, std::min(100.0, 2.0 * std::log(1.0 / delta)));
    const double sensitivity = LogUniform(rng, 1e-6, 1e2);
    const int d = dim(rng);

    absl::StatusOr<PrivacyBudget> approx =
        PrivacyBudget::Approximate(epsilon, delta);
    absl::StatusOr<PrivacyBudget> pure = PrivacyBudget::Pure(epsilon);
    if (!approx.ok()) return FailStatus(approx.status());
    if (!pure.ok()) return FailStatus(pure.status());
    absl::StatusOr<double> sigma = GaussianScale(sensitivity, *approx);
    absl::StatusOr<double> b = LaplaceScale(sensitivity, epsilon);
    absl::StatusOr<NoiseSpec> release =
        ReleaseNoise(sensitivity, *pure, d, NoiseCalibration{});
    if (!sigma.ok()) return FailStatus(sigma.status());
    if (!b.ok()) return FailStatus(b.status());
    if (!release.ok()) return FailStatus(release.status());

    const Big s(sensitivity), e(epsilon), dl(delta);
    worst_gauss = std::max(
        worst_gauss, RelErr(*sigma, 4 * s * sqrt(log(1 / dl)) / e));
    worst_laplace = std::max(worst_laplace, RelErr(*b, s / e));
    worst_release = std::max(
        worst_release, RelErr(release->scale(), 4 * s * sqrt(Big(d)) / e));
  }
  const double worst = std::max({worst_gauss, worst_laplace, worst_release});
  const std::string detail = absl::StrFormat(
      "1000 draws; max rel err gaussian %.3g, laplace %.3g, pure release "
      "%.3g (limit 1e-12)",
      worst_gauss, worst_laplace, worst_release);
  return worst <= 1e-12 ? Pass(detail) : Fail(detail);
}

// Random instance of kind `kind` in dimension d; intersections are built to
// be nonempty.
absl::StatusOr<FeasibleSet> RandomSet(int kind, int d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto l2 = [&](const Eigen::VectorXd& c, double r) {
    return FeasibleSet::L2Ball(c, r);
  };
  const auto box_around = [&](const Eigen::VectorXd& c) {
    Eigen::VectorXd lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
      lo[j] = c[j] - (0.1 + u(rng));
      hi[j] = c[j] + (0.1 + u(rng));
    }
    return FeasibleSet::Box(lo, hi);
  };
  switch (kind) {
    case 0:
      return l2(Gaussian(rng, d, 0.5), 0.2 + 1.8 * u(rng));
    case 1:
      return FeasibleSet::L1Ball(d, 0.2 + 1.8 * u(rng));
    case 2:
      return box_around(Gaussian(rng, d, 0.5));
    case 3: {
      const Eigen::VectorXd c1 = Gaussian(rng, d, 0.5);
      const double r1 = 0.3 + u(rng);
      const double r2 = 0.3 + u(rng);
      const Eigen::VectorXd c2 =
          c1 + 0.9 * u(rng) * (r1 + r2) * UnitDirection(rng, d);
      ASSIGN_OR_RETURN(FeasibleSet a, l2(c1, r1));
      ASSIGN_OR_RETURN(FeasibleSet b, l2(c2, r2));
      return FeasibleSet::Intersection({std::move(a), std::move(b)});
    }
    case 4: {
      const Eigen::VectorXd c = Gaussian(rng, d, 0.5);
      ASSIGN_OR_RETURN(FeasibleSet a, l2(c, 0.3 + u(rng)));
      ASSIGN_OR_RETURN(FeasibleSet b,
                       box_around(c + 0.3 * Gaussian(rng, d, 0.3)));
      if (!Membership(b, c, 0.0)) {
        ASSIGN_OR_RETURN(b, box_around(c));
      }
      return FeasibleSet::Intersection({std::move(a), std::move(b)});
    }
    default: {
      const double r = 0.5 + u(rng);
      ASSIGN_OR_RETURN(FeasibleSet a, FeasibleSet::L1Ball(d, r));
      ASSIGN_OR_RETURN(FeasibleSet b,
                       l2(0.3 * r / d * UnitDirection(rng, d), 0.2 + u(rng)));
      return FeasibleSet::Intersection({std::move(a), std::move(b)});
    }
  }
}

// Criterion 2.
Verdict ProjectionOracleEquivalence(const VerifyOptions& options) {
  Rng rng(options.seed + 2);
  constexpr int kKinds = 6;
  double worst = 0.0;
  int worst_instance = -1;
  for (int i = 0; i < 500; ++i) {
    const int d = 1 + i % 10;
    absl::StatusOr<FeasibleSet> set = RandomSet(i % kKinds, d, rng);
    if (!set.ok()) return FailStatus(set.status());
    const Eigen::VectorXd point = Gaussian(rng, d, 1.5);
    absl::StatusOr<Eigen::VectorXd> ours = Project(*set, point);
    if (!ours.ok()) return FailStatus(ours.status());
    std::vector<FeasibleSet> members =
        set->kind() == FeasibleSet::Kind::kIntersection
            ? set->members()
            : std::vector<FeasibleSet>{*set};
    absl::StatusOr<Eigen::VectorXd> oracle = oracle::QpProject(members, point);
    if (!oracle.ok()) {
      return Fail(absl::StrCat("oracle failed on instance ", i, " (",
                               set->DebugString(),
                               "): ", oracle.status().message()));
    }
    const double gap = (*ours - *oracle).norm();
    if (gap > worst) {
      worst = gap;
      worst_instance = i;
    }
  }
  const std::string detail = absl::StrFormat(
      "500 instances over l2, l1, box, l2^l2, l2^box, l1^l2; max |diff| "
      "%.3g at instance %d (limit 1e-6)",
      worst, worst_instance);
  return worst <= 1e-6 ? Pass(detail) : Fail(detail);
}

absl::StatusOr<LabeledDataset> RandomClassification(int64_t n, int d,
                                                    Rng& rng) {
  FeatureMatrix x(n, d);
  Eigen::VectorXd y(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int64_t i = 0; i < n; ++i) {
    x.row(i) = (u(rng) * UnitDirection(rng, d)).transpose();
    y[i] = u(rng) < 0.5 ? -1.0 : 1.0;
  }
  return LabeledDataset::Create(std::move(x), std::move(y));
}

// Criterion 3.
Verdict StabilityBound(const VerifyOptions& options) {
  constexpr int kDim = 5;
  constexpr int64_t kN = 100;
  constexpr double kLambda = 0.001;
  constexpr double kRadius = 1.0;
  LossConstants constants;
  constants.lipschitz = 1.0 + kLambda * kRadius;
  constants.smoothness = 0.25 + kLambda;
  constants.strong_convexity = kLambda;
  absl::StatusOr<LossModel> model = LossModel::LogisticL2Reg(kLambda, constants);
  if (!model.ok()) return FailStatus(model.status());
  absl::StatusOr<FeasibleSet> set =
      FeasibleSet::L2Ball(Eigen::VectorXd::Zero(kDim), kRadius);
  if (!set.ok()) return FailStatus(set.status());
  const double L = constants.lipschitz;
  const double bound = 2.0 * L * L / (kLambda * kN) + 1e-9;
  const double eta = 1.0 / *constants.smoothness;

  Rng rng(options.seed + 3);
  std::uniform_int_distribution<int64_t> pick(0, kN - 1);
  SgdPassOptions pass;
  pass.clip_norm = L;
  double worst = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    absl::StatusOr<LabeledDataset> a = RandomClassification(kN, kDim, rng);
    absl::StatusOr<LabeledDataset> extra = RandomClassification(1, kDim, rng);
    if (!a.ok()) return FailStatus(a.status());
    if (!extra.ok()) return FailStatus(extra.status());
    FeatureMatrix xb = a->features();
    Eigen::VectorXd yb = a->labels();
    const int64_t j = pick(rng);
    xb.row(j) = extra->features().row(0);
    yb[j] = extra->labels()[0];
    absl::StatusOr<LabeledDataset> b =
        LabeledDataset::Create(std::move(xb), std::move(yb));
    if (!b.ok()) return FailStatus(b.status());
    const Eigen::VectorXd w0 =
        0.5 * kRadius * UnitDirection(rng, kDim);
    const Segment all{0, kN, 0};
    absl::StatusOr<SgdPassResult> ra = SgdPass(*model, *a, all, w0, eta, *set, pass);
    absl::StatusOr<SgdPassResult> rb = SgdPass(*model, *b, all, w0, eta, *set, pass);
    if (!ra.ok()) return FailStatus(ra.status());
    if (!rb.ok()) return FailStatus(rb.status());
    worst = std::max(worst, (ra->averaged - rb->averaged).norm());
  }
  const std::string detail = absl::StrFormat(
      "50 neighbouring pairs, eta=1/beta; max averaged-iterate distance %.4g, "
      "bound 2L^2/(lambda n) = %.4g",
      worst, bound);
  return worst <= bound ? Pass(detail) : Fail(detail);
}

template <typename T>
std::string Join(const std::vector<T>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) absl::StrAppend(&out, i ? "," : "", v[i]);
  return out;
}

// Criterion 4.
Verdict ScheduleGoldenTables(const VerifyOptions&) {
  std::vector<std::string> errors;
  const auto expect_sizes = [&](const std::string& what,
                                const absl::StatusOr<std::vector<int64_t>>& got,
                                const std::vector<int64_t>& want) {
    if (!got.ok()) {
      errors.push_back(absl::StrCat(what, ": ", got.status().message()));
    } else if (*got != want) {
      errors.push_back(absl::StrCat(what, ": got {", Join(*got), "} want {",
                                    Join(want), "}"));
    }
  };
  std::vector<int64_t> halving;
  for (int64_t s = 512; s >= 1; s /= 2) halving.push_back(s);
  expect_sizes("phased_sgd n=1024", PhasedSgdSizes(1024), halving);
  expect_sizes("iterated n=65536", IteratedPhasedSgdSizes(65536, 2.0),
               {4096, 8192, 16384, 32768});
  expect_sizes("epoch n=1600 n1=50", EpochSizes(1600, 50),
               {50, 100, 200, 1250});

  absl::StatusOr<PsaPlan> psa = PlanPsa(1024);
  if (!psa.ok() || psa->stages != 2 || psa->segment_size != 512) {
    errors.push_back("psa n=1024: want m=2, n0=512");
  }
  absl::StatusOr<PrivacyBudget> pure = PrivacyBudget::Pure(1.0);
  absl::StatusOr<Psa2Plan> psa2 =
      PlanPsa2(10000, 10, 2.0, 1.0, 1.0, 1.0, *pure);
  if (!psa2.ok() || psa2->stages != 13 || psa2->segment_size != 769) {
    errors.push_back("psa2 n=1e4: want m=13, n0=769");
  } else {
    const Big n0(769);
    const Big gamma0 = 1 / (6400 * (1 / n0 + 100 / (n0 * n0)));
    if (RelErr(psa2->gamma0, gamma0) > 1e-12) {
      errors.push_back(absl::StrFormat("psa2 gamma0 %.17g off", psa2->gamma0));
    }
  }

  // Sample budget over a grid of n and theta_bar.
  const std::vector<std::string> algorithms = {
      "phased_sgd", "phased_erm",          "phased_sgd_sc", "psa",
      "psa2",       "iterated_phased_sgd", "epoch_dp_sgd",  "faster_dpsgd_sc"};
  int checked = 0;
  int degenerate = 0;
  std::vector<int> per_algorithm(algorithms.size(), 0);
  for (int e = 8; e <= 20; ++e) {
    for (double theta_bar : {1.5, 2.0}) {
      for (size_t a = 0; a < algorithms.size(); ++a) {
        ScheduleQuery q;
        q.algorithm = algorithms[a];
        q.n = int64_t{1} << e;
        q.delta = 1e-5;
        q.smoothness = 1.0;
        q.strong_convexity = 1.0;
        q.theta_bar = theta_bar;
        q.n1 = 16;
        q.eta1 = 0.5;
        q.tau = 1.5;
        absl::StatusOr<Schedule> s = DescribeSchedule(q);
        if (!s.ok()) {
          ++degenerate;
          continue;
        }
        ++checked;
        ++per_algorithm[a];
        if (s->SamplesUsed() > q.n) {
          errors.push_back(absl::StrCat(q.algorithm, " n=", q.n, " uses ",
                                        s->SamplesUsed(), " samples"));
        }
      }
    }
  }
  for (size_t a = 0; a < algorithms.size(); ++a) {
    if (per_algorithm[a] == 0) {
      errors.push_back(absl::StrCat(algorithms[a], " produced no schedule"));
    }
  }
  if (!errors.empty()) return Fail(absl::StrJoin(errors, "; "));
  return Pass(absl::StrCat(
      "golden tables exact; sum n_i <= n on ", checked,
      " schedules (n=2^8..2^20, theta_bar 1.5/2, 8 algorithms; ", degenerate,
      " rejected as degenerate)"));
}

double Slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Criterion 5.
Verdict RateLaw(const VerifyOptions& options) {
  constexpr int kDim = 10;
  constexpr int kSeeds = 20;
  constexpr double kRadius = 1.0;
  constexpr double kTruthNorm = 0.5;
  constexpr double kLabelNoise = 0.1;
  Rng truth_rng(options.seed + 5);
  const Eigen::VectorXd w_star = kTruthNorm * UnitDirection(truth_rng, kDim);

  LossConstants constants;
  constants.lipschitz = 2.0 * (kRadius + kTruthNorm + kLabelNoise);
  constants.smoothness = 2.0;
  absl::StatusOr<LossModel> model = LossModel::SquaredLinear(constants);
  absl::StatusOr<FeasibleSet> set =
      FeasibleSet::L2Ball(Eigen::VectorXd::Zero(kDim), kRadius);
  if (!model.ok()) return FailStatus(model.status());
  if (!set.ok()) return FailStatus(set.status());
  const Eigen::VectorXd w0 = Eigen::VectorXd::Zero(kDim);
  DriverOptions noiseless;
  noiseless.disable_noise = true;

  using Runner = std::function<absl::StatusOr<RunRecord>(
      const LabeledDataset&, const PrivacyBudget&, uint64_t)>;
  const std::vector<std::pair<std::string, Runner>> runners = {
      {"phased_sgd",
       [&](const LabeledDataset& data, const PrivacyBudget& budget,
           uint64_t seed) {
         return PhasedSgd(data, *model, *set, w0, budget, PhasedSgdConfig{},
                          seed, noiseless);
       }},
      {"iterated_phased_sgd",
       [&](const LabeledDataset& data, const PrivacyBudget& budget,
           uint64_t seed) {
         IteratedPhasedSgdConfig c;
         c.theta_bar = 2.0;
         return IteratedPhasedSgd(data, *model, *set, w0, budget, c, seed,
                                  noiseless);
       }},
  };
  const std::vector<double> targets = {-0.5, -1.0};
  const std::vector<double> tolerances = {0.15, 0.25};

  std::vector<double> log_n;
  std::vector<std::vector<double>> log_excess(runners.size());
  std::vector<std::string> means;
  for (int e = 10; e <= 16; ++e) {
    const int64_t n = int64_t{1} << e;
    const double delta = bench::DeltaForN(n);
    absl::StatusOr<PrivacyBudget> budget =
        PrivacyBudget::Approximate(bench::EpsilonForDelta(delta), delta);
    if (!budget.ok()) return FailStatus(budget.status());
    log_n.push_back(std::log2(static_cast<double>(n)));
    std::vector<double> minima(kSeeds);
    for (size_t r = 0; r < runners.size(); ++r) {
      double total = 0.0;
      for (int s = 0; s < kSeeds; ++s) {
        const uint64_t seed = options.seed * 1000003 + e * 101 + s;
        absl::StatusOr<LabeledDataset> data =
            bench::SyntheticLinear(n, w_star, kLabelNoise, seed);
        if (!data.ok()) return FailStatus(data.status());
        if (r == 0) {
          absl::StatusOr<Eigen::VectorXd> best =
              oracle::ErmExact(*model, *data, *set);
          if (!best.ok()) return FailStatus(best.status());
          absl::StatusOr<double> floor = EmpiricalRisk(*model, *best, *data);
          if (!floor.ok()) return FailStatus(floor.status());
          minima[s] = *floor;
        }
        absl::StatusOr<RunRecord> record =
            runners[r].second(*data, *budget, seed);
        if (!record.ok()) {
          return Fail(absl::StrCat(runners[r].first, " n=", n, ": ",
                                   record.status().message()));
        }
        absl::StatusOr<double> risk =
            EmpiricalRisk(*model, record->final_point, *data);
        if (!risk.ok()) return FailStatus(risk.status());
        total += *risk - minima[s];
      }
      const double mean = total / kSeeds;
      log_excess[r].push_back(std::log2(mean));
      means.push_back(absl::StrFormat("%s@2^%d=%.3g", runners[r].first, e,
                                      mean));
    }
  }
  bool ok = true;
  std::string detail;
  for (size_t r = 0; r < runners.size(); ++r) {
    const double slope = Slope(log_n, log_excess[r]);
    const bool within = std::fabs(slope - targets[r]) <= tolerances[r];
    ok = ok && within;
    absl::StrAppendFormat(&detail, "%s slope %.3f (want %.2f +- %.2f)%s; ",
                          runners[r].first, slope, targets[r], tolerances[r],
                          within ? "" : " OUT");
  }
  absl::StrAppend(&detail, "means: ", absl::StrJoin(means, " "));
  return ok ? Pass(detail) : Fail(detail);
}

// Criterion 6.
Verdict TncStationarity(const VerifyOptions& options) {
  Rng rng(options.seed + 6);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_int_distribution<int> size(1, 200);
  std::bernoulli_distribution coin(0.5);
  const double thetas[] = {2.0, 2.5, 3.0};
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = dim(rng);
    const int64_t n = size(rng);
    const double theta = thetas[t % 3];
    FeatureMatrix x(n, d);
    const double corner = 1.0 / std::sqrt(static_cast<double>(d));
    for (int64_t i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = coin(rng) ? corner : -corner;
    }
    absl::StatusOr<LabeledDataset> data =
        LabeledDataset::Create(std::move(x), Eigen::VectorXd::Zero(n));
    if (!data.ok()) return FailStatus(data.status());
    const Eigen::VectorXd mean = data->features().colwise().mean().transpose();
    absl::StatusOr<Eigen::VectorXd> w = oracle::TncMinimizer(mean, theta);
    if (!w.ok()) return FailStatus(w.status());
    LossConstants constants;
    constants.lipschitz = 2.0;
    absl::StatusOr<LossModel> model =
        LossModel::TncHardInstance(theta, constants);
    if (!model.ok()) return FailStatus(model.status());
    absl::StatusOr<Eigen::VectorXd> grad =
        EmpiricalGradient(*model, *w, *data, 0, n);
    if (!grad.ok()) return FailStatus(grad.status());
    worst = std::max(worst, grad->norm());
  }
  const std::string detail = absl::StrFormat(
      "100 hypercube datasets, theta in {2, 2.5, 3}; max |grad F-hat(w*)| "
      "%.3g (limit 1e-8)",
      worst);
  return worst <= 1e-8 ? Pass(detail) : Fail(detail);
}

bench::AlgorithmConfig Algo(const std::string& spec) {
  absl::StatusOr<bench::AlgorithmConfig> a = bench::ParseAlgorithmSpec(spec);
  return *a;
}

// Criterion 7.
Verdict A9aReproduction(const VerifyOptions& options) {
  if (!options.a9a_train || !options.a9a_test) {
    return {Outcome::kSkip,
            "a9a not supplied; set DPSCO_A9A_TRAIN and DPSCO_A9A_TEST"};
  }
  bench::ExperimentConfig config;
  config.problem.kind = bench::ProblemKind::kLinregL1Ball;
  config.problem.radius = 1.0;
  config.algorithms = {Algo("phased_sgd"), Algo("iterated_phased_sgd:1.5")};
  config.sweep = bench::SweepKind::kOverN;
  config.sweep_values = {10000};
  config.seeds = 20;
  config.master_seed = options.seed;
  config.dataset = "a9a";
  config.train_path = *options.a9a_train;
  config.test_path = *options.a9a_test;
  absl::StatusOr<bench::ExperimentData> data =
      bench::LoadExperimentData(config);
  if (!data.ok()) return FailStatus(data.status());
  absl::StatusOr<bench::ResultTable> table =
      bench::RunExperiment(config, *data);
  if (!table.ok()) return FailStatus(table.status());
  if (!table->ok() || table->rows.size() != 2) {
    return Fail(absl::StrCat("failed cells: ",
                             absl::StrJoin(table->failures, "; ")));
  }
  const bench::ResultRow& phased = table->rows[0];
  const bench::ResultRow& iterated = table->rows[1];
  const std::string detail = absl::StrFormat(
      "n=%d: iterated(1.5) %.6g +- %.3g vs phased %.6g +- %.3g",
      data->train.size() >= 10000 ? 10000 : static_cast<int>(data->train.size()),
      iterated.mean_test_error, iterated.std_test_error,
      phased.mean_test_error, phased.std_test_error);
  if (iterated.mean_test_error <= phased.mean_test_error) return Pass(detail);
  const double spread =
      std::max(iterated.std_test_error, phased.std_test_error);
  if (iterated.mean_test_error - phased.mean_test_error < spread) {
    return {Outcome::kWarn, detail + " (within one standard deviation)"};
  }
  return Fail(detail);
}

absl::StatusOr<std::string> RunOnce(const bench::ExperimentConfig& config,
                                    int* audited) {
  ASSIGN_OR_RETURN(bench::ExperimentData data,
                   bench::LoadExperimentData(config));
  std::vector<bench::CellRecord> records;
  ASSIGN_OR_RETURN(bench::ResultTable table,
                   bench::RunExperiment(config, data, &records));
  if (!table.ok()) {
    return absl::InternalError(
        absl::StrCat("failed cells: ", absl::StrJoin(table.failures, "; ")));
  }
  for (const bench::CellRecord& cell : records) {
    absl::Status ledger = AuditLedger(cell.record);
    absl::Status scales = AuditNoiseScales(cell.record);
    if (!ledger.ok() || !scales.ok()) {
      return absl::InternalError(absl::StrCat(
          cell.record.algorithm, " seed ", cell.seed_index, ": ",
          ledger.message(), " ", scales.message()));
    }
    ++*audited;
  }
  return bench::FormatCsv(table);
}

// Criterion 8.
Verdict DeterminismAndAudit(const VerifyOptions& options) {
  bench::ExperimentConfig tnc;
  tnc.problem.kind = bench::ProblemKind::kSyntheticTnc;
  tnc.problem.dimension = 5;
  tnc.algorithms = {Algo("phased_sgd"),      Algo("phased_erm"),
                    Algo("phased_sgd_sc"),   Algo("psa"),
                    Algo("psa2"),            Algo("iterated_phased_sgd:1.5"),
                    Algo("epoch_dp_sgd:64"), Algo("faster_dpsgd_sc")};
  tnc.sweep_values = {1024, 2048};
  tnc.seeds = 2;
  tnc.test_size = 2000;
  tnc.record_wall_time = false;
  tnc.master_seed = options.seed;

  bench::ExperimentConfig linreg;
  linreg.problem.kind = bench::ProblemKind::kLinregL1Ball;
  linreg.algorithms = {Algo("phased_sgd"), Algo("iterated_phased_sgd:2"),
                       Algo("psa")};
  linreg.sweep = bench::SweepKind::kOverEpsilon;
  linreg.sweep_values = {0.5, 2.0};
  linreg.fixed_n = 2048;
  linreg.seeds = 3;
  linreg.test_size = 2000;
  linreg.record_wall_time = false;
  linreg.master_seed = options.seed + 8;

  int audited = 0;
  std::vector<std::string> notes;
  for (bench::ExperimentConfig* config : {&tnc, &linreg}) {
    // Different worker counts must not change the bytes.
    config->threads = 1;
    absl::StatusOr<std::string> first = RunOnce(*config, &audited);
    if (!first.ok()) return FailStatus(first.status());
    config->threads = 4;
    absl::StatusOr<std::string> second = RunOnce(*config, &audited);
    if (!second.ok()) return FailStatus(second.status());
    if (*first != *second) {
      return Fail(absl::StrCat("CSV differs between runs for ",
                               bench::ProblemKindName(config->problem.kind)));
    }
    notes.push_back(absl::StrCat(bench::ProblemKindName(config->problem.kind),
                                 " ", first->size(), " bytes"));
  }
  return Pass(absl::StrCat("byte-identical CSV (", absl::StrJoin(notes, ", "),
                           "); ", audited, " run records pass both audits"));
}

struct Criterion {
  const char* title;
  double time_limit_s;
  Verdict (*run)(const VerifyOptions&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"noise calibration exactness", 1.0, NoiseCalibrationExactness},
    {"projection oracle equivalence", 30.0, ProjectionOracleEquivalence},
    {"stability sensitivity bound", 60.0, StabilityBound},
    {"schedule golden tables", 10.0, ScheduleGoldenTables},
    {"rate-law slopes", 600.0, RateLaw},
    {"TNC hard-instance stationarity", 5.0, TncStationarity},
    {"a9a iterated vs phased", 900.0, A9aReproduction},
    {"determinism and ledger audit", 120.0, DeterminismAndAudit},
};

}  // namespace

std::string OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPass:
      return "PASS";
    case Outcome::kWarn:
      return "WARN";
    case Outcome::kFail:
      return "FAIL";
    case Outcome::kSkip:
      return "SKIP";
  }
  return "?";
}

VerifyOptions OptionsFromEnvironment() {
  VerifyOptions options;
  if (const char* p = std::getenv("DPSCO_A9A_TRAIN"); p && *p) {
    options.a9a_train = p;
  }
  if (const char* p = std::getenv("DPSCO_A9A_TEST"); p && *p) {
    options.a9a_test = p;
  }
  return options;
}

CriterionResult RunCriterion(int id, const VerifyOptions& options) {
  CriterionResult result;
  result.id = id;
  if (id < 1 || id > kCriterionCount) {
    result.title = "unknown";
    result.detail = absl::StrCat("no criterion ", id);
    return result;
  }
  const Criterion& c = kCriteria[id - 1];
  result.title = c.title;
  result.time_limit_s = c.time_limit_s;
  const auto start = std::chrono::steady_clock::now();
  Verdict verdict = c.run(options);
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  result.outcome = verdict.outcome;
  result.detail = std::move(verdict.detail);
  if (result.seconds > c.time_limit_s && result.outcome != Outcome::kSkip) {
    result.outcome = Outcome::kFail;
    absl::StrAppendFormat(&result.detail, "; over time limit");
  }
  return result;
}

std::string FormatResult(const CriterionResult& r) {
  return absl::StrFormat("[%s] %d %s (%.2f s / %.0f s): %s",
                         OutcomeName(r.outcome), r.id, r.title, r.seconds,
                         r.time_limit_s, r.detail);
}

}  // namespace dpsco::verify
