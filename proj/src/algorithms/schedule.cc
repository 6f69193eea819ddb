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

#include "dpsco/algorithms/schedule.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco {

int64_t Schedule::SamplesUsed() const {
  int64_t total = 0;
  for (const StageRow& row : stages) total += row.size;
  return total;
}

int CeilLog2(int64_t n) {
  int k = 0;
  while ((int64_t{1} << k) < n) ++k;
  return k;
}

int64_t FloorCount(double x) {
  return static_cast<int64_t>(
      std::floor(x + 1e-12 * std::max(1.0, std::abs(x))));
}

double DefaultStepsize(double distance, double lipschitz, int64_t n,
                       int dimension, const PrivacyBudget& budget) {
  const double stat = 4.0 / std::sqrt(static_cast<double>(n));
  const double priv =
      budget.is_pure()
          ? budget.epsilon() / dimension
          : budget.epsilon() /
                (2.0 * std::sqrt(dimension * budget.LogInverseDelta()));
  return distance / lipschitz * std::min(stat, priv);
}

absl::StatusOr<std::vector<int64_t>> PhasedSgdSizes(int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Phased-SGD needs at least one sample, got ", n, "."));
  }
  const int k = CeilLog2(n);
  std::vector<int64_t> sizes;
  for (int i = 1; i <= k; ++i) {
    if ((n >> i) < 1) break;
    sizes.push_back(n >> i);
  }
  if (sizes.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Phased-SGD schedule for n = ", n, " has no stages."));
  }
  return sizes;
}

absl::StatusOr<std::vector<int64_t>> PhasedSgdScSizes(int64_t n) {
  if (n < 3) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Phased-SGD-SC needs ln ln n > 0, got n = ", n, "."));
  }
  const double ln_n = std::log(static_cast<double>(n));
  const int k = static_cast<int>(std::ceil(std::log(ln_n)));
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Phased-SGD-SC schedule for n = ", n, " has no stages."));
  }
  std::vector<int64_t> sizes;
  int64_t total = 0;
  for (int i = 1; i <= k; ++i) {
    const int64_t size = FloorCount(std::ldexp(n / ln_n, i - 2));
    if (size < 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Phased-SGD-SC stage ", i, " of ", k, " has ", size,
          " samples for n = ", n, "; at least 2 are required."));
    }
    sizes.push_back(size);
    total += size;
  }
  if (total > n) {
    return absl::InternalError(absl::StrCat(
        "Phased-SGD-SC schedule uses ", total, " of ", n, " samples."));
  }
  return sizes;
}

absl::StatusOr<PsaPlan> PlanPsa(int64_t n) {
  if (n < 256) {
    return absl::InvalidArgumentError(
        absl::StrCat("PSA requires n >= 256, got ", n, "."));
  }
  const double log2n = std::log2(static_cast<double>(n));
  const int m = static_cast<int>(FloorCount(0.5 * std::log2(2.0 * n / log2n))) - 1;
  if (m <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("PSA stage count is ", m, " for n = ", n, "."));
  }
  return PsaPlan{m, n / m};
}

absl::StatusOr<Psa2Plan> PlanPsa2(int64_t n, int dimension, double theta,
                                  double tnc_lambda, double lipschitz,
                                  double chi0, const PrivacyBudget& budget) {
  if (!(theta > 1.0) || !(tnc_lambda > 0.0) || !(lipschitz > 0.0) ||
      !(chi0 > 0.0) || n < 1 || dimension < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "PSA-II needs theta > 1 and positive lambda, L, chi0, n, d; got "
        "theta=%g lambda=%g L=%g chi0=%g n=%d d=%d.",
        theta, tnc_lambda, lipschitz, chi0, n, dimension));
  }
  const double eps = budget.epsilon();
  const double d = dimension;
  auto error_term = [&](double count) {
    const double priv = budget.is_pure()
                            ? d * d / (count * count * eps * eps)
                            : d * budget.LogInverseDelta() /
                                  (count * count * eps * eps);
    return 1.0 / count + priv;
  };
  const double nn = static_cast<double>(n);
  const double inner = lipschitz * lipschitz /
                       std::pow(tnc_lambda, 2.0 / theta) * error_term(nn);
  const double m_real = -(theta / (2.0 * (theta - 1.0))) * std::log2(inner);
  const int64_t m = FloorCount(m_real);
  if (m <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "PSA-II stage count is %d for n = %d; more samples or budget needed.",
        m, n));
  }
  Psa2Plan plan;
  plan.stages = static_cast<int>(m);
  plan.segment_size = n / m;
  plan.gamma0 = chi0 / (6400.0 * lipschitz * lipschitz *
                        error_term(static_cast<double>(plan.segment_size)));
  return plan;
}

absl::StatusOr<std::vector<int64_t>> IteratedPhasedSgdSizes(
    int64_t n, double theta_bar) {
  if (!(theta_bar > 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Iterated Phased-SGD needs theta_bar > 1, got ", theta_bar, "."));
  }
  if (n < 4) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Iterated Phased-SGD needs log2 log2 n > 0, got n = ", n, "."));
  }
  const double log2n = std::log2(static_cast<double>(n));
  const double exponent = 1.0 / std::log2(theta_bar);
  const int64_t k = FloorCount(exponent * std::log2(log2n));
  if (k <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Iterated Phased-SGD has ", k, " stages for n = ", n,
        " and theta_bar = ", theta_bar, "."));
  }
  const double base = static_cast<double>(n) / std::pow(log2n, exponent);
  std::vector<int64_t> sizes;
  int64_t total = 0;
  for (int64_t i = 1; i <= k; ++i) {
    const int64_t size = FloorCount(std::ldexp(base, static_cast<int>(i - 1)));
    if (size < 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Iterated Phased-SGD stage ", i, " of ", k, " has ", size,
          " samples; at least 2 are required."));
    }
    sizes.push_back(size);
    total += size;
  }
  if (total > n) {
    return absl::InternalError(absl::StrCat(
        "Iterated Phased-SGD schedule uses ", total, " of ", n, " samples."));
  }
  return sizes;
}

double IteratedThetaBarThreshold(int64_t n) {
  const double log2n = std::log2(static_cast<double>(n));
  return std::exp2(std::log2(log2n) / (log2n - 1.0));
}

int EpochCount(int64_t n, int64_t n1) {
  if (n1 < 1 || n < 1) return 0;
  int e = 0;
  // 2 n1 (2^e - 1) <= n  <=>  2^e - 1 <= floor(n / (2 n1)).
  while (e < 62 && (int64_t{1} << (e + 1)) - 1 <= n / (2 * n1)) ++e;
  return e;
}

absl::StatusOr<std::vector<int64_t>> EpochSizes(int64_t n, int64_t n1) {
  if (n1 < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("First epoch size must be positive, got ", n1, "."));
  }
  const int k = EpochCount(n, n1);
  if (k <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Epoch schedule is empty for n = ", n, " and n1 = ", n1,
        "; n must be at least 2 n1."));
  }
  std::vector<int64_t> sizes;
  int64_t total = 0;
  for (int i = 0; i < k; ++i) {
    sizes.push_back(n1 << i);
    total += sizes.back();
  }
  sizes.back() += n - total;
  return sizes;
}

absl::StatusOr<int64_t> FasterFirstEpochSize(double tau, double kappa) {
  if (!(tau > 1.0) || !(kappa >= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Need tau > 1 and kappa >= 1, got tau = ", tau, ", kappa = ", kappa,
        "."));
  }
  const double n1 = std::exp2(2.0 * tau + 3.0) * kappa;
  if (n1 > 1e15) {
    return absl::InvalidArgumentError(
        absl::StrCat("First epoch size ", n1, " is out of range."));
  }
  return static_cast<int64_t>(std::ceil(n1 * (1.0 - 1e-15)));
}

namespace {

absl::StatusOr<PrivacyBudget> QueryBudget(const ScheduleQuery& q) {
  if (q.delta == 0.0) return PrivacyBudget::Pure(q.epsilon);
  return PrivacyBudget::Approximate(q.epsilon, q.delta);
}

double Clamp(const ScheduleQuery& q, double eta, Schedule& schedule,
             const std::string& where) {
  if (q.smoothness.has_value() && eta > 1.0 / *q.smoothness) {
    schedule.notes.push_back(absl::StrFormat(
        "%s: stepsize %.6g clamped to 1/beta = %.6g", where, eta,
        1.0 / *q.smoothness));
    return 1.0 / *q.smoothness;
  }
  return eta;
}

absl::StatusOr<double> Scale(double sensitivity, const PrivacyBudget& budget,
                             int dimension) {
  ASSIGN_OR_RETURN(NoiseSpec spec, ReleaseNoise(sensitivity, budget, dimension,
                                                NoiseCalibration{}));
  return spec.scale();
}

absl::Status AppendPhased(const ScheduleQuery& q, const PrivacyBudget& budget,
                          std::vector<int64_t> sizes, double eta,
                          Schedule& schedule) {
  for (size_t i = 0; i < sizes.size(); ++i) {
    StageRow row;
    row.index = static_cast<int>(i) + 1;
    row.size = sizes[i];
    row.stepsize = eta / std::pow(4.0, row.index);
    ASSIGN_OR_RETURN(row.noise_scale,
                     Scale(q.lipschitz * row.stepsize, budget, q.dimension));
    schedule.stages.push_back(row);
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Schedule> DescribeSchedule(const ScheduleQuery& q) {
  ASSIGN_OR_RETURN(PrivacyBudget budget, QueryBudget(q));
  if (!(q.lipschitz > 0.0) || q.dimension < 1) {
    return absl::InvalidArgumentError("Need L > 0 and d >= 1.");
  }
  Schedule schedule;
  schedule.algorithm = q.algorithm;
  const std::string& a = q.algorithm;

  if (a == "phased_sgd" || a == "phased_erm") {
    ASSIGN_OR_RETURN(std::vector<int64_t> sizes, PhasedSgdSizes(q.n));
    double eta = q.eta.value_or(
        DefaultStepsize(q.diameter, q.lipschitz, q.n, q.dimension, budget));
    if (a == "phased_sgd") eta = Clamp(q, eta, schedule, "eta");
    if (a == "phased_erm" && budget.is_pure()) {
      return absl::InvalidArgumentError("Phased-ERM needs (epsilon, delta)-DP.");
    }
    if (static_cast<int>(sizes.size()) < CeilLog2(q.n)) {
      schedule.notes.push_back(
          absl::StrCat(CeilLog2(q.n) - sizes.size(), " empty stages skipped"));
    }
    RETURN_IF_ERROR(AppendPhased(q, budget, sizes, eta, schedule));
    if (a == "phased_erm") {
      for (StageRow& row : schedule.stages) {
        schedule.notes.push_back(absl::StrFormat(
            "stage %d: inner suboptimality target %.6g", row.index,
            q.lipschitz * q.lipschitz * row.stepsize / row.size));
      }
    }
    return schedule;
  }

  if (a == "phased_sgd_sc") {
    ASSIGN_OR_RETURN(std::vector<int64_t> sizes, PhasedSgdScSizes(q.n));
    const double lw = q.lipschitz + q.diameter / q.gamma;
    for (size_t t = 0; t < sizes.size(); ++t) {
      StageRow row;
      row.index = static_cast<int>(t) + 1;
      row.size = sizes[t];
      row.stepsize = DefaultStepsize(q.diameter, lw, row.size, q.dimension,
                                     budget);
      row.stepsize = Clamp(q, row.stepsize, schedule,
                           absl::StrCat("stage ", row.index));
      ASSIGN_OR_RETURN(row.noise_scale,
                       Scale(lw * row.stepsize / 4.0, budget, q.dimension));
      schedule.stages.push_back(row);
    }
    schedule.notes.push_back(
        "stepsize is the inner Phased-SGD eta; noise is its first release");
    return schedule;
  }

  if (a == "psa") {
    ASSIGN_OR_RETURN(PsaPlan plan, PlanPsa(q.n));
    double radius = q.diameter;
    for (int k = 1; k <= plan.stages; ++k) {
      StageRow row;
      row.index = k;
      row.size = plan.segment_size;
      row.radius = radius;
      row.stepsize = DefaultStepsize(radius, q.lipschitz, plan.segment_size,
                                     q.dimension, budget);
      row.stepsize = Clamp(q, row.stepsize, schedule, absl::StrCat("stage ", k));
      ASSIGN_OR_RETURN(row.noise_scale, Scale(q.lipschitz * row.stepsize / 4.0,
                                              budget, q.dimension));
      schedule.stages.push_back(row);
      radius /= 2.0;
    }
    schedule.notes.push_back(
        "radius is R_{k-1}, the ball radius used in stage k");
    return schedule;
  }

  if (a == "psa2") {
    const double chi0 = q.chi0.value_or(q.lipschitz * q.diameter);
    ASSIGN_OR_RETURN(Psa2Plan plan,
                     PlanPsa2(q.n, q.dimension, q.theta, q.tnc_lambda,
                              q.lipschitz, chi0, budget));
    for (int k = 1; k <= plan.stages; ++k) {
      StageRow row;
      row.index = k;
      row.size = plan.segment_size;
      row.stepsize = std::ldexp(plan.gamma0, -k);
      schedule.stages.push_back(row);
    }
    schedule.notes.push_back(absl::StrFormat("gamma0 = %.17g", plan.gamma0));
    schedule.notes.push_back(
        "stepsize column is the proximal parameter gamma_k");
    if (plan.gamma0 < q.diameter / q.lipschitz) {
      schedule.notes.push_back("gamma0 is below diameter / L");
    }
    return schedule;
  }

  if (a == "iterated_phased_sgd") {
    ASSIGN_OR_RETURN(std::vector<int64_t> sizes,
                     IteratedPhasedSgdSizes(q.n, q.theta_bar));
    for (size_t t = 0; t < sizes.size(); ++t) {
      StageRow row;
      row.index = static_cast<int>(t) + 1;
      row.size = sizes[t];
      row.stepsize = DefaultStepsize(q.diameter, q.lipschitz, row.size,
                                     q.dimension, budget);
      row.stepsize = Clamp(q, row.stepsize, schedule,
                           absl::StrCat("stage ", row.index));
      ASSIGN_OR_RETURN(row.noise_scale, Scale(q.lipschitz * row.stepsize / 4.0,
                                              budget, q.dimension));
      schedule.stages.push_back(row);
    }
    if (q.theta_bar < IteratedThetaBarThreshold(q.n)) {
      schedule.notes.push_back(absl::StrFormat(
          "theta_bar %.6g is below the threshold %.6g for this n",
          q.theta_bar, IteratedThetaBarThreshold(q.n)));
    }
    schedule.notes.push_back(
        "stepsize is the inner Phased-SGD eta; noise is its first release");
    return schedule;
  }

  if (a == "epoch_dp_sgd" || a == "faster_dpsgd_sc") {
    if (!(q.strong_convexity > 0.0)) {
      return absl::InvalidArgumentError(
          "Epoch schedules need strong_convexity > 0.");
    }
    int64_t n = q.n;
    int64_t n1 = q.n1;
    std::optional<double> eta1 = q.eta1;
    if (a == "faster_dpsgd_sc") {
      if (!q.smoothness.has_value()) {
        return absl::InvalidArgumentError("faster_dpsgd_sc needs smoothness.");
      }
      const double kappa = *q.smoothness / q.strong_convexity;
      ASSIGN_OR_RETURN(n1, FasterFirstEpochSize(q.tau, kappa));
      n = q.n / 2;
      eta1 = 1.0 / (4.0 * *q.smoothness);
      ASSIGN_OR_RETURN(std::vector<int64_t> first,
                       IteratedPhasedSgdSizes(n, 2.0));
      schedule.notes.push_back(absl::StrCat(
          "first half (", n, " samples): iterated Phased-SGD with ",
          first.size(), " stages; epochs below run on the second half"));
      if (static_cast<double>(q.n) < std::pow(kappa, q.tau)) {
        schedule.notes.push_back("n is below kappa^tau");
      }
    }
    if (!eta1.has_value()) {
      return absl::InvalidArgumentError("epoch_dp_sgd needs eta1.");
    }
    ASSIGN_OR_RETURN(std::vector<int64_t> sizes, EpochSizes(n, n1));
    const double eta = Clamp(q, *eta1, schedule, "eta1");
    for (size_t i = 0; i < sizes.size(); ++i) {
      StageRow row;
      row.index = static_cast<int>(i) + 1;
      row.size = sizes[i];
      row.stepsize = std::ldexp(eta, -static_cast<int>(i));
      ASSIGN_OR_RETURN(
          row.noise_scale,
          Scale(2.0 * q.lipschitz * q.lipschitz /
                    (q.strong_convexity * static_cast<double>(row.size)),
                budget, q.dimension));
      schedule.stages.push_back(row);
    }
    return schedule;
  }

  return absl::InvalidArgumentError(
      absl::StrCat("Unknown algorithm '", a, "'."));
}

}  // namespace dpsco
