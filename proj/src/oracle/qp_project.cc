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

#include "dpsco/oracle/qp_project.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "Eigen/Cholesky"
#include "Eigen/QR"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/base/status_macros.h"

namespace dpsco::oracle {
namespace {

// g(x) <= 0 with g either a ball ||u - c||^2 - r^2 or linear a'x - b. When
// `slack` >= 0 the constraint reads g(x) - x[slack] <= 0.
struct Constraint {
  bool ball = false;
  Eigen::VectorXd c;
  double r2 = 0.0;
  Eigen::VectorXd a;
  double b = 0.0;
  int slack = -1;
};

struct Problem {
  int d = 0;      // Leading coordinates that hold u.
  int nvar = 0;
  Eigen::VectorXd qdiag;  // Objective 0.5 x'diag(qdiag)x + q'x.
  Eigen::VectorXd q;
  std::vector<Constraint> cons;
};

double Eval(const Problem& p, const Constraint& k, const Eigen::VectorXd& x) {
  double g = k.ball ? (x.head(p.d) - k.c).squaredNorm() - k.r2
                    : k.a.dot(x) - k.b;
  if (k.slack >= 0) g -= x[k.slack];
  return g;
}

bool StrictlyFeasible(const Problem& p, const Eigen::VectorXd& x) {
  for (const Constraint& k : p.cons) {
    if (!(Eval(p, k, x) < 0.0)) return false;
  }
  return true;
}

// Gradient and Hessian of t * objective - sum log(-g).
void Derivatives(const Problem& p, const Eigen::VectorXd& x, double t,
                 Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
  grad = t * (p.qdiag.cwiseProduct(x) + p.q);
  hess = (t * p.qdiag).asDiagonal();
  Eigen::VectorXd dg(p.nvar);
  for (const Constraint& k : p.cons) {
    const double g = Eval(p, k, x);
    const double inv = -1.0 / g;
    if (k.ball) {
      dg.setZero();
      dg.head(p.d) = 2.0 * (x.head(p.d) - k.c);
      hess.topLeftCorner(p.d, p.d).diagonal().array() += 2.0 * inv;
    } else {
      dg = k.a;
    }
    if (k.slack >= 0) dg[k.slack] -= 1.0;
    grad += inv * dg;
    hess.noalias() += (inv * inv) * dg * dg.transpose();
  }
}

// Damped Newton on the barrier function for a fixed t. Returns the number of
// steps taken, -1 if the direction could not be computed, or -2 once
// rounding prevents further progress.
int Center(const Problem& p, double t, Eigen::VectorXd& x,
           const int* stop_slack) {
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int it = 1; it <= 200; ++it) {
    Derivatives(p, x, t, grad, hess);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    if (ldlt.info() != Eigen::Success) return -1;
    const Eigen::VectorXd dx = -ldlt.solve(grad);
    if (!dx.allFinite()) return -1;
    const double dec2 = -grad.dot(dx);
    if (dec2 <= 1e-22) return it;
    double step = dec2 > 0.0625 ? 1.0 / (1.0 + std::sqrt(dec2)) : 1.0;
    Eigen::VectorXd next = x + step * dx;
    int halvings = 0;
    while (!StrictlyFeasible(p, next) && halvings < 80) {
      step *= 0.5;
      next = x + step * dx;
      ++halvings;
    }
    if (halvings == 80) return -2;
    x = std::move(next);
    if (stop_slack != nullptr && x[*stop_slack] < 0.0) return it;
    if (dec2 <= 1e-16 && step == 1.0) return it;
  }
  return -2;
}

Eigen::VectorXd ConstraintGradient(const Problem& p, const Constraint& k,
                                   const Eigen::VectorXd& x) {
  Eigen::VectorXd dg;
  if (k.ball) {
    dg = Eigen::VectorXd::Zero(p.nvar);
    dg.head(p.d) = 2.0 * (x.head(p.d) - k.c);
  } else {
    dg = k.a;
  }
  return dg;
}

struct KktPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;  // One per constraint; zero when inactive.
};

// Max of stationarity norm, primal violation, dual violation and
// complementarity.
double KktResidual(const Problem& p, const KktPoint& z) {
  Eigen::VectorXd stationarity = p.qdiag.cwiseProduct(z.x) + p.q;
  double worst = 0.0;
  for (size_t j = 0; j < p.cons.size(); ++j) {
    const double g = Eval(p, p.cons[j], z.x);
    stationarity += z.lambda[j] * ConstraintGradient(p, p.cons[j], z.x);
    worst = std::max({worst, g, -z.lambda[j], std::abs(z.lambda[j] * g)});
  }
  return std::max(worst, stationarity.norm());
}

// Newton's method on the KKT equations with `active` held at equality.
KktPoint SolveActive(const Problem& p, const KktPoint& start,
                     const std::vector<int>& active) {
  const int na = static_cast<int>(active.size());
  KktPoint z = start;
  for (size_t j = 0; j < p.cons.size(); ++j) {
    if (std::find(active.begin(), active.end(), j) == active.end()) {
      z.lambda[j] = 0.0;
    }
  }
  const int n = p.nvar + na;
  for (int it = 0; it < 50; ++it) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd f(n);
    jac.topLeftCorner(p.nvar, p.nvar).diagonal() = p.qdiag;
    f.head(p.nvar) = p.qdiag.cwiseProduct(z.x) + p.q;
    for (int a = 0; a < na; ++a) {
      const Constraint& k = p.cons[active[a]];
      const Eigen::VectorXd dg = ConstraintGradient(p, k, z.x);
      const double lambda = z.lambda[active[a]];
      f.head(p.nvar) += lambda * dg;
      f[p.nvar + a] = Eval(p, k, z.x);
      if (k.ball) {
        jac.topLeftCorner(p.d, p.d).diagonal().array() += 2.0 * lambda;
      }
      jac.block(0, p.nvar + a, p.nvar, 1) = dg;
      jac.block(p.nvar + a, 0, 1, p.nvar) = dg.transpose();
    }
    if (f.norm() <= 1e-15) break;
    const Eigen::VectorXd delta =
        -jac.completeOrthogonalDecomposition().solve(f);
    if (!delta.allFinite()) break;
    z.x += delta.head(p.nvar);
    for (int a = 0; a < na; ++a) z.lambda[active[a]] += delta[p.nvar + a];
    if (delta.norm() <= 1e-16 * (1.0 + z.x.norm())) break;
  }
  return z;
}

// Lawson-Hanson: min |g * lambda - b| subject to lambda >= 0.
Eigen::VectorXd Nnls(const Eigen::MatrixXd& g, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(g.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> free(n, false);
  for (int outer = 0; outer < 3 * n + 3; ++outer) {
    const Eigen::VectorXd w = g.transpose() * (b - g * x);
    int enter = -1;
    double best = 1e-14;
    for (int j = 0; j < n; ++j) {
      if (!free[j] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) break;
    free[enter] = true;
    for (int inner = 0; inner < 3 * n + 3; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < n; ++j) {
        if (free[j]) idx.push_back(j);
      }
      Eigen::MatrixXd sub(g.rows(), idx.size());
      for (size_t k = 0; k < idx.size(); ++k) sub.col(k) = g.col(idx[k]);
      const Eigen::VectorXd z = sub.completeOrthogonalDecomposition().solve(b);
      if ((z.array() > 0.0).all()) {
        x.setZero();
        for (size_t k = 0; k < idx.size(); ++k) x[idx[k]] = z[k];
        break;
      }
      double alpha = 1.0;
      for (size_t k = 0; k < idx.size(); ++k) {
        if (z[k] <= 0.0) {
          alpha = std::min(alpha, x[idx[k]] / (x[idx[k]] - z[k]));
        }
      }
      for (size_t k = 0; k < idx.size(); ++k) {
        x[idx[k]] += alpha * (z[k] - x[idx[k]]);
        if (x[idx[k]] <= 1e-15) {
          x[idx[k]] = 0.0;
          free[idx[k]] = false;
        }
      }
    }
  }
  return x;
}

// Active-set refinement seeded by the constraints whose central-path
// multiplier is clearly positive. Degenerate vertices have many multiplier
// vectors, so the multipliers come from a nonnegative least-squares fit.
KktPoint Polish(const Problem& p, const KktPoint& start) {
  std::vector<int> active;
  for (size_t j = 0; j < p.cons.size(); ++j) {
    if (start.lambda[j] > 1e-5) active.push_back(static_cast<int>(j));
  }
  const auto least_confident = [&]() {
    return std::min_element(active.begin(), active.end(), [&](int a, int b) {
      return start.lambda[a] < start.lambda[b];
    });
  };
  KktPoint best = start;
  double best_residual = KktResidual(p, start);
  std::set<std::vector<int>> visited;
  for (int round = 0; round < 8 * static_cast<int>(p.cons.size()) + 8;
       ++round) {
    std::sort(active.begin(), active.end());
    if (!visited.insert(active).second) break;
    KktPoint z = SolveActive(p, start, active);
    if (!z.x.allFinite()) break;

    double mismatch = 0.0;
    for (int j : active) {
      mismatch = std::max(mismatch, std::abs(Eval(p, p.cons[j], z.x)));
    }
    if (mismatch > 1e-11) {
      // More equalities than the geometry allows.
      active.erase(least_confident());
      continue;
    }

    int add = -1;
    double most_violated = 1e-13;
    for (size_t j = 0; j < p.cons.size(); ++j) {
      const double g = Eval(p, p.cons[j], z.x);
      if (g > most_violated &&
          std::find(active.begin(), active.end(), j) == active.end()) {
        most_violated = g;
        add = static_cast<int>(j);
      }
    }
    if (add >= 0) {
      active.push_back(add);
      continue;
    }

    if (!active.empty()) {
      Eigen::MatrixXd grads(p.nvar, active.size());
      for (size_t a = 0; a < active.size(); ++a) {
        grads.col(a) = ConstraintGradient(p, p.cons[active[a]], z.x);
      }
      const Eigen::VectorXd lambda =
          Nnls(grads, -(p.qdiag.cwiseProduct(z.x) + p.q));
      KktPoint fitted = z;
      fitted.lambda.setZero();
      for (size_t a = 0; a < active.size(); ++a) {
        fitted.lambda[active[a]] = lambda[a];
      }
      const double r = KktResidual(p, fitted);
      if (r < best_residual) {
        best = fitted;
        best_residual = r;
      }
      if (r <= 1e-13) break;
    } else {
      const double r = KktResidual(p, z);
      if (r < best_residual) {
        best = z;
        best_residual = r;
      }
      break;
    }

    int drop = -1;
    double most_negative = 0.0;
    for (int j : active) {
      if (z.lambda[j] < most_negative) {
        most_negative = z.lambda[j];
        drop = j;
      }
    }
    if (drop < 0) break;
    active.erase(std::find(active.begin(), active.end(), drop));
  }
  return best;
}

absl::Status AddSet(const FeasibleSet& set, Problem& p,
                    std::vector<int>& l1_offsets) {
  switch (set.kind()) {
    case FeasibleSet::Kind::kL2Ball: {
      Constraint k;
      k.ball = true;
      k.c = set.center();
      k.r2 = set.radius() * set.radius();
      p.cons.push_back(k);
      return absl::OkStatus();
    }
    case FeasibleSet::Kind::kBox:
      for (int i = 0; i < p.d; ++i) {
        Constraint up;
        up.a = Eigen::VectorXd::Zero(p.d);
        up.a[i] = 1.0;
        up.b = set.upper()[i];
        Constraint lo;
        lo.a = Eigen::VectorXd::Zero(p.d);
        lo.a[i] = -1.0;
        lo.b = -set.lower()[i];
        p.cons.push_back(up);
        p.cons.push_back(lo);
      }
      return absl::OkStatus();
    case FeasibleSet::Kind::kL1Ball: {
      // |u_i| <= s_i, sum s <= r.
      l1_offsets.push_back(p.nvar);
      const int offset = p.nvar;
      p.nvar += p.d;
      for (int i = 0; i < p.d; ++i) {
        for (double sign : {1.0, -1.0}) {
          Constraint k;
          k.a = Eigen::VectorXd::Zero(offset + p.d);
          k.a[i] = sign;
          k.a[offset + i] = -1.0;
          p.cons.push_back(k);
        }
      }
      Constraint sum;
      sum.a = Eigen::VectorXd::Zero(offset + p.d);
      sum.a.tail(p.d).setOnes();
      sum.b = set.radius();
      p.cons.push_back(sum);
      return absl::OkStatus();
    }
    case FeasibleSet::Kind::kIntersection:
      for (const FeasibleSet& member : set.members()) {
        RETURN_IF_ERROR(AddSet(member, p, l1_offsets));
      }
      return absl::OkStatus();
  }
  return absl::InternalError("Unknown set kind.");
}

void PadConstraints(Problem& p) {
  for (Constraint& k : p.cons) {
    if (!k.ball && k.a.size() < p.nvar) {
      const Eigen::Index old = k.a.size();
      k.a.conservativeResize(p.nvar);
      k.a.tail(p.nvar - old).setZero();
    }
  }
}

// Phase I: minimize s subject to g_j(x) <= s and s >= -1, stopping as soon
// as s < 0.
absl::StatusOr<Eigen::VectorXd> FindInterior(const Problem& p,
                                             const Eigen::VectorXd& guess,
                                             int* steps) {
  Problem q = p;
  const int slack = p.nvar;
  q.nvar = p.nvar + 1;
  PadConstraints(q);
  for (Constraint& k : q.cons) {
    if (!k.ball) {
      k.a.conservativeResize(q.nvar);
      k.a[slack] = 0.0;
    }
    k.slack = slack;
  }
  Constraint floor;
  floor.a = Eigen::VectorXd::Zero(q.nvar);
  floor.a[slack] = -1.0;
  floor.b = 1.0;
  q.cons.push_back(floor);
  q.qdiag = Eigen::VectorXd::Zero(q.nvar);
  q.q = Eigen::VectorXd::Zero(q.nvar);
  q.q[slack] = 1.0;

  Eigen::VectorXd x(q.nvar);
  x.head(p.nvar) = guess;
  double worst = -1.0;
  for (const Constraint& k : p.cons) worst = std::max(worst, Eval(p, k, guess));
  if (worst < 0.0) return guess;
  x[slack] = worst + 1.0;

  const double m = static_cast<double>(q.cons.size());
  for (double t = 1.0; m / t > 1e-14; t *= 10.0) {
    const int taken = Center(q, t, x, &slack);
    if (taken < 0) return absl::InternalError("Phase I Newton step failed.");
    *steps += taken;
    if (x[slack] < 0.0) return Eigen::VectorXd(x.head(p.nvar));
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "Intersection has no interior point (phase I optimum %.3g).", x[slack]));
}

}  // namespace

absl::StatusOr<QpReport> QpProjectWithReport(std::span<const FeasibleSet> sets,
                                             const Eigen::VectorXd& point,
                                             double tol) {
  if (sets.empty()) return absl::InvalidArgumentError("No sets given.");
  const int d = static_cast<int>(point.size());
  if (d < 1 || d > 50) {
    return absl::InvalidArgumentError(
        absl::StrCat("Oracle projection supports 1 <= d <= 50, got ", d, "."));
  }
  Problem p;
  p.d = d;
  p.nvar = d;
  std::vector<int> l1_offsets;
  for (const FeasibleSet& set : sets) {
    if (set.dimension() != d) {
      return absl::InvalidArgumentError("Set dimension mismatch.");
    }
    RETURN_IF_ERROR(AddSet(set, p, l1_offsets));
  }
  PadConstraints(p);
  p.qdiag = Eigen::VectorXd::Zero(p.nvar);
  p.qdiag.head(d).setConstant(2.0);
  p.q = Eigen::VectorXd::Zero(p.nvar);
  p.q.head(d) = -2.0 * point;

  Eigen::VectorXd guess(p.nvar);
  guess.head(d) = point;
  for (int offset : l1_offsets) {
    guess.segment(offset, d) = point.cwiseAbs().array() + 1.0;
  }
  QpReport report;
  ASSIGN_OR_RETURN(Eigen::VectorXd x,
                   FindInterior(p, guess, &report.newton_steps));

  const double m = static_cast<double>(p.cons.size());
  double t = 1.0;
  for (; m / t > 1e-7; t *= 10.0) {
    const int taken = Center(p, t, x, nullptr);
    if (taken == -1) {
      return absl::InternalError("Barrier Newton step failed.");
    }
    if (taken == -2) break;
    report.newton_steps += taken;
  }

  // Central-path multipliers seed the polish; keep whichever point has the
  // smaller KKT residual.
  KktPoint barrier{x, Eigen::VectorXd(p.cons.size())};
  for (size_t j = 0; j < p.cons.size(); ++j) {
    barrier.lambda[j] = -1.0 / (t * Eval(p, p.cons[j], x));
  }
  const KktPoint polished = Polish(p, barrier);
  const double barrier_residual = KktResidual(p, barrier);
  const double polished_residual = KktResidual(p, polished);
  if (polished.x.allFinite() && polished_residual < barrier_residual) {
    x = polished.x;
    report.kkt_residual = polished_residual;
  } else {
    report.kkt_residual = barrier_residual;
  }
  if (!(report.kkt_residual <= tol)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "Oracle projection stopped with KKT residual %.3g above %.3g.",
        report.kkt_residual, tol));
  }
  report.point = x.head(d);
  return report;
}

absl::StatusOr<Eigen::VectorXd> QpProject(std::span<const FeasibleSet> sets,
                                          const Eigen::VectorXd& point,
                                          double tol) {
  ASSIGN_OR_RETURN(QpReport report, QpProjectWithReport(sets, point, tol));
  return std::move(report.point);
}

absl::StatusOr<Eigen::VectorXd> ProjectSimple(const FeasibleSet& set,
                                              const Eigen::VectorXd& point) {
  if (point.size() != set.dimension()) {
    return absl::InvalidArgumentError("Point dimension mismatch.");
  }
  switch (set.kind()) {
    case FeasibleSet::Kind::kL2Ball: {
      const Eigen::VectorXd diff = point - set.center();
      const double norm = diff.norm();
      if (norm <= set.radius()) return point;
      return Eigen::VectorXd(set.center() + diff * (set.radius() / norm));
    }
    case FeasibleSet::Kind::kBox:
      return Eigen::VectorXd(point.cwiseMax(set.lower()).cwiseMin(set.upper()));
    case FeasibleSet::Kind::kL1Ball: {
      if (point.lpNorm<1>() <= set.radius()) return point;
      const Eigen::ArrayXd mag = point.cwiseAbs().array();
      double lo = 0.0;
      double hi = mag.maxCoeff();
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if ((mag - mid).max(0.0).sum() > set.radius()) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const Eigen::ArrayXd shrunk = (mag - hi).max(0.0);
      return Eigen::VectorXd(shrunk * point.array().sign());
    }
    case FeasibleSet::Kind::kIntersection:
      break;
  }
  return absl::InvalidArgumentError(
      "ProjectSimple does not handle intersections; use QpProject.");
}

}  // namespace dpsco::oracle
