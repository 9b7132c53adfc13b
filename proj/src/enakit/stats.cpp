// Copyright 2026 The enakit Authors
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

#include "enakit/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "enakit/error.hpp"

namespace enakit::stats {

namespace {

void require_size(std::span<const double> sample, const char* who) {
  if (sample.size() < 2)
    fail(ErrorCode::kInvalidArgument, std::string(who) + ": sample needs at least 2 values");
  for (double x : sample)
    if (!std::isfinite(x)) fail(ErrorCode::kValue, std::string(who) + ": sample values must be finite");
}

}  // namespace

double mean(std::span<const double> sample) {
  if (sample.empty()) fail(ErrorCode::kEmptyInput, "mean: empty sample");
  double acc = 0.0;
  for (double x : sample) acc += x;
  return acc / static_cast<double>(sample.size());
}

double variance(std::span<const double> sample) {
  if (sample.size() < 2) fail(ErrorCode::kInvalidArgument, "variance: sample needs at least 2 values");
  const double m = mean(sample);
  double acc = 0.0;
  for (double x : sample) acc += (x - m) * (x - m);
  return acc / static_cast<double>(sample.size() - 1);
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) fail(ErrorCode::kParameter, "student_t_cdf: df must be positive");
  if (std::isnan(t)) fail(ErrorCode::kValue, "student_t_cdf: t is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  if (t == 0.0) return 0.5;
  // P(T < -|t|) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2).
  const double x = df / (df + t * t);
  const double tail = 0.5 * boost::math::ibeta(0.5 * df, 0.5, x);
  return t < 0.0 ? tail : 1.0 - tail;
}

double student_t_quantile(double probability, double df) {
  if (!(df > 0.0)) fail(ErrorCode::kParameter, "student_t_quantile: df must be positive");
  if (!(probability > 0.0 && probability < 1.0))
    fail(ErrorCode::kParameter, "student_t_quantile: probability must lie in (0, 1)");
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), probability);
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  require_size(a, "welch_t");
  require_size(b, "welch_t");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double va = variance(a) / na, vb = variance(b) / nb;
  if (va + vb == 0.0) fail(ErrorCode::kDegenerate, "welch_t: both samples have zero variance");
  WelchResult r;
  r.t = (mean(a) - mean(b)) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p_two_sided = std::min(1.0, 2.0 * student_t_cdf(-std::abs(r.t), r.df));
  return r;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  require_size(a, "cohens_d");
  require_size(b, "cohens_d");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double pooled = ((na - 1.0) * variance(a) + (nb - 1.0) * variance(b)) / (na + nb - 2.0);
  if (pooled == 0.0) fail(ErrorCode::kDegenerate, "cohens_d: pooled variance is zero");
  return (mean(a) - mean(b)) / std::sqrt(pooled);
}

Interval mean_ci(std::span<const double> sample, double level) {
  require_size(sample, "mean_ci");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::kParameter, "mean_ci: level must lie in (0, 1)");
  const double n = static_cast<double>(sample.size());
  const double m = mean(sample);
  const double half = student_t_quantile(0.5 * (1.0 + level), n - 1.0) * std::sqrt(variance(sample) / n);
  return {m - half, m + half};
}

GroupSummary summarize(const std::string& condition, std::span<const double> sample) {
  require_size(sample, "summarize");
  GroupSummary s;
  s.condition = condition;
  s.n = sample.size();
  s.mean = mean(sample);
  s.sd = std::sqrt(variance(sample));
  s.ci95 = mean_ci(sample, 0.95);
  return s;
}

StatReport compare_groups(const std::string& dimension, const std::string& condition_a,
                          std::span<const double> a, const std::string& condition_b,
                          std::span<const double> b, double alpha) {
  StatReport report;
  report.dimension = dimension;
  report.a = summarize(condition_a, a);
  report.b = summarize(condition_b, b);
  report.welch = welch_t(a, b);
  report.cohens_d = cohens_d(a, b);
  report.alpha = alpha;
  report.significant = report.welch.p_two_sided < alpha;
  return report;
}

}  // namespace enakit::stats
