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

#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace enakit::stats {

double mean(std::span<const double> sample);
// Unbiased (n - 1) sample variance.
double variance(std::span<const double> sample);

// Student-t distribution through the regularized incomplete beta function.
double student_t_cdf(double t, double df);
double student_t_quantile(double probability, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
};

WelchResult welch_t(std::span<const double> a, std::span<const double> b);

// Mean difference over the pooled standard deviation.
double cohens_d(std::span<const double> a, std::span<const double> b);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

Interval mean_ci(std::span<const double> sample, double level = 0.95);

struct GroupSummary {
  std::string condition;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  Interval ci95;
};

GroupSummary summarize(const std::string& condition, std::span<const double> sample);

struct StatReport {
  std::string dimension;
  GroupSummary a;
  GroupSummary b;
  WelchResult welch;
  double cohens_d = 0.0;
  double alpha = 0.05;
  bool significant = false;
};

StatReport compare_groups(const std::string& dimension, const std::string& condition_a,
                          std::span<const double> a, const std::string& condition_b,
                          std::span<const double> b, double alpha = 0.05);

}  // namespace enakit::stats
