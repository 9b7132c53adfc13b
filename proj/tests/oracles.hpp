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

// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the library's numeric code.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "enakit/corpus.hpp"

namespace oracle {

inline enakit::Codebook make_codebook(std::size_t k) {
  std::vector<enakit::Code> codes;
  for (std::size_t i = 0; i < k; ++i) codes.push_back({"C" + std::to_string(i), "Code " + std::to_string(i), ""});
  return enakit::Codebook(std::move(codes));
}

struct RandomCorpusLimits {
  std::size_t max_codes = 5;
  std::size_t max_lines = 20;
  std::size_t max_stanzas = 6;
  std::size_t max_units = 4;
};

// Corpus with 2..max_codes codes and 1..max_lines lines spread over random
// units, two conditions and stanza labels. Stanza labels repeat across units
// and may be non-contiguous within a unit.
inline enakit::Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusLimits& lim = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t k = pick(2, lim.max_codes);
  const std::size_t lines = pick(1, lim.max_lines);
  const std::size_t units = pick(1, lim.max_units);
  const std::size_t stanzas = pick(1, lim.max_stanzas);
  const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  std::bernoulli_distribution fire(density);
  std::vector<enakit::UtteranceRecord> records;
  for (std::size_t l = 0; l < lines; ++l) {
    enakit::UtteranceRecord r;
    const auto u = pick(0, units - 1);
    r.unit_id = "u" + std::to_string(u);
    r.condition = (u % 2 == 0) ? "a" : "b";
    r.conversation_id = "conv" + std::to_string(u);
    r.stanza_id = "s" + std::to_string(pick(0, stanzas - 1));
    r.speaker = r.unit_id;
    r.text = "line " + std::to_string(l);
    for (std::size_t c = 0; c < k; ++c) r.code_values.push_back(fire(rng) ? 1 : 0);
    records.push_back(std::move(r));
  }
  return enakit::Corpus(make_codebook(k), std::move(records));
}

using UnitId = std::pair<std::string, std::string>;  // (unit, condition)

// Naive co-occurrence counts: for every unit, every stanza label it uses and
// every pair i < j, scan all of the unit's lines.
inline std::map<UnitId, std::vector<std::vector<std::int64_t>>> naive_cumulative(const enakit::Corpus& corpus,
                                                                                  bool per_line) {
  const std::size_t k = corpus.codebook().size();
  const auto& recs = corpus.records();
  std::map<UnitId, std::set<std::string>> stanza_labels;
  for (const auto& r : recs) stanza_labels[{r.unit_id, r.condition}].insert(r.stanza_id);
  std::map<UnitId, std::vector<std::vector<std::int64_t>>> out;
  for (const auto& [unit, labels] : stanza_labels) {
    auto& m = out[unit];
    m.assign(k, std::vector<std::int64_t>(k, 0));
    for (const auto& label : labels) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          bool any_i = false, any_j = false, same_line = false;
          for (const auto& r : recs) {
            if (r.unit_id != unit.first || r.condition != unit.second || r.stanza_id != label) continue;
            any_i = any_i || r.code_values[i];
            any_j = any_j || r.code_values[j];
            same_line = same_line || (r.code_values[i] && r.code_values[j]);
          }
          if (per_line ? same_line : (any_i && any_j)) m[i][j] += 1;
        }
      }
    }
  }
  return out;
}

// Student-t CDF by adaptive Simpson integration of the density from 0.
inline double t_pdf(double x, double df) {
  const double logc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * std::numbers::pi);
  return std::exp(logc - (df + 1) / 2 * std::log1p(x * x / df));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                               double fb, double whole, double tol, int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double t_cdf(double t, double df) {
  if (t == 0) return 0.5;
  const double x = std::fabs(t);
  auto f = [df](double u) { return t_pdf(u, df); };
  double area = 0;
  // unit panels keep each Simpson run on a smooth, well-scaled piece
  for (double a = 0; a < x; a += 1.0) {
    const double b = std::min(a + 1.0, x);
    const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    area += adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 1e-14, 40);
  }
  return t > 0 ? 0.5 + area : 0.5 - area;
}

// Dense Moore-Penrose pseudoinverse via complete orthogonal decomposition.
inline Eigen::MatrixXd pinv(const Eigen::MatrixXd& a) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  return cod.pseudoInverse();
}

// Orthonormal DCT-II by direct summation in long double.
inline std::vector<double> dct2(const std::vector<double>& x, std::size_t count) {
  const std::size_t n = x.size();
  std::vector<double> out(count);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (std::size_t k = 0; k < count; ++k) {
    long double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * std::cos(pi * k * (2.0L * i + 1) / (2.0L * n));
    const long double scale = k == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
    out[k] = static_cast<double>(s * scale);
  }
  return out;
}

}  // namespace oracle
