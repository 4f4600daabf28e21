// Copyright 2026 The TSLab Authors. All Rights Reserved.
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

#include "tslab/special_functions.h"

#include <cmath>
#include <string>

#include "tslab/errors.h"

namespace tslab {
namespace {

constexpr double kCfEpsilon = 1e-16;
constexpr double kCfTiny = 1e-300;
constexpr int kCfMaxTerms = 1000;

// Continued fraction for B_x(a,b) / (x^a (1-x)^b / a), valid and quickly
// convergent for x < (a+1)/(a+b+2).
double BetaContinuedFraction(double x, double a, double b) {
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kCfTiny) d = kCfTiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= kCfMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    // Even step.
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < kCfTiny) d = kCfTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kCfTiny) c = kCfTiny;
    d = 1.0 / d;
    f *= d * c;
    // Odd step.
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < kCfTiny) d = kCfTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kCfTiny) c = kCfTiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < kCfEpsilon) return f;
  }
  throw NumericalDegeneracy("RegIncBeta: continued fraction did not converge");
}

}  // namespace

double RegIncBeta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("RegIncBeta: x must lie in [0, 1]");
  }
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("RegIncBeta: a and b must be positive and finite");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(x, a, b) / a;
  }
  return 1.0 - front * BetaContinuedFraction(1.0 - x, b, a) / b;
}

double Erfc(double z) { return std::erfc(z); }

double CapProbability(int d) {
  if (d < 2) throw InvalidArgument("CapProbability: d must be >= 2");
  const double dd = static_cast<double>(d);
  return 0.5 * RegIncBeta(1.0 - 1.0 / dd, 0.5 * (dd + 1.0), 0.5);
}

double GaussianUnitTail() { return 0.5 * Erfc(1.0 / std::sqrt(2.0)); }

}  // namespace tslab
