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

#ifndef TSLAB_SPECIAL_FUNCTIONS_H_
#define TSLAB_SPECIAL_FUNCTIONS_H_

namespace tslab {

// Regularized incomplete beta I_x(a, b), by modified Lentz evaluation of the
// continued fraction. For x > (a+1)/(a+b+2) the symmetric form
// 1 - I_{1-x}(b, a) is used. Absolute accuracy about 1e-14 in practice.
double RegIncBeta(double x, double a, double b);

// Complementary error function.
double Erfc(double z);

// Probability that a uniform sample from the d-ball of radius sqrt(d) lands
// in the half-space u^T eta >= 1, for any unit u:
// 1/2 * I_{1-1/d}((d+1)/2, 1/2). Requires d >= 2.
double CapProbability(int d);

// Standard normal upper tail P(Z >= 1) = erfc(1/sqrt(2))/2.
double GaussianUnitTail();

}  // namespace tslab

#endif  // TSLAB_SPECIAL_FUNCTIONS_H_
