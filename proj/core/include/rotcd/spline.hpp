// Copyright 2026 The rotcd Authors
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

// Cubic interpolating splines with an analytic first derivative.

#pragma once

#include <vector>

namespace rotcd {

enum class SplineEnd {
  kNatural,      // zero second derivative at both ends
  kClampedZero,  // zero first derivative at both ends
};

class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y,
              SplineEnd end = SplineEnd::kNatural);

  double value(double t) const;
  double derivative(double t) const;
  const std::vector<double>& knots() const { return x_; }

 private:
  std::size_t segment(double t) const;

  std::vector<double> x_, y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace rotcd
