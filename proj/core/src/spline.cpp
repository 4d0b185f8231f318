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

#include "rotcd/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotcd/errors.hpp"

namespace rotcd {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y,
                         SplineEnd end)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw DimensionError("spline needs at least 2 knots with matching values");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i]))
      throw DomainError("spline knots must be strictly increasing");
  for (double v : y_)
    if (!std::isfinite(v)) throw DomainError("spline values must be finite");

  // Tridiagonal system for the knot second derivatives (Thomas algorithm).
  std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
  auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
  auto slope = [&](std::size_t i) { return (y_[i + 1] - y_[i]) / h(i); };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i] = h(i - 1);
    b[i] = 2.0 * (h(i - 1) + h(i));
    c[i] = h(i);
    d[i] = 6.0 * (slope(i) - slope(i - 1));
  }
  if (end == SplineEnd::kClampedZero) {
    b[0] = 2.0 * h(0);
    c[0] = h(0);
    d[0] = 6.0 * slope(0);
    a[n - 1] = h(n - 2);
    b[n - 1] = 2.0 * h(n - 2);
    d[n - 1] = -6.0 * slope(n - 2);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

std::size_t CubicSpline::segment(double t) const {
  const double span = x_.back() - x_.front();
  const double slack = 1e-12 * std::max(1.0, span);
  if (!(t >= x_.front() - slack && t <= x_.back() + slack))
    throw RangeError("spline evaluated at " + std::to_string(t) +
                     " outside its knot range");
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const auto i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  return std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, x_.size() - 2);
}

double CubicSpline::value(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double u = (x_[i + 1] - t) / h, v = (t - x_[i]) / h;
  return u * y_[i] + v * y_[i + 1] +
         ((u * u * u - u) * m_[i] + (v * v * v - v) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double u = (x_[i + 1] - t) / h, v = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         (-(3.0 * u * u - 1.0) * m_[i] + (3.0 * v * v - 1.0) * m_[i + 1]) * h /
             6.0;
}

}  // namespace rotcd
