// Copyright 2026 The dualqfi Authors
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

#ifndef DUALQFI_FIT_H
#define DUALQFI_FIT_H

#include <optional>
#include <span>
#include <vector>

namespace dualqfi {

struct ScalingPoint {
    double L;
    double y;
    double sigma = 0.0;  // 0 for unweighted fits
};

struct PowerFit {
    double a = 0.0, b = 0.0, c = 0.0;
    /// Standard errors; NaN where undetermined (e.g. c when b = 0).
    double sigma_a = 0.0, sigma_b = 0.0, sigma_c = 0.0;
    /// sqrt(sum of squared (weighted) residuals).
    double residual_norm = 0.0;
    /// True when the data is constant and the fit collapsed to b = 0, c = 0.
    bool flat = false;
};

inline constexpr double kExponentMin = -0.5;
inline constexpr double kExponentMax = 2.5;

/// Least-squares fit of y = a + b L^c. For fixed c, (a, b) solve a weighted
/// linear problem; c is found by a grid scan over [-0.5, 2.5] refined with
/// Brent's method. Needs at least three distinct sizes; throws
/// std::invalid_argument otherwise.
PowerFit fit_power(std::span<const ScalingPoint> points);

struct CollapsePoint {
    double L;
    double p;
    double y;
    double sigma = 0.0;
};

struct CollapseFit {
    double p_c = 0.0;
    double nu = 0.0;
    /// Houdayer-Hartmann quality S at the optimum (about 1 for a good collapse
    /// with honest error bars).
    double quality = 0.0;
    size_t terms = 0;
};

struct CollapseOptions {
    double nu_min = 0.3;
    double nu_max = 3.0;
    /// Defaults to the p range of the data.
    std::optional<double> p_min;
    std::optional<double> p_max;
};

/// Quality of collapse for y(p, L) = F((p - p_c) L^{1/nu}); each point is
/// compared to the linear interpolation of every other size's curve.
/// Returns nullopt when no point overlaps another size's scaled range.
std::optional<std::pair<double, size_t>> collapse_cost(std::span<const CollapsePoint> data, double p_c, double nu);

/// Minimizes collapse_cost by a grid search followed by nested Brent
/// refinement. Throws std::invalid_argument with fewer than three sizes or
/// when the scaled curves never overlap.
CollapseFit collapse_fit(std::span<const CollapsePoint> data, const CollapseOptions &options = {});

/// First x at which the piecewise-linear curve (xs, ys) crosses `level`.
std::optional<double> level_crossing(std::span<const double> xs, std::span<const double> ys, double level);

/// First x at which two piecewise-linear curves on the same grid cross.
std::optional<double> curve_crossing(std::span<const double> xs, std::span<const double> ya, std::span<const double> yb);

}  // namespace dualqfi

#endif
