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

#include "dualqfi/fit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace dualqfi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LinearSolve {
    double a, b, chi2;
};

/// Weighted least squares for y = a + b g(L) with g = L^c.
LinearSolve solve_ab(std::span<const ScalingPoint> pts, std::span<const double> w, double c) {
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (size_t i = 0; i < pts.size(); i++) {
        double g = std::pow(pts[i].L, c);
        s0 += w[i];
        s1 += w[i] * g;
        s2 += w[i] * g * g;
        t0 += w[i] * pts[i].y;
        t1 += w[i] * g * pts[i].y;
    }
    double det = s0 * s2 - s1 * s1;
    LinearSolve out{};
    if (std::abs(det) <= 1e-14 * std::max(1.0, s0 * s2)) {
        out.a = t0 / s0;
        out.b = 0.0;
    } else {
        out.a = (s2 * t0 - s1 * t1) / det;
        out.b = (s0 * t1 - s1 * t0) / det;
    }
    double chi2 = 0;
    for (size_t i = 0; i < pts.size(); i++) {
        double r = pts[i].y - out.a - out.b * std::pow(pts[i].L, c);
        chi2 += w[i] * r * r;
    }
    out.chi2 = chi2;
    return out;
}

}  // namespace

PowerFit fit_power(std::span<const ScalingPoint> points) {
    std::set<double> sizes;
    for (const auto &p : points) {
        if (!(p.L > 0) || !std::isfinite(p.y)) {
            throw std::invalid_argument("scaling points need L > 0 and finite y");
        }
        sizes.insert(p.L);
    }
    if (sizes.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least three distinct sizes, got " +
                                    std::to_string(sizes.size()));
    }
    bool weighted = std::all_of(points.begin(), points.end(), [](const ScalingPoint &p) { return p.sigma > 0; });
    std::vector<double> w(points.size(), 1.0);
    if (weighted) {
        for (size_t i = 0; i < points.size(); i++) {
            w[i] = 1.0 / (points[i].sigma * points[i].sigma);
        }
    }

    PowerFit fit;
    double ymin = points[0].y, ymax = points[0].y, ysum = 0;
    for (const auto &p : points) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
        ysum += p.y;
    }
    double mean = ysum / static_cast<double>(points.size());
    if (ymax - ymin <= 1e-12 * std::max(1.0, std::abs(mean))) {
        fit.a = mean;
        fit.flat = true;
        fit.sigma_c = kNaN;
        return fit;
    }

    const int grid = 300;
    double best_c = kExponentMin;
    double best_chi2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= grid; k++) {
        double c = kExponentMin + (kExponentMax - kExponentMin) * k / grid;
        double chi2 = solve_ab(points, w, c).chi2;
        if (chi2 < best_chi2) {
            best_chi2 = chi2;
            best_c = c;
        }
    }
    double step = (kExponentMax - kExponentMin) / grid;
    double lo = std::max(kExponentMin, best_c - step);
    double hi = std::min(kExponentMax, best_c + step);
    auto objective = [&](double c) { return solve_ab(points, w, c).chi2; };
    auto [c_opt, chi2_opt] = boost::math::tools::brent_find_minima(objective, lo, hi, 52);
    if (chi2_opt > best_chi2) {
        c_opt = best_c;
    }
    LinearSolve ab = solve_ab(points, w, c_opt);
    fit.a = ab.a;
    fit.b = ab.b;
    fit.c = c_opt;
    fit.residual_norm = std::sqrt(ab.chi2);

    size_t n = points.size();
    Eigen::MatrixXd J(n, 3);
    for (size_t i = 0; i < n; i++) {
        double g = std::pow(points[i].L, fit.c);
        double sw = std::sqrt(w[i]);
        J(i, 0) = sw;
        J(i, 1) = sw * g;
        J(i, 2) = sw * fit.b * g * std::log(points[i].L);
    }
    Eigen::Matrix3d normal = J.transpose() * J;
    double scale = 1.0;
    if (!weighted) {
        scale = n > 3 ? ab.chi2 / static_cast<double>(n - 3) : kNaN;
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
    if (lu.isInvertible()) {
        Eigen::Matrix3d cov = lu.inverse() * scale;
        fit.sigma_a = std::sqrt(std::max(0.0, cov(0, 0)));
        fit.sigma_b = std::sqrt(std::max(0.0, cov(1, 1)));
        fit.sigma_c = std::sqrt(std::max(0.0, cov(2, 2)));
    } else {
        fit.sigma_a = fit.sigma_b = fit.sigma_c = kNaN;
    }
    return fit;
}

std::optional<std::pair<double, size_t>> collapse_cost(std::span<const CollapsePoint> data, double p_c, double nu) {
    struct Scaled {
        double x, y, s2;
    };
    std::map<double, std::vector<Scaled>> curves;
    bool weighted = std::all_of(data.begin(), data.end(), [](const CollapsePoint &d) { return d.sigma > 0; });
    for (const auto &d : data) {
        double x = (d.p - p_c) * std::pow(d.L, 1.0 / nu);
        curves[d.L].push_back({x, d.y, weighted ? d.sigma * d.sigma : 0.0});
    }
    for (auto &[L, pts] : curves) {
        std::sort(pts.begin(), pts.end(), [](const Scaled &u, const Scaled &v) { return u.x < v.x; });
    }
    double total = 0.0;
    size_t terms = 0;
    for (const auto &[Li, pts_i] : curves) {
        for (const auto &pt : pts_i) {
            for (const auto &[Lj, pts_j] : curves) {
                if (Lj == Li || pts_j.size() < 2 || pt.x < pts_j.front().x || pt.x > pts_j.back().x) {
                    continue;
                }
                auto it = std::upper_bound(pts_j.begin(), pts_j.end(), pt.x,
                                           [](double x, const Scaled &s) { return x < s.x; });
                size_t k = it == pts_j.end() ? pts_j.size() - 2 : static_cast<size_t>(it - pts_j.begin()) - 1;
                const Scaled &lo = pts_j[k];
                const Scaled &hi = pts_j[k + 1];
                double dx = hi.x - lo.x;
                double t = dx > 0 ? (pt.x - lo.x) / dx : 0.5;
                double yi = lo.y + t * (hi.y - lo.y);
                double var = pt.s2 + (1 - t) * (1 - t) * lo.s2 + t * t * hi.s2;
                double r = pt.y - yi;
                total += weighted ? r * r / std::max(var, 1e-300) : r * r;
                terms++;
            }
        }
    }
    if (terms == 0) {
        return std::nullopt;
    }
    return std::make_pair(total / static_cast<double>(terms), terms);
}

CollapseFit collapse_fit(std::span<const CollapsePoint> data, const CollapseOptions &options) {
    std::set<double> sizes;
    double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    for (const auto &d : data) {
        sizes.insert(d.L);
        pmin = std::min(pmin, d.p);
        pmax = std::max(pmax, d.p);
    }
    if (sizes.size() < 3) {
        throw std::invalid_argument("data collapse needs at least three system sizes, got " +
                                    std::to_string(sizes.size()));
    }
    pmin = options.p_min.value_or(pmin);
    pmax = options.p_max.value_or(pmax);
    if (!(pmax > pmin)) {
        throw std::invalid_argument("data collapse needs a range of p values");
    }
    auto cost = [&](double pc, double nu) {
        auto c = collapse_cost(data, pc, nu);
        return c ? c->first : std::numeric_limits<double>::infinity();
    };
    const int np = 60, nn = 54;
    double best = std::numeric_limits<double>::infinity();
    double best_pc = pmin, best_nu = options.nu_min;
    for (int i = 0; i <= np; i++) {
        double pc = pmin + (pmax - pmin) * i / np;
        for (int k = 0; k <= nn; k++) {
            double nu = options.nu_min + (options.nu_max - options.nu_min) * k / nn;
            double c = cost(pc, nu);
            if (c < best) {
                best = c;
                best_pc = pc;
                best_nu = nu;
            }
        }
    }
    if (!std::isfinite(best)) {
        throw std::invalid_argument("scaled curves never overlap; cannot assess a collapse");
    }
    double dp = (pmax - pmin) / np, dn = (options.nu_max - options.nu_min) / nn;
    double nu_lo = std::max(options.nu_min, best_nu - dn), nu_hi = std::min(options.nu_max, best_nu + dn);
    auto inner = [&](double pc) {
        auto r = boost::math::tools::brent_find_minima([&](double nu) { return cost(pc, nu); }, nu_lo, nu_hi, 30);
        return r;
    };
    auto outer = boost::math::tools::brent_find_minima([&](double pc) { return inner(pc).second; },
                                                       std::max(pmin, best_pc - dp), std::min(pmax, best_pc + dp), 30);
    CollapseFit fit{best_pc, best_nu, best, 0};
    if (outer.second < best) {
        fit.p_c = outer.first;
        fit.nu = inner(outer.first).first;
        fit.quality = cost(fit.p_c, fit.nu);
        if (fit.quality > best) {
            fit = {best_pc, best_nu, best, 0};
        }
    }
    fit.terms = collapse_cost(data, fit.p_c, fit.nu)->second;
    return fit;
}

std::optional<double> level_crossing(std::span<const double> xs, std::span<const double> ys, double level) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("crossing needs matching x and y lengths");
    }
    for (size_t i = 0; i + 1 < xs.size(); i++) {
        double a = ys[i] - level, b = ys[i + 1] - level;
        if (a == 0.0) {
            return xs[i];
        }
        if ((a < 0) != (b < 0) || b == 0.0) {
            return xs[i] + (xs[i + 1] - xs[i]) * a / (a - b);
        }
    }
    return std::nullopt;
}

std::optional<double> curve_crossing(std::span<const double> xs, std::span<const double> ya, std::span<const double> yb) {
    if (ya.size() != xs.size() || yb.size() != xs.size()) {
        throw std::invalid_argument("crossing needs curves on a shared grid");
    }
    std::vector<double> diff(xs.size());
    for (size_t i = 0; i < xs.size(); i++) {
        diff[i] = ya[i] - yb[i];
    }
    return level_crossing(xs, diff, 0.0);
}

}  // namespace dualqfi
