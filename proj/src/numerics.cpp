#include "legendre/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cstdint>
#include <limits>

namespace legendre {

bool Domain::contains(double t, double slack) const {
    return t >= t0 - slack && t <= t1 + slack;
}

double Domain::wrap(double t) const {
    if (!closed) return t;
    const double L = span();
    double s = std::fmod(t - t0, L);
    if (s < 0) s += L;
    if (s >= L) s -= L;
    return t0 + s;
}

std::vector<double> Domain::grid(std::size_t n) const {
    std::vector<double> g(n);
    if (n == 0) return g;
    if (n == 1) {
        g[0] = t0;
        return g;
    }
    const double step = closed ? span() / static_cast<double>(n) : span() / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = t0 + step * static_cast<double>(i);
    if (!closed) g.back() = t1;
    return g;
}

std::vector<double> fd_weights(std::span<const double> offsets, int order) {
    // Fornberg (1988), weights for evaluation point 0.
    const int n = static_cast<int>(offsets.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = offsets[0];
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = offsets[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][order];
    return w;
}

double fd_step(const Domain& dom, int order) {
    static constexpr double kRelative[] = {0.0, 1e-4, 5e-4, 2e-3, 5e-3};
    const int k = std::clamp(order, 1, 4);
    return dom.span() * kRelative[k];
}

std::vector<double> fd_offsets(const Domain& dom, double t, int order, double h) {
    if (order < 1 || order > 4) throw Error(ErrorKind::BadParameter, "derivative order must be in 1..4");
    // Central stencils of half-width m reach fourth order for these orders.
    const int m = order <= 2 ? 2 : 3;
    std::vector<double> offsets;
    const double slack = 1e-12 * dom.span();
    if (!dom.closed && !dom.contains(t, slack)) {
        throw Error(ErrorKind::OutOfDomain, "parameter outside the curve domain");
    }
    const bool room_left = dom.closed || t - m * h >= dom.t0 - slack;
    const bool room_right = dom.closed || t + m * h <= dom.t1 + slack;
    if (room_left && room_right) {
        for (int k = -m; k <= m; ++k) offsets.push_back(k);
        return offsets;
    }
    const int n = order + 4;  // one-sided, fourth order
    if (!room_left && !room_right) {
        throw Error(ErrorKind::OutOfDomain, "domain too short for the finite-difference stencil");
    }
    for (int k = 0; k < n; ++k) offsets.push_back(room_right ? k : -k);
    return offsets;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

double refine_root(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) {
        throw Error(ErrorKind::NoConvergence, "root bracket does not change sign");
    }
    std::uintmax_t iterations = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
    return 0.5 * (lo + hi);
}

Minimum golden_section(const std::function<double(double)>& f, double a, double b,
                       int max_iterations, double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iterations && std::abs(b - a) > tolerance; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

double max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

ZeroScan scan_zeros(const Domain& dom, std::span<const double> grid,
                    std::span<const double> values, double threshold,
                    const std::function<double(double)>& refine) {
    ZeroScan out;
    const std::size_t n = values.size();
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(values[i]) > threshold) nonzero.push_back(i);
    }
    if (nonzero.empty()) {
        out.all_zero = true;
        return out;
    }
    auto sign = [&](std::size_t i) { return values[i] > 0 ? 1 : -1; };

    auto handle = [&](std::size_t i, std::size_t j, double ti, double tj) {
        const bool adjacent = (j == i + 1) || (dom.closed && i == n - 1 && j == 0);
        if (sign(i) != sign(j)) {
            double t;
            if (refine) {
                t = refine_root(refine, ti, tj);
            } else {
                t = ti + (tj - ti) * values[i] / (values[i] - values[j]);
            }
            t = dom.wrap(t);
            if (dom.closed && std::abs(t - dom.t1) < 1e-9 * dom.span()) t = dom.t0;
            out.crossings.push_back({t, sign(j)});
        } else if (!adjacent) {
            // zero run strictly between i and j: report the smallest sample
            std::size_t best = (i + 1) % n;
            for (std::size_t k = (i + 1) % n; k != j; k = (k + 1) % n) {
                if (std::abs(values[k]) < std::abs(values[best])) best = k;
            }
            out.touches.push_back(grid[best]);
        }
    };

    for (std::size_t k = 0; k + 1 < nonzero.size(); ++k) {
        const std::size_t i = nonzero[k], j = nonzero[k + 1];
        handle(i, j, grid[i], grid[j]);
    }
    if (dom.closed) {
        const std::size_t i = nonzero.back(), j = nonzero.front();
        if (nonzero.size() > 1 || n > 1) handle(i, j, grid[i], grid[j] + dom.span());
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
    std::sort(out.touches.begin(), out.touches.end());
    return out;
}

double distance_to_polyline(Vec2 p, std::span<const Vec2> poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    double best = euclid(p - poly[0]);
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const Vec2 a = poly[i], b = poly[i + 1];
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        double s = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        best = std::min(best, euclid(p - (a + s * ab)));
    }
    return best;
}

double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> polyline_b) {
    double worst = 0.0;
    for (const Vec2& p : a) worst = std::max(worst, distance_to_polyline(p, polyline_b));
    return worst;
}

double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace legendre
