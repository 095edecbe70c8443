#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "legendre/error.hpp"
#include "legendre/vec2.hpp"

namespace legendre {

/// Parameter interval; closed domains identify t1 with t0.
struct Domain {
    double t0 = 0.0;
    double t1 = 1.0;
    bool closed = false;

    double span() const { return t1 - t0; }
    bool contains(double t, double slack = 0.0) const;
    /// Reduces t into [t0, t1) for closed domains; identity otherwise.
    double wrap(double t) const;
    /// Uniform sample grid: n points on [t0, t1) when closed, on [t0, t1] otherwise.
    std::vector<double> grid(std::size_t n) const;
};

/// Finite-difference weights for the derivative of the given order at 0 on
/// an arbitrary stencil (Fornberg's recurrence).
std::vector<double> fd_weights(std::span<const double> offsets, int order);

/// Default step for a derivative of the given order. First derivatives use
/// span * 1e-4; higher orders use wider steps to keep roundoff below the
/// truncation error.
double fd_step(const Domain& dom, int order);

/// Stencil offsets (in units of h) giving fourth-order accuracy: central on
/// closed domains and in the interior, one-sided near open endpoints.
std::vector<double> fd_offsets(const Domain& dom, double t, int order, double h);

template <class F>
auto fd_derivative(const F& f, double t, int order, double h, const Domain& dom)
    -> std::decay_t<decltype(f(t))> {
    using R = std::decay_t<decltype(f(t))>;
    const std::vector<double> offsets = fd_offsets(dom, t, order, h);
    const std::vector<double> w = fd_weights(offsets, order);
    R acc{};
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (w[i] == 0.0) continue;
        acc = acc + f(dom.wrap(t + offsets[i] * h)) * w[i];
    }
    return acc * (1.0 / std::pow(h, order));
}

template <class F>
auto fd_derivative(const F& f, double t, int order, const Domain& dom) {
    return fd_derivative(f, t, order, fd_step(dom, order), dom);
}

/// Gauss-Legendre quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

/// Bracketed root of f on [a, b] where f(a), f(b) differ in sign.
double refine_root(const std::function<double(double)>& f, double a, double b);

/// Golden-section minimisation of f on [a, b].
struct Minimum {
    double x;
    double value;
};
Minimum golden_section(const std::function<double(double)>& f, double a, double b,
                       int max_iterations = 200, double tolerance = 1e-12);

struct Crossing {
    double t;
    int direction;  // +1 for a negative-to-positive crossing, -1 otherwise
};

struct ZeroScan {
    std::vector<Crossing> crossings;
    std::vector<double> touches;  // zero runs without a sign change
    bool all_zero = false;
};

/// Sign-change scan of sampled values. Samples with |v| <= threshold count
/// as zero; a crossing needs nonzero samples of opposite sign on its flanks.
/// When refine is given, each crossing is polished by a bracketed root find
/// on it; otherwise it is linearly interpolated.
ZeroScan scan_zeros(const Domain& dom, std::span<const double> grid,
                    std::span<const double> values, double threshold,
                    const std::function<double(double)>& refine = {});

double max_abs(std::span<const double> values);

/// Distance from p to the polyline through the given vertices.
double distance_to_polyline(Vec2 p, std::span<const Vec2> polyline);

/// Largest distance from any point of a to the polyline b.
double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> polyline_b);

/// Symmetric Hausdorff distance between two polylines (vertex-to-segment).
double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace legendre
