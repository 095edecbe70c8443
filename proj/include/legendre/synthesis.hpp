#pragma once

#include <functional>

#include "legendre/analysis.hpp"

namespace legendre {

using ScalarFn = std::function<double(double)>;

/// Curvature pair plus initial data. The solution is anchored at t = 0
/// (clamped into the domain): gamma(anchor) = p, eta(anchor) = v.
struct SynthesisSpec {
    ScalarFn alpha;
    ScalarFn kappa;
    Domain domain{0.0, 1.0, false};
    Vec2 p{0.0, 0.0};
    Vec2 v{1.0, 0.0};
    std::size_t steps = 4096;
    std::size_t samples = ParamCurve::kDefaultSamples;
};

/// Integrates u' = kappa, gamma' = alpha b(phi(u)) with classical RK4;
/// eta = phi(u). Closed domains must close up to 1e-6.
LegendreCurve synthesize(PlanePtr plane, const SynthesisSpec& spec);

/// (M gamma, M eta), revalidated. With is_isometry_of_plane set, M must
/// preserve the norm on sampled unit vectors.
LegendreCurve apply_linear_map(const LegendreCurve& L, const Mat2& M, bool is_isometry_of_plane);

}  // namespace legendre
