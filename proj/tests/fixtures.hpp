#pragma once

// Shared test fixtures built from the public API.

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "legendre/synthesis.hpp"

namespace legendre::fixture {

/// Coefficients (c0, c1, c2) of an even alpha = c0 + c1 cos t + c2 cos 2t
/// making the Euclidean front with kappa = sin t close: alpha is L2-orthogonal
/// to sin(1 - cos t) and cos(1 - cos t). Null vector of the 2x3 system,
/// scaled so c0 = 1.
inline std::array<double, 3> maslov_alpha_coefficients() {
    auto integral = [](auto f) {
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kTwoPi, 10, 1e-14);
    };
    double A[2][3];
    for (int k = 0; k < 3; ++k) {
        A[0][k] = integral([k](double t) { return std::cos(k * t) * std::sin(1 - std::cos(t)); });
        A[1][k] = integral([k](double t) { return std::cos(k * t) * std::cos(1 - std::cos(t)); });
    }
    // cross product of the two rows spans the null space
    const double n0 = A[0][1] * A[1][2] - A[0][2] * A[1][1];
    const double n1 = A[0][2] * A[1][0] - A[0][0] * A[1][2];
    const double n2 = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    return {1.0, n1 / n0, n2 / n0};
}

inline SynthesisSpec maslov_spec() {
    const auto c = maslov_alpha_coefficients();
    SynthesisSpec s;
    s.alpha = [c](double t) { return c[0] + c[1] * std::cos(t) + c[2] * std::cos(2 * t); };
    s.kappa = [](double t) { return std::sin(t); };
    s.domain = Domain{0.0, kTwoPi, true};
    s.p = {0.0, 0.0};
    s.v = {1.0, 0.0};
    return s;
}

}  // namespace legendre::fixture
