#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "legendre/analysis.hpp"

namespace legendre {

/// gamma + d eta with the same normal; curvature (alpha + d kappa, kappa).
LegendreCurve parallel(const LegendreCurve& L, double d);

/// xi' = Db_eta(eta') = kappa rho(eta) b(xi).
Vec2 xi_derivative(const LegendreCurve& L, double t);

struct EvoluteFrame {
    ParamCurve e;
    NormalField nu;  // nu = -b^{-1}(eta)
    std::vector<double> t;
    std::vector<double> alpha;  // predicted (alpha / kappa)'
    std::vector<double> kappa;  // predicted kappa / rho(nu)
    std::vector<bool> masked;   // rho(nu) below 1e-6
    /// The pair (e, nu) validated at tolerance 1e-4.
    LegendreCurve as_legendre() const;
    PlanePtr plane;
};

/// e = gamma - (alpha / kappa) eta; KappaVanishes when kappa has a zero.
EvoluteFrame evolute(const LegendreCurve& L);

/// Predicted curvature pair of the evolute frame at t; RhoDegenerate when
/// rho(nu(t)) < 1e-6.
std::pair<double, double> evolute_frame_curvature(const LegendreCurve& L, double t);

/// Singular points of the parallels gamma + d eta for d sweeping the range
/// of -alpha/kappa (expanded 1%).
std::vector<Vec2> evolute_as_parallel_singularities(const LegendreCurve& L, std::size_t d_samples = 512);

struct EnvelopeResidual {
    double F = 0.0;
    double dF = 0.0;
    bool low_confidence = false;
};

/// F = [gamma - v, eta] and its t-derivative [gamma', eta] + [gamma - v, eta'].
EnvelopeResidual normal_envelope_residual(const LegendreCurve& L, double t, Vec2 v);

/// sigma = gamma(a) - int_a^t A xi' + d xi with A = int_a^t alpha, a = 0
/// clamped to the domain. The result is open unless it closes up.
LegendreCurve involute(const LegendreCurve& L, double d, std::size_t steps = 4096);

/// Predicted curvature pair of the involute at t.
std::pair<double, double> involute_curvature(const LegendreCurve& L, double d, double t);

struct PedalResult {
    ParamCurve curve;
    Vec2 p;
    std::vector<double> t;
    std::vector<Vec2> xi_a;
    std::vector<Vec2> zeta;
    std::vector<double> singular;  // kappa zeros, plus parameters with gamma(t) = p
    bool frontal = false;          // claimed only when p is off the curve
    double min_distance = 0.0;
    std::optional<NormalField> nu;
    /// (gamma_p, nu); requires frontal.
    LegendreCurve as_legendre(PlanePtr plane) const;
};

PedalResult pedal(const LegendreCurve& L, Vec2 p);

/// Closed-form derivative of the pedal curve: (kappa / [eta, xi]) zeta.
Vec2 pedal_derivative(const LegendreCurve& L, Vec2 p, double t);
Vec2 pedal_zeta(const LegendreCurve& L, Vec2 p, double t);

/// F = [gamma_p - v, b(gamma_p - p)] and dF/dt. When gamma_p(t) = p the line
/// is taken as a one-sided limit (step 1e-5) and flagged low confidence.
EnvelopeResidual pedal_envelope_residual(const LegendreCurve& L, Vec2 p, double t, Vec2 v);

struct OsculatingData {
    Vec2 center;
    double radius = 0.0;
    double d1 = 0.0;  // dD/ds with D = |gamma - center|^2, s arc length
    double d2 = 0.0;
};

OsculatingData osculating_data(const LegendreCurve& L, double t);
/// Arc-length derivatives of |gamma(s) - center|^2 at t.
std::pair<double, double> distance_squared_derivatives(const LegendreCurve& L, double t, Vec2 center);

/// d^2F/dt^2 at (t, e(t)) = [gamma'', eta] + (alpha / kappa) [eta, eta''].
double vertex_residual(const LegendreCurve& L, double t);

}  // namespace legendre
