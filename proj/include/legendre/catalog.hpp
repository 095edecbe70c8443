#pragma once

#include <string>
#include <vector>

#include "legendre/curve.hpp"

namespace legendre::catalog {

ParamCurve circle(double radius = 1.0, std::size_t samples = ParamCurve::kDefaultSamples);
ParamCurve ellipse(double a, double b, std::size_t samples = ParamCurve::kDefaultSamples);
/// (cos^3 t, sin^3 t) on [0, 2 pi).
ParamCurve astroid(std::size_t samples = ParamCurve::kDefaultSamples);
/// (t^2, t^3) on [-1, 1].
ParamCurve cusp_t2t3(std::size_t samples = ParamCurve::kDefaultSamples);
/// The plane's own circle of the given radius, parametrised by angle.
ParamCurve unit_circle_of_norm(PlanePtr plane, std::size_t samples = ParamCurve::kDefaultSamples,
                               double radius = 1.0);

/// Builds a catalog curve by name; params feed radius, or a and b. In a
/// non-Euclidean plane "circle" is the norm's circle of that radius.
ParamCurve by_name(const std::string& name, const std::vector<double>& params, PlanePtr plane,
                   std::size_t samples = ParamCurve::kDefaultSamples);

}  // namespace legendre::catalog
