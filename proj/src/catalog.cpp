#include "legendre/catalog.hpp"

#include <cmath>

#include "legendre/error.hpp"

namespace legendre::catalog {

namespace {
const Domain kLoop{0.0, kTwoPi, true};
}

ParamCurve circle(double radius, std::size_t samples) {
    if (!(radius > 0.0)) throw Error(ErrorKind::BadParameter, "circle radius must be positive");
    const double r = radius;
    return ParamCurve(
        kLoop, [r](double t) { return Vec2{r * std::cos(t), r * std::sin(t)}; },
        {[r](double t) { return Vec2{-r * std::sin(t), r * std::cos(t)}; },
         [r](double t) { return Vec2{-r * std::cos(t), -r * std::sin(t)}; },
         [r](double t) { return Vec2{r * std::sin(t), -r * std::cos(t)}; }},
        samples);
}

ParamCurve ellipse(double a, double b, std::size_t samples) {
    if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::BadParameter, "ellipse semi-axes must be positive");
    return ParamCurve(
        kLoop, [a, b](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; },
        {[a, b](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; },
         [a, b](double t) { return Vec2{-a * std::cos(t), -b * std::sin(t)}; },
         [a, b](double t) { return Vec2{a * std::sin(t), -b * std::cos(t)}; }},
        samples);
}

ParamCurve astroid(std::size_t samples) {
    return ParamCurve(
        kLoop,
        [](double t) {
            const double c = std::cos(t), s = std::sin(t);
            return Vec2{c * c * c, s * s * s};
        },
        {[](double t) {
             const double c = std::cos(t), s = std::sin(t);
             return Vec2{-3 * c * c * s, 3 * s * s * c};
         },
         [](double t) {
             const double c = std::cos(t), s = std::sin(t);
             return Vec2{6 * c * s * s - 3 * c * c * c, 6 * s * c * c - 3 * s * s * s};
         },
         [](double t) {
             const double c = std::cos(t), s = std::sin(t);
             return Vec2{21 * c * c * s - 6 * s * s * s, 6 * c * c * c - 21 * s * s * c};
         }},
        samples);
}

ParamCurve cusp_t2t3(std::size_t samples) {
    return ParamCurve(
        Domain{-1.0, 1.0, false}, [](double t) { return Vec2{t * t, t * t * t}; },
        {[](double t) { return Vec2{2 * t, 3 * t * t}; }, [](double t) { return Vec2{2.0, 6 * t}; },
         [](double) { return Vec2{0.0, 6.0}; }},
        samples);
}

ParamCurve unit_circle_of_norm(PlanePtr plane, std::size_t samples, double radius) {
    return ParamCurve(
        kLoop, [plane, radius](double t) { return radius * plane->circle_point(t); },
        {[plane, radius](double t) { return radius * plane->circle_tangent(t); },
         [plane, radius](double t) { return radius * plane->circle_second(t); }, VecFn{}},
        samples);
}

ParamCurve by_name(const std::string& name, const std::vector<double>& params, PlanePtr plane,
                   std::size_t samples) {
    auto param = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
    if (name == "circle") {
        // a circle of the plane's own norm
        if (plane && !plane->is_euclidean()) return unit_circle_of_norm(std::move(plane), samples, param(0, 1.0));
        return circle(param(0, 1.0), samples);
    }
    if (name == "ellipse") return ellipse(param(0, 2.0), param(1, 1.0), samples);
    if (name == "astroid") return astroid(samples);
    if (name == "cusp_t2t3") return cusp_t2t3(samples);
    if (name == "unit_circle_of_norm") return unit_circle_of_norm(std::move(plane), samples);
    throw Error(ErrorKind::ConfigError, "unknown catalog curve '" + name + "'");
}

}  // namespace legendre::catalog
