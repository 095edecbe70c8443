#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "legendre/numerics.hpp"
#include "legendre/plane.hpp"
#include "legendre/vec2.hpp"

namespace legendre {

using VecFn = std::function<Vec2(double)>;

/// Smooth plane curve on [t0, t1] with derivative access. Derivatives not
/// supplied analytically are taken by finite differences of the highest
/// supplied one.
class ParamCurve {
public:
    static constexpr std::size_t kDefaultSamples = 2048;

    /// derivatives[k] is the (k+1)-th derivative, may be empty. Closed curves
    /// must close up to closure_tol in position (and 1e-6 in velocity when
    /// a first derivative is supplied).
    ParamCurve(Domain domain, VecFn position, std::array<VecFn, 3> derivatives = {},
               std::size_t samples = kDefaultSamples, double closure_tol = 1e-9);

    const Domain& domain() const { return domain_; }
    bool closed() const { return domain_.closed; }
    std::size_t samples() const { return samples_; }
    std::vector<double> grid() const { return domain_.grid(samples_); }
    ParamCurve with_samples(std::size_t n) const;

    Vec2 operator()(double t) const;
    Vec2 derivative(double t, int order) const;
    bool has_analytic(int order) const;

private:
    void check_domain(double t) const;

    Domain domain_;
    VecFn position_;
    std::array<VecFn, 3> derivatives_;
    std::size_t samples_;
};

/// Derivatives d^0..d^k at a base parameter.
struct Jet {
    double t = 0.0;
    std::vector<Vec2> d;
};

Jet curve_jet(const ParamCurve& curve, double t, int order);

enum class NormalProvenance { analytic, induced_regular, extended_through_singularities, user_supplied };
std::string to_string(NormalProvenance p);

/// Unit vector field along a curve.
class NormalField {
public:
    NormalField(Domain domain, VecFn eval, NormalProvenance provenance, std::array<VecFn, 3> derivatives = {});

    Vec2 operator()(double t) const { return eval_(domain_.wrap(t)); }
    Vec2 derivative(double t, int order) const;
    NormalProvenance provenance() const { return provenance_; }
    const Domain& domain() const { return domain_; }

private:
    Domain domain_;
    VecFn eval_;
    NormalProvenance provenance_;
    std::array<VecFn, 3> derivatives_;
};

Jet normal_jet(const NormalField& eta, double t, int order);

/// Grid nodes whose speed is below 1e-7 of the maximum.
std::vector<bool> singular_nodes(const NormedPlane& plane, const ParamCurve& curve);

/// eta = b^{-1}(gamma' / |gamma'|) for a regular curve.
NormalField induced_normal(PlanePtr plane, const ParamCurve& curve);

/// Smooth normal through isolated singular points; the sign follows
/// continuity of eta and is anchored to the induced normal at the first
/// regular node at or after t = 0 (clamped to the domain).
NormalField extend_normal(PlanePtr plane, const ParamCurve& curve);

/// max over regular grid nodes of |[gamma', b(eta)]| / (|gamma'| + 1e-12).
double legendre_residual(const NormedPlane& plane, const ParamCurve& curve, const NormalField& eta);

}  // namespace legendre
