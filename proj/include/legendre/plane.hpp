#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "legendre/vec2.hpp"

namespace legendre {

enum class NormKind { euclidean, lp, fourier_radial };

/// Declarative description of a smooth, strictly convex, centrally
/// symmetric norm. fourier_radial describes the unit circle in polar form,
/// r(theta) = a0 + sum_k a_k cos(2 k theta).
struct NormSpec {
    NormKind kind = NormKind::euclidean;
    double p = 2.0;
    std::vector<double> coefficients;
    std::size_t table_size = 4096;

    static NormSpec euclidean() { return {}; }
    static NormSpec lp(double p) { return {NormKind::lp, p, {}, 4096}; }
    static NormSpec fourier(std::vector<double> coefficients) {
        return {NormKind::fourier_radial, 2.0, std::move(coefficients), 4096};
    }
};

std::string describe(const NormSpec& spec);

/// Analytic description of a norm: value, gradient and Hessian away from 0.
class NormModel {
public:
    virtual ~NormModel() = default;
    virtual double norm(Vec2 v) const = 0;
    virtual Vec2 gradient(Vec2 v) const = 0;
    virtual Mat2 hessian(Vec2 v) const = 0;
    /// Unit vector whose outward normal is parallel to n, when a closed form
    /// exists.
    virtual std::optional<Vec2> dual_point(Vec2 n) const { (void)n; return std::nullopt; }
};

/// A normed plane together with tables over its unit circle. The circle is
/// parametrised by angle as c(theta) = r(theta) (cos theta, sin theta).
/// Immutable after construction; every member is safe for concurrent reads.
class NormedPlane {
public:
    NormedPlane(NormSpec spec, std::unique_ptr<NormModel> model);

    const NormSpec& spec() const { return spec_; }
    bool is_euclidean() const { return spec_.kind == NormKind::euclidean; }

    double norm(Vec2 v) const;
    Vec2 gradient(Vec2 v) const;
    /// |norm(v) - 1| <= tol.
    bool is_unit(Vec2 v, double tol = 1e-9) const;
    Vec2 normalize(Vec2 v) const;

    // Unit circle in angular form.
    Vec2 circle_point(double theta) const;
    Vec2 circle_tangent(double theta) const;
    Vec2 circle_second(double theta) const;
    /// Continuous lift of the tangent angle of c at theta.
    double tangent_angle(double theta) const;

    /// b(v): the unit vector with v Birkhoff-orthogonal to b(v) and [v, b(v)] > 0.
    Vec2 birkhoff(Vec2 v) const;
    /// Inverse of b restricted to the unit circle.
    Vec2 birkhoff_inverse(Vec2 w) const;
    /// Same inverse, always via root finding on the tangent-angle lift.
    Vec2 birkhoff_inverse_root_find(Vec2 w) const;
    /// Directional derivative Db_v(w).
    Vec2 birkhoff_derivative(Vec2 v, Vec2 w) const;

    double antinorm(Vec2 x) const;
    double rho(Vec2 unit) const;

    /// Arc-length parametrisation phi(u) of the unit circle, u taken mod L.
    Vec2 unit_circle_point(double u) const;
    /// Arc-length position u of the direction of v on the unit circle.
    double arc_parameter(Vec2 v) const;
    double total_length() const { return length_; }

    /// sup over table nodes of |b(b(v)) + v|.
    double radon_defect() const;

    std::span<const double> table_theta() const { return theta_; }
    std::span<const double> table_arc_length() const { return arc_; }
    std::span<const double> table_tangent_angle() const { return psi_; }
    std::span<const double> table_rho() const { return rho_; }

private:
    double circle_speed(double theta) const;
    double arc_from_node(std::size_t i, double theta) const;
    std::size_t node_below(double theta) const;
    void build_tables();

    NormSpec spec_;
    std::unique_ptr<NormModel> model_;
    std::vector<double> theta_, arc_, psi_, rho_;
    double length_ = 0.0;
};

using PlanePtr = std::shared_ptr<const NormedPlane>;

/// Validates the spec and builds the plane tables.
PlanePtr build_plane(const NormSpec& spec);

/// Golden-section test of x Birkhoff-orthogonal to y: min_t |x + t y| is
/// compared against |x| (1 - tol).
bool is_birkhoff_orthogonal(const NormedPlane& plane, Vec2 x, Vec2 y, double tol);

/// T(v) = b2^{-1}(b1(v)): the unit vector of plane2 sharing the supporting
/// direction of plane1's circle at v.
Vec2 transfer_unit(const NormedPlane& plane1, const NormedPlane& plane2, Vec2 v);

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

}  // namespace legendre
