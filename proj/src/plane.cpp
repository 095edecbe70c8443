#include "legendre/plane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legendre/error.hpp"
#include "legendre/numerics.hpp"

namespace legendre {
namespace {

Vec2 radial_unit(Vec2 v) { return v / euclid(v); }

class EuclideanModel final : public NormModel {
public:
    double norm(Vec2 v) const override { return euclid(v); }
    Vec2 gradient(Vec2 v) const override { return radial_unit(v); }
    Mat2 hessian(Vec2 v) const override {
        const double r = euclid(v);
        return Mat2::outer(rot90(v / r), 1.0 / r);
    }
    std::optional<Vec2> dual_point(Vec2 n) const override { return radial_unit(n); }
};

class LpModel final : public NormModel {
public:
    explicit LpModel(double p) : p_(p) {}

    double norm(Vec2 v) const override {
        const double m = std::max(std::abs(v.x), std::abs(v.y));
        if (m == 0.0) return 0.0;
        const double sx = std::abs(v.x) / m, sy = std::abs(v.y) / m;
        return m * std::pow(std::pow(sx, p_) + std::pow(sy, p_), 1.0 / p_);
    }

    Vec2 gradient(Vec2 v) const override {
        const double n = norm(v);
        return {component(v.x / n), component(v.y / n)};
    }

    Mat2 hessian(Vec2 v) const override {
        const double n = norm(v);
        const Vec2 g{component(v.x / n), component(v.y / n)};
        // |x_i / N|^(p-2) blows up on the axes when p < 2; keep it finite.
        auto diag = [&](double s) { return std::pow(std::max(std::abs(s), 1e-150), p_ - 2.0); };
        const double k = (p_ - 1.0) / n;
        return {k * (diag(v.x / n) - g.x * g.x), -k * g.x * g.y,
                -k * g.x * g.y, k * (diag(v.y / n) - g.y * g.y)};
    }

    std::optional<Vec2> dual_point(Vec2 n) const override {
        // Hoelder duality: the gradient is parallel to n exactly at
        // z_i ~ sgn(n_i) |n_i|^(q-1), q the conjugate exponent.
        const double m = std::max(std::abs(n.x), std::abs(n.y));
        const double e = 1.0 / (p_ - 1.0);
        const Vec2 z{std::copysign(std::pow(std::abs(n.x) / m, e), n.x),
                     std::copysign(std::pow(std::abs(n.y) / m, e), n.y)};
        return z / norm(z);
    }

private:
    double component(double s) const { return std::copysign(std::pow(std::abs(s), p_ - 1.0), s); }
    double p_;
};

class FourierRadialModel final : public NormModel {
public:
    explicit FourierRadialModel(std::vector<double> a) : a_(std::move(a)) {}

    struct Radial {
        double f, f1, f2;  // 1/r and its first two angular derivatives
    };

    double radius(double phi) const {
        double r = a_[0];
        for (std::size_t k = 1; k < a_.size(); ++k) r += a_[k] * std::cos(2.0 * k * phi);
        return r;
    }

    Radial reciprocal(double phi) const {
        double r = a_[0], r1 = 0.0, r2 = 0.0;
        for (std::size_t k = 1; k < a_.size(); ++k) {
            const double w = 2.0 * static_cast<double>(k);
            r += a_[k] * std::cos(w * phi);
            r1 -= w * a_[k] * std::sin(w * phi);
            r2 -= w * w * a_[k] * std::cos(w * phi);
        }
        return {1.0 / r, -r1 / (r * r), -r2 / (r * r) + 2.0 * r1 * r1 / (r * r * r)};
    }

    double norm(Vec2 v) const override {
        const double len = euclid(v);
        if (len == 0.0) return 0.0;
        return len / radius(angle_of(v));
    }

    Vec2 gradient(Vec2 v) const override {
        const double phi = angle_of(v);
        const Radial q = reciprocal(phi);
        return polar(phi) * q.f + rot90(polar(phi)) * q.f1;
    }

    Mat2 hessian(Vec2 v) const override {
        const double phi = angle_of(v);
        const Radial q = reciprocal(phi);
        return Mat2::outer(rot90(polar(phi)), (q.f + q.f2) / euclid(v));
    }

private:
    std::vector<double> a_;
};

double wrap_angle(double theta) {
    double s = std::fmod(theta, kTwoPi);
    if (s < 0) s += kTwoPi;
    if (s >= kTwoPi) s -= kTwoPi;
    return s;
}

void require_unit(const NormedPlane& plane, Vec2 v, const char* what) {
    if (!plane.is_unit(v)) {
        std::ostringstream msg;
        msg << what << ": expected a unit vector, norm is " << plane.norm(v);
        throw Error(ErrorKind::NotUnit, msg.str());
    }
}

}  // namespace

std::string describe(const NormSpec& spec) {
    std::ostringstream s;
    switch (spec.kind) {
        case NormKind::euclidean: s << "euclidean"; break;
        case NormKind::lp: s << "lp(p=" << spec.p << ")"; break;
        case NormKind::fourier_radial:
            s << "fourier_radial(";
            for (std::size_t i = 0; i < spec.coefficients.size(); ++i) s << (i ? "," : "") << spec.coefficients[i];
            s << ")";
            break;
    }
    return s.str();
}

NormedPlane::NormedPlane(NormSpec spec, std::unique_ptr<NormModel> model)
    : spec_(std::move(spec)), model_(std::move(model)) {
    build_tables();
}

double NormedPlane::norm(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    return model_->norm(v);
}

Vec2 NormedPlane::gradient(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorKind::ZeroVector, "gradient of the norm at 0");
    return model_->gradient(v);
}

bool NormedPlane::is_unit(Vec2 v, double tol) const { return std::abs(norm(v) - 1.0) <= tol; }

Vec2 NormedPlane::normalize(Vec2 v) const {
    const double n = norm(v);
    if (n == 0.0) throw Error(ErrorKind::ZeroVector, "cannot normalize the zero vector");
    return v / n;
}

Vec2 NormedPlane::circle_point(double theta) const {
    const Vec2 e = polar(theta);
    return e / model_->norm(e);
}

Vec2 NormedPlane::circle_tangent(double theta) const {
    const Vec2 e = polar(theta), ep = rot90(e);
    const double f = model_->norm(e);
    const double f1 = dot(model_->gradient(e), ep);
    const double r = 1.0 / f, r1 = -f1 / (f * f);
    return e * r1 + ep * r;
}

Vec2 NormedPlane::circle_second(double theta) const {
    const Vec2 e = polar(theta), ep = rot90(e);
    const double f = model_->norm(e);
    const double f1 = dot(model_->gradient(e), ep);
    const double f2 = dot(ep, model_->hessian(e) * ep) - f;
    const double r = 1.0 / f, r1 = -f1 / (f * f);
    const double r2 = -f2 / (f * f) + 2.0 * f1 * f1 / (f * f * f);
    return e * (r2 - r) + ep * (2.0 * r1);
}

double NormedPlane::circle_speed(double theta) const { return model_->norm(circle_tangent(theta)); }

std::size_t NormedPlane::node_below(double theta) const {
    const std::size_t n = theta_.size() - 1;
    const double step = kTwoPi / static_cast<double>(n);
    const auto i = static_cast<std::size_t>(std::max(0.0, std::floor(theta / step)));
    return std::min(i, n - 1);
}

double NormedPlane::tangent_angle(double theta) const {
    const double turns = std::floor(theta / kTwoPi);
    const double s = wrap_angle(theta);
    const double ref = psi_[node_below(s)];
    const double a = angle_of(circle_tangent(s));
    return ref + std::remainder(a - ref, kTwoPi) + kTwoPi * turns;
}

Vec2 NormedPlane::birkhoff(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorKind::ZeroVector, "b is undefined at 0");
    const Vec2 t = rot90(model_->gradient(v));
    return t / model_->norm(t);
}

Vec2 NormedPlane::birkhoff_derivative(Vec2 v, Vec2 w) const {
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorKind::ZeroVector, "Db is undefined at 0");
    const Vec2 t = rot90(model_->gradient(v));
    const double m = model_->norm(t);
    const Vec2 jhw = rot90(model_->hessian(v) * w);
    return jhw / m - t * (dot(model_->gradient(t), jhw) / (m * m));
}

Vec2 NormedPlane::birkhoff_inverse(Vec2 w) const {
    require_unit(*this, w, "birkhoff_inverse");
    if (auto z = model_->dual_point({w.y, -w.x})) {
        if (euclid(birkhoff(*z) - w) < 1e-9) return *z;
    }
    return birkhoff_inverse_root_find(w);
}

Vec2 NormedPlane::birkhoff_inverse_root_find(Vec2 w) const {
    require_unit(*this, w, "birkhoff_inverse");
    const std::size_t n = theta_.size() - 1;
    const double base = psi_[0];
    const double target = base + wrap_angle(angle_of(w) - base);
    auto it = std::upper_bound(psi_.begin(), psi_.end(), target);
    std::size_t i = static_cast<std::size_t>(std::distance(psi_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, n) - 1;
    const double ref = psi_[i];
    auto h = [&](double theta) {
        return ref + std::remainder(angle_of(circle_tangent(theta)) - ref, kTwoPi) - target;
    };
    double theta;
    const double ha = h(theta_[i]), hb = h(theta_[i + 1]);
    if (std::abs(ha) < 1e-15) {
        theta = theta_[i];
    } else if (std::abs(hb) < 1e-15) {
        theta = theta_[i + 1];
    } else {
        theta = refine_root(h, theta_[i], theta_[i + 1]);
    }
    const Vec2 z = circle_point(theta);
    if (euclid(birkhoff(z) - w) > 1e-8) {
        throw Error(ErrorKind::NoConvergence, "birkhoff_inverse: root find on the tangent angle failed");
    }
    return z;
}

double NormedPlane::antinorm(Vec2 x) const {
    const double n = norm(x);
    if (n == 0.0) return 0.0;
    const Vec2 xh = x / n;
    return n * bracket(birkhoff_inverse(xh), xh);
}

double NormedPlane::rho(Vec2 unit) const {
    require_unit(*this, unit, "rho");
    return norm(birkhoff_derivative(unit, birkhoff(unit)));
}

double NormedPlane::arc_from_node(std::size_t i, double theta) const {
    if (theta == theta_[i]) return arc_[i];
    return arc_[i] + integrate([this](double s) { return circle_speed(s); }, theta_[i], theta);
}

double NormedPlane::arc_parameter(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorKind::ZeroVector, "arc_parameter of 0");
    const double theta = wrap_angle(angle_of(v));
    const double u = arc_from_node(node_below(theta), theta);
    return u >= length_ ? u - length_ : u;
}

Vec2 NormedPlane::unit_circle_point(double u) const {
    double s = std::fmod(u, length_);
    if (s < 0) s += length_;
    if (is_euclidean()) return polar(s);
    const std::size_t n = theta_.size() - 1;
    auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(arc_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, n) - 1;
    const double a = theta_[i], b = theta_[i + 1];
    double theta = a + (b - a) * (s - arc_[i]) / (arc_[i + 1] - arc_[i]);
    for (int iter = 0; iter < 30; ++iter) {
        const double step = (arc_from_node(i, theta) - s) / circle_speed(theta);
        theta = std::clamp(theta - step, a, b);
        if (std::abs(step) < 1e-15) return circle_point(theta);
    }
    throw Error(ErrorKind::NoConvergence, "unit_circle_point: arc-length inversion did not converge");
}

double NormedPlane::radon_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < theta_.size(); ++i) {
        const Vec2 c = circle_point(theta_[i]);
        worst = std::max(worst, euclid(birkhoff(birkhoff(c)) + c));
    }
    return worst;
}

void NormedPlane::build_tables() {
    const std::size_t n = spec_.table_size;
    const double step = kTwoPi / static_cast<double>(n);
    theta_.resize(n + 1);
    arc_.assign(n + 1, 0.0);
    psi_.assign(n + 1, 0.0);
    rho_.resize(n);
    for (std::size_t i = 0; i <= n; ++i) theta_[i] = step * static_cast<double>(i);
    theta_[n] = kTwoPi;

    auto speed = [this](double s) { return circle_speed(s); };
    for (std::size_t i = 0; i < n; ++i) {
        const double th = theta_[i];
        const Vec2 c = circle_point(th);
        const Vec2 c1 = circle_tangent(th);
        if (std::abs(model_->norm(c) - 1.0) > 1e-10) {
            throw Error(ErrorKind::ConvexityViolation, "norm and unit-circle boundary disagree");
        }
        if (!(bracket(c, c1) > 1e-9)) {
            throw Error(ErrorKind::ConvexityViolation, "unit circle fails [c, c'] > 0");
        }
        const Vec2 e = polar(th);
        const double curvature = dot(rot90(e), model_->hessian(e) * rot90(e));
        if (!(curvature >= -1e-10)) {
            throw Error(ErrorKind::ConvexityViolation, "unit circle is not convex");
        }
        if (n % 2 == 0 && i < n / 2) {
            const Vec2 opposite = circle_point(th + kPi);
            if (euclid(opposite + c) > 1e-12 * euclid(c)) {
                throw Error(ErrorKind::ConvexityViolation, "unit circle is not centrally symmetric");
            }
        }
        const double a = angle_of(c1);
        psi_[i] = i == 0 ? a : psi_[i - 1] + std::remainder(a - psi_[i - 1], kTwoPi);
        arc_[i + 1] = arc_[i] + integrate(speed, th, theta_[i + 1]);
        rho_[i] = norm(birkhoff_derivative(c, birkhoff(c)));
    }
    psi_[n] = psi_[n - 1] + std::remainder(angle_of(circle_tangent(0.0)) - psi_[n - 1], kTwoPi);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(psi_[i + 1] > psi_[i])) {
            throw Error(ErrorKind::ConvexityViolation, "tangent angle of the unit circle is not increasing");
        }
    }
    if (std::abs(psi_[n] - psi_[0] - kTwoPi) > 1e-6) {
        throw Error(ErrorKind::ConvexityViolation, "unit circle tangent does not wind once");
    }
    length_ = arc_[n];
}

PlanePtr build_plane(const NormSpec& spec) {
    if (spec.table_size < 64) throw Error(ErrorKind::BadParameter, "table_size must be at least 64");
    std::unique_ptr<NormModel> model;
    switch (spec.kind) {
        case NormKind::euclidean:
            model = std::make_unique<EuclideanModel>();
            break;
        case NormKind::lp:
            if (!std::isfinite(spec.p) || spec.p < 1.0) {
                throw Error(ErrorKind::BadParameter, "lp norm needs 1 < p < infinity");
            }
            if (spec.p == 1.0) {
                throw Error(ErrorKind::ConvexityViolation, "l1 unit circle is neither smooth nor strictly convex");
            }
            model = std::make_unique<LpModel>(spec.p);
            break;
        case NormKind::fourier_radial: {
            if (spec.coefficients.empty()) {
                throw Error(ErrorKind::BadParameter, "fourier_radial needs at least one coefficient");
            }
            for (double a : spec.coefficients) {
                if (!std::isfinite(a)) throw Error(ErrorKind::BadParameter, "non-finite coefficient");
            }
            auto radial = std::make_unique<FourierRadialModel>(spec.coefficients);
            const std::size_t dense = 4 * spec.table_size;
            for (std::size_t i = 0; i < dense; ++i) {
                const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(dense);
                const double r = radial->radius(th);
                if (!(r > 0.0)) {
                    std::ostringstream msg;
                    msg << "radial function r(" << th << ") = " << r << " is not positive";
                    throw Error(ErrorKind::PositivityViolation, msg.str());
                }
            }
            model = std::move(radial);
            break;
        }
    }
    return std::make_shared<const NormedPlane>(spec, std::move(model));
}

bool is_birkhoff_orthogonal(const NormedPlane& plane, Vec2 x, Vec2 y, double tol) {
    const double nx = plane.norm(x), ny = plane.norm(y);
    if (nx == 0.0 || ny == 0.0) throw Error(ErrorKind::ZeroVector, "Birkhoff orthogonality needs nonzero vectors");
    const double reach = 4.0 * nx / ny;
    const Minimum m = golden_section([&](double t) { return plane.norm(x + y * t); }, -reach, reach, 200);
    return m.value >= nx * (1.0 - tol);
}

Vec2 transfer_unit(const NormedPlane& plane1, const NormedPlane& plane2, Vec2 v) {
    require_unit(plane1, v, "transfer_unit");
    return plane2.birkhoff_inverse(plane2.normalize(plane1.birkhoff(v)));
}

}  // namespace legendre
