#include "legendre/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legendre/error.hpp"

namespace legendre {

ParamCurve::ParamCurve(Domain domain, VecFn position, std::array<VecFn, 3> derivatives,
                       std::size_t samples, double closure_tol)
    : domain_(domain), position_(std::move(position)), derivatives_(std::move(derivatives)), samples_(samples) {
    if (!(domain_.t1 > domain_.t0)) throw Error(ErrorKind::BadParameter, "curve domain must satisfy t0 < t1");
    if (samples_ < 8) throw Error(ErrorKind::BadParameter, "curve needs at least 8 samples");
    if (!position_) throw Error(ErrorKind::BadParameter, "curve without a position evaluator");
    if (domain_.closed) {
        const Vec2 a = position_(domain_.t0), b = position_(domain_.t1);
        if (euclid(a - b) > closure_tol * std::max(1.0, euclid(a))) {
            std::ostringstream msg;
            msg << "closed curve does not close: gap " << euclid(a - b);
            throw Error(ErrorKind::NotClosed, msg.str());
        }
        if (derivatives_[0]) {
            const Vec2 da = derivatives_[0](domain_.t0), db = derivatives_[0](domain_.t1);
            if (euclid(da - db) > 1e-6 * std::max(1.0, euclid(da))) {
                throw Error(ErrorKind::NotClosed, "closed curve velocity does not match at the seam");
            }
        }
    }
}

ParamCurve ParamCurve::with_samples(std::size_t n) const {
    ParamCurve c = *this;
    if (n < 8) throw Error(ErrorKind::BadParameter, "curve needs at least 8 samples");
    c.samples_ = n;
    return c;
}

void ParamCurve::check_domain(double t) const {
    if (!domain_.closed && !domain_.contains(t, 1e-12 * domain_.span())) {
        std::ostringstream msg;
        msg << "t = " << t << " outside [" << domain_.t0 << ", " << domain_.t1 << "]";
        throw Error(ErrorKind::OutOfDomain, msg.str());
    }
}

Vec2 ParamCurve::operator()(double t) const {
    check_domain(t);
    return position_(domain_.wrap(t));
}

bool ParamCurve::has_analytic(int order) const {
    return order >= 1 && order <= 3 && static_cast<bool>(derivatives_[order - 1]);
}

Vec2 ParamCurve::derivative(double t, int order) const {
    if (order < 1 || order > 4) throw Error(ErrorKind::BadParameter, "derivative order must be 1..4");
    check_domain(t);
    if (has_analytic(order)) return derivatives_[order - 1](domain_.wrap(t));
    int base = order - 1;
    while (base > 0 && !has_analytic(base)) --base;
    const VecFn& f = base == 0 ? position_ : derivatives_[base - 1];
    return fd_derivative(f, t, order - base, domain_);
}

Jet curve_jet(const ParamCurve& curve, double t, int order) {
    Jet j{t, {curve(t)}};
    for (int k = 1; k <= order; ++k) j.d.push_back(curve.derivative(t, k));
    return j;
}

std::string to_string(NormalProvenance p) {
    switch (p) {
        case NormalProvenance::analytic: return "analytic";
        case NormalProvenance::induced_regular: return "induced_regular";
        case NormalProvenance::extended_through_singularities: return "extended_through_singularities";
        case NormalProvenance::user_supplied: return "user_supplied";
    }
    return "unknown";
}

NormalField::NormalField(Domain domain, VecFn eval, NormalProvenance provenance, std::array<VecFn, 3> derivatives)
    : domain_(domain), eval_(std::move(eval)), provenance_(provenance), derivatives_(std::move(derivatives)) {}

Vec2 NormalField::derivative(double t, int order) const {
    if (order < 1 || order > 4) throw Error(ErrorKind::BadParameter, "derivative order must be 1..4");
    if (order <= 3 && derivatives_[order - 1]) return derivatives_[order - 1](domain_.wrap(t));
    int base = order - 1;
    while (base > 0 && !(base <= 3 && derivatives_[base - 1])) --base;
    const VecFn& f = base == 0 ? eval_ : derivatives_[base - 1];
    return fd_derivative(f, t, order - base, domain_);
}

Jet normal_jet(const NormalField& eta, double t, int order) {
    Jet j{t, {eta(t)}};
    for (int k = 1; k <= order; ++k) j.d.push_back(eta.derivative(t, k));
    return j;
}

namespace {

constexpr double kSingularRatio = 1e-7;
constexpr double kMaxJump = 0.25;  // radians between neighbouring nodes

double angle_between(Vec2 a, Vec2 b) { return std::atan2(std::abs(bracket(a, b)), dot(a, b)); }

struct Sampled {
    std::vector<double> grid;
    std::vector<Vec2> velocity;
    std::vector<double> speed;
    double max_speed = 0.0;
};

Sampled sample_velocity(const NormedPlane& plane, const ParamCurve& curve) {
    Sampled s;
    s.grid = curve.grid();
    for (double t : s.grid) {
        const Vec2 v = curve.derivative(t, 1);
        s.velocity.push_back(v);
        s.speed.push_back(plane.norm(v));
        s.max_speed = std::max(s.max_speed, s.speed.back());
    }
    return s;
}

std::size_t nearest_node(const Domain& dom, std::size_t n, double t) {
    const double step = dom.closed ? dom.span() / static_cast<double>(n) : dom.span() / static_cast<double>(n - 1);
    const double k = std::round((t - dom.t0) / step);
    if (dom.closed) {
        const auto m = static_cast<long long>(k) % static_cast<long long>(n);
        return static_cast<std::size_t>(m < 0 ? m + static_cast<long long>(n) : m);
    }
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n - 1)));
}

// Unit tangent direction at t, replaced by a one-sided limit when the
// speed is negligible.
Vec2 tangent_direction(const NormedPlane& plane, const ParamCurve& curve, double t, double threshold) {
    Vec2 v = curve.derivative(t, 1);
    if (plane.norm(v) < threshold) {
        // Symmetric one-sided limits cancel the first-order drift.
        const Domain& dom = curve.domain();
        const double delta = 1e-6 * dom.span();
        const bool left = dom.closed || t - delta >= dom.t0;
        const bool right = dom.closed || t + delta <= dom.t1;
        Vec2 r = right ? curve.derivative(t + delta, 1) : Vec2{};
        Vec2 l = left ? curve.derivative(t - delta, 1) : Vec2{};
        if (right && left) {
            r = r / euclid(r);
            l = l / euclid(l);
            v = dot(l, r) >= 0.0 ? l + r : r - l;
        } else {
            v = right ? r : l;
        }
        if (!(plane.norm(v) > 0.0)) throw Error(ErrorKind::SingularPoint, "tangent limit vanishes");
    }
    return plane.normalize(v);
}

}  // namespace

std::vector<bool> singular_nodes(const NormedPlane& plane, const ParamCurve& curve) {
    const Sampled s = sample_velocity(plane, curve);
    std::vector<bool> flags(s.grid.size());
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = s.speed[i] < kSingularRatio * s.max_speed || s.max_speed == 0.0;
    return flags;
}

NormalField induced_normal(PlanePtr plane, const ParamCurve& curve) {
    const Sampled s = sample_velocity(*plane, curve);
    const double floor = std::max(1e-8, kSingularRatio * s.max_speed);
    Vec2 prev;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        if (s.speed[i] <= floor) {
            std::ostringstream msg;
            msg << "curve is singular near t = " << s.grid[i];
            throw Error(ErrorKind::SingularPoint, msg.str());
        }
        const Vec2 n = plane->birkhoff_inverse(s.velocity[i] / s.speed[i]);
        if (i > 0 && dot(n, prev) <= 0.0) {
            std::ostringstream msg;
            msg << "tangent reverses between t = " << s.grid[i - 1] << " and " << s.grid[i];
            throw Error(ErrorKind::SingularPoint, msg.str());
        }
        prev = n;
    }
    auto eval = [plane, curve, floor](double t) {
        const Vec2 v = curve.derivative(t, 1);
        const double sp = plane->norm(v);
        if (sp <= floor) throw Error(ErrorKind::SingularPoint, "induced normal at a singular point");
        return plane->birkhoff_inverse(v / sp);
    };
    return NormalField(curve.domain(), eval, NormalProvenance::induced_regular);
}

NormalField extend_normal(PlanePtr plane, const ParamCurve& curve) {
    const Sampled s = sample_velocity(*plane, curve);
    const std::size_t n = s.grid.size();
    if (s.max_speed == 0.0) throw Error(ErrorKind::SingularPoint, "constant curve has no tangent");
    const double threshold = kSingularRatio * s.max_speed;
    const Domain dom = curve.domain();

    std::vector<bool> singular(n);
    for (std::size_t i = 0; i < n; ++i) singular[i] = s.speed[i] < threshold;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (singular[i] && singular[i + 1]) {
            std::ostringstream msg;
            msg << "singular set is not isolated near t = " << s.grid[i];
            throw Error(ErrorKind::PreconditionViolated, msg.str());
        }
    }

    const double delta = 1e-6 * dom.span();
    std::vector<Vec2> raw(n);
    bool extended = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s.grid[i];
        if (singular[i]) {
            extended = true;
            const bool has_left = dom.closed || t - delta >= dom.t0;
            const bool has_right = dom.closed || t + delta <= dom.t1;
            if (has_left && has_right) {
                const Vec2 l = plane->normalize(curve.derivative(t - delta, 1));
                const Vec2 r = plane->normalize(curve.derivative(t + delta, 1));
                if (std::abs(bracket(l / euclid(l), r / euclid(r))) > 1e-4) {
                    std::ostringstream msg;
                    msg << "one-sided tangents at t = " << t << " are not parallel";
                    throw Error(ErrorKind::LimitsDisagree, msg.str());
                }
            }
        }
        raw[i] = plane->birkhoff_inverse(tangent_direction(*plane, curve, t, threshold));
    }

    std::vector<Vec2> eta(n);
    eta[0] = raw[0];
    for (std::size_t i = 1; i < n; ++i) {
        eta[i] = dot(raw[i], eta[i - 1]) >= 0.0 ? raw[i] : -raw[i];
        if (eta[i] == -raw[i]) extended = true;
        if (angle_between(eta[i], eta[i - 1]) > kMaxJump) {
            std::ostringstream msg;
            msg << "normal direction jumps between t = " << s.grid[i - 1] << " and " << s.grid[i];
            throw Error(ErrorKind::LimitsDisagree, msg.str());
        }
    }
    if (dom.closed && (dot(eta[n - 1], eta[0]) < 0.0 || angle_between(eta[n - 1], eta[0]) > kMaxJump)) {
        throw Error(ErrorKind::LimitsDisagree, "normal field does not close up along the curve");
    }

    // Anchor: eta agrees with the induced normal at the first regular node
    // at or after t = 0.
    const double anchor_t = std::clamp(0.0, dom.t0, dom.t1);
    std::size_t anchor = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!singular[i] && s.grid[i] >= anchor_t - 1e-12 * dom.span()) {
            anchor = i;
            break;
        }
    }
    if (anchor == n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!singular[i]) anchor = i;
        }
    }
    if (dot(eta[anchor], raw[anchor]) < 0.0) {
        for (Vec2& e : eta) e = -e;
    }

    auto reference = std::make_shared<const std::vector<Vec2>>(std::move(eta));
    auto eval = [plane, curve, reference, threshold, dom, n](double t) {
        const Vec2 r = plane->birkhoff_inverse(tangent_direction(*plane, curve, t, threshold));
        const Vec2& ref = (*reference)[nearest_node(dom, n, t)];
        return dot(r, ref) >= 0.0 ? r : -r;
    };
    return NormalField(dom, eval,
                       extended ? NormalProvenance::extended_through_singularities : NormalProvenance::induced_regular);
}

double legendre_residual(const NormedPlane& plane, const ParamCurve& curve, const NormalField& eta) {
    const Sampled s = sample_velocity(plane, curve);
    // absolute floor so constant curves (parallels at a focal distance) pass
    const double threshold = std::max(kSingularRatio * s.max_speed, 1e-10);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        if (s.speed[i] < threshold) continue;
        const Vec2 xi = plane.birkhoff(eta(s.grid[i]));
        worst = std::max(worst, std::abs(bracket(s.velocity[i], xi)) / (s.speed[i] + 1e-12));
    }
    return worst;
}

}  // namespace legendre
