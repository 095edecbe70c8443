#include "legendre/synthesis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "legendre/error.hpp"

namespace legendre {
namespace {

using State = std::array<double, 3>;  // u, x, y

State axpy(const State& y, double s, const State& k) { return {y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]}; }

// Tabulated RK4 solution with one-step dense output from the nearest node.
struct Solution {
    PlanePtr plane;
    SynthesisSpec spec;
    std::vector<double> t;
    std::vector<State> y;

    State rhs(double s, const State& st) const {
        const Vec2 tangent = plane->birkhoff(plane->unit_circle_point(st[0]));
        const double a = spec.alpha(s);
        return {spec.kappa(s), a * tangent.x, a * tangent.y};
    }

    State step(double s, const State& st, double h) const {
        const State k1 = rhs(s, st);
        const State k2 = rhs(s + h / 2, axpy(st, h / 2, k1));
        const State k3 = rhs(s + h / 2, axpy(st, h / 2, k2));
        const State k4 = rhs(s + h, axpy(st, h, k3));
        State out = st;
        for (int i = 0; i < 3; ++i) out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        return out;
    }

    std::size_t nearest(double s) const {
        auto it = std::lower_bound(t.begin(), t.end(), s);
        if (it == t.end()) return t.size() - 1;
        const std::size_t j = static_cast<std::size_t>(std::distance(t.begin(), it));
        if (j > 0 && s - t[j - 1] < t[j] - s) return j - 1;
        return j;
    }

    double u_at(double s) const {
        const std::size_t k = nearest(s);
        const double h = s - t[k];
        if (h == 0.0) return y[k][0];
        return y[k][0] + h / 6 * (spec.kappa(t[k]) + 4 * spec.kappa(t[k] + h / 2) + spec.kappa(s));
    }

    Vec2 gamma_at(double s) const {
        const std::size_t k = nearest(s);
        const double h = s - t[k];
        if (h == 0.0) return {y[k][1], y[k][2]};
        const State r = step(t[k], y[k], h);
        return {r[1], r[2]};
    }
};

}  // namespace

LegendreCurve synthesize(PlanePtr plane, const SynthesisSpec& spec) {
    if (!spec.alpha || !spec.kappa) throw Error(ErrorKind::BadParameter, "synthesis needs alpha and kappa");
    if (!(spec.domain.t1 > spec.domain.t0)) throw Error(ErrorKind::BadParameter, "synthesis domain must have c > 0");
    if (spec.steps < 4) throw Error(ErrorKind::BadParameter, "synthesis needs at least 4 steps");
    if (!plane->is_unit(spec.v)) {
        std::ostringstream msg;
        msg << "initial normal has norm " << plane->norm(spec.v);
        throw Error(ErrorKind::NotUnit, msg.str());
    }
    const Domain dom = spec.domain;
    const double anchor = std::clamp(0.0, dom.t0, dom.t1);
    const double span = dom.span();

    auto sol = std::make_shared<Solution>();
    sol->plane = plane;
    sol->spec = spec;
    const State y0{plane->arc_parameter(spec.v), spec.p.x, spec.p.y};

    // backward part first so the table ends up sorted
    std::vector<double> tb;
    std::vector<State> yb;
    if (anchor > dom.t0) {
        const auto nb = static_cast<std::size_t>(
            std::max(1.0, std::round(static_cast<double>(spec.steps) * (anchor - dom.t0) / span)));
        const double h = (anchor - dom.t0) / static_cast<double>(nb);
        State st = y0;
        for (std::size_t i = 1; i <= nb; ++i) {
            st = sol->step(anchor - h * static_cast<double>(i - 1), st, -h);
            tb.push_back(i == nb ? dom.t0 : anchor - h * static_cast<double>(i));
            yb.push_back(st);
        }
    }
    for (std::size_t i = tb.size(); i-- > 0;) {
        sol->t.push_back(tb[i]);
        sol->y.push_back(yb[i]);
    }
    sol->t.push_back(anchor);
    sol->y.push_back(y0);
    if (anchor < dom.t1) {
        const auto nf = static_cast<std::size_t>(
            std::max(1.0, std::round(static_cast<double>(spec.steps) * (dom.t1 - anchor) / span)));
        const double h = (dom.t1 - anchor) / static_cast<double>(nf);
        State st = y0;
        for (std::size_t i = 1; i <= nf; ++i) {
            st = sol->step(anchor + h * static_cast<double>(i - 1), st, h);
            sol->t.push_back(i == nf ? dom.t1 : anchor + h * static_cast<double>(i));
            sol->y.push_back(st);
        }
    }

    if (dom.closed) {
        const State& a = sol->y.front();
        const State& b = sol->y.back();
        double scale = 1.0;
        for (const State& s : sol->y) scale = std::max(scale, std::hypot(s[1], s[2]));
        const double gap = std::hypot(b[1] - a[1], b[2] - a[2]);
        const Vec2 ea = plane->unit_circle_point(a[0]), eb = plane->unit_circle_point(b[0]);
        if (gap > 1e-6 * scale || euclid(ea - eb) > 1e-6) {
            std::ostringstream msg;
            msg << "synthesized curve does not close: position gap " << gap << ", normal gap " << euclid(ea - eb);
            throw Error(ErrorKind::NotClosed, msg.str());
        }
    }

    ParamCurve gamma(dom, [sol](double s) { return sol->gamma_at(s); }, {}, spec.samples, 1e-6);
    NormalField eta(dom, [sol](double s) { return sol->plane->unit_circle_point(sol->u_at(s)); },
                    NormalProvenance::analytic);
    return LegendreCurve(std::move(plane), std::move(gamma), std::move(eta));
}

LegendreCurve apply_linear_map(const LegendreCurve& L, const Mat2& M, bool is_isometry_of_plane) {
    const PlanePtr plane = L.plane_ptr();
    if (is_isometry_of_plane) {
        for (int i = 0; i < 64; ++i) {
            const Vec2 x = plane->circle_point(kTwoPi * i / 64.0);
            const double err = std::abs(plane->norm(M * x) - 1.0);
            if (err > 1e-9) {
                std::ostringstream msg;
                msg << "map changes the norm of a unit vector by " << err;
                throw Error(ErrorKind::NotAnIsometry, msg.str());
            }
        }
    }
    if (M.det() == 0.0) throw Error(ErrorKind::BadParameter, "linear map is singular");
    const ParamCurve g = L.gamma();
    std::array<VecFn, 3> d;
    for (int k = 1; k <= 3; ++k) {
        if (g.has_analytic(k)) d[k - 1] = [g, M, k](double t) { return M * g.derivative(t, k); };
    }
    ParamCurve mapped(g.domain(), [g, M](double t) { return M * g(t); }, d, g.samples(), 1e-6);
    const NormalField e = L.eta();
    NormalField eta(
        g.domain(), [e, M, plane](double t) { return plane->normalize(M * e(t)); }, e.provenance());
    return LegendreCurve(plane, std::move(mapped), std::move(eta));
}

}  // namespace legendre
