#include "legendre/derived.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legendre/error.hpp"

namespace legendre {
namespace {

double max_abs_kappa(const CurvaturePair& cp) { return max_abs(cp.kappa); }

void require_nonvanishing_kappa(const CurvaturePair& cp, const char* what) {
    const double m = max_abs_kappa(cp);
    for (std::size_t i = 0; i < cp.t.size(); ++i) {
        const bool flips = i > 0 && (cp.kappa[i] > 0) != (cp.kappa[i - 1] > 0);
        if (std::abs(cp.kappa[i]) <= 1e-6 * m || m == 0.0 || flips) {
            std::ostringstream msg;
            msg << what << " needs kappa != 0, but kappa vanishes near t = " << cp.t[i];
            throw Error(ErrorKind::KappaVanishes, msg.str());
        }
    }
}

double scale_of(const ParamCurve& c) {
    double s = 1.0;
    for (double t : c.grid()) s = std::max(s, euclid(c(t)));
    return s;
}

}  // namespace

LegendreCurve parallel(const LegendreCurve& L, double d) {
    // raises NotAFront when alpha and kappa vanish together
    (void)singularity_report(L, curvature_pair(L));
    const ParamCurve g = L.gamma();
    const NormalField e = L.eta();
    std::array<VecFn, 3> derivs;
    derivs[0] = [g, e, d](double t) { return g.derivative(t, 1) + d * e.derivative(t, 1); };
    ParamCurve moved(g.domain(), [g, e, d](double t) { return g(t) + d * e(t); }, derivs, g.samples(), 1e-6);
    return LegendreCurve(L.plane_ptr(), std::move(moved), e);
}

Vec2 xi_derivative(const LegendreCurve& L, double t) {
    const Vec2 eta = L.eta()(t);
    return L.kappa(t) * L.plane().birkhoff_derivative(eta, L.plane().birkhoff(eta));
}

// ---- evolute ----

namespace {

double q_prime(const LegendreCurve& L, double t) {
    const double a = L.alpha(t), k = L.kappa(t);
    return (L.alpha_derivative(t, 1) * k - a * L.kappa_derivative(t, 1)) / (k * k);
}

}  // namespace

LegendreCurve EvoluteFrame::as_legendre() const { return LegendreCurve(plane, e, nu, 1e-4); }

EvoluteFrame evolute(const LegendreCurve& L) {
    const CurvaturePair cp = curvature_pair(L);
    require_nonvanishing_kappa(cp, "evolute");
    auto base = std::make_shared<LegendreCurve>(L);
    const PlanePtr plane = L.plane_ptr();
    std::array<VecFn, 3> derivs;
    derivs[0] = [base](double t) { return -q_prime(*base, t) * base->eta()(t); };
    ParamCurve e(
        L.domain(), [base](double t) { return base->gamma()(t) - (base->alpha(t) / base->kappa(t)) * base->eta()(t); },
        derivs, L.gamma().samples(), 1e-6);
    NormalField nu(
        L.domain(), [base](double t) { return -base->plane().birkhoff_inverse(base->eta()(t)); },
        NormalProvenance::analytic);
    EvoluteFrame out{std::move(e), std::move(nu), {}, {}, {}, {}, plane};
    for (double t : cp.t) {
        const Vec2 n = -plane->birkhoff_inverse(L.eta()(t));
        const double r = plane->rho(n);
        out.t.push_back(t);
        out.alpha.push_back(q_prime(L, t));
        out.masked.push_back(r < 1e-6);
        out.kappa.push_back(r < 1e-6 ? 0.0 : L.kappa(t) / r);
    }
    return out;
}

std::pair<double, double> evolute_frame_curvature(const LegendreCurve& L, double t) {
    const Vec2 n = -L.plane().birkhoff_inverse(L.eta()(t));
    const double r = L.plane().rho(n);
    if (r < 1e-6) {
        std::ostringstream msg;
        msg << "rho(nu) = " << r << " at t = " << t;
        throw Error(ErrorKind::RhoDegenerate, msg.str());
    }
    const double k = L.kappa(t);
    if (k == 0.0) throw Error(ErrorKind::KappaVanishes, "kappa vanishes at the requested parameter");
    return {q_prime(L, t), k / r};
}

std::vector<Vec2> evolute_as_parallel_singularities(const LegendreCurve& L, std::size_t d_samples) {
    const CurvaturePair cp = curvature_pair(L);
    require_nonvanishing_kappa(cp, "evolute");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < cp.t.size(); ++i) {
        const double q = -cp.alpha[i] / cp.kappa[i];
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    const double pad = 0.01 * std::max(hi - lo, 1e-12);
    lo -= pad;
    hi += pad;
    std::vector<Vec2> points;
    std::vector<double> values(cp.t.size());
    const Domain dom = L.domain();
    for (std::size_t k = 0; k < d_samples; ++k) {
        const double d = d_samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(d_samples - 1);
        for (std::size_t i = 0; i < cp.t.size(); ++i) values[i] = cp.alpha[i] + d * cp.kappa[i];
        const double threshold = 1e-12 * (max_abs(cp.alpha) + std::abs(d) * max_abs(cp.kappa));
        const ZeroScan zs = scan_zeros(dom, cp.t, values, threshold, [&L, d, dom](double t) {
            const double s = dom.wrap(t);
            return L.alpha(s) + d * L.kappa(s);
        });
        for (const Crossing& c : zs.crossings) points.push_back(L.gamma()(c.t) + d * L.eta()(c.t));
    }
    return points;
}

EnvelopeResidual normal_envelope_residual(const LegendreCurve& L, double t, Vec2 v) {
    const Vec2 g = L.gamma()(t), e = L.eta()(t);
    EnvelopeResidual r;
    r.F = bracket(g - v, e);
    r.dF = bracket(L.gamma().derivative(t, 1), e) + bracket(g - v, L.eta().derivative(t, 1));
    return r;
}

// ---- involute ----

namespace {

// Tabulated A(t) = int_a^t alpha by RK4 (Simpson on a t-only right-hand side).
struct AreaTable {
    std::shared_ptr<LegendreCurve> L;
    std::vector<double> t, A;

    double step(double s, double a, double h) const {
        return a + h / 6 * (L->alpha(s) + 4 * L->alpha(s + h / 2) + L->alpha(s + h));
    }
    double at(double s) const {
        auto it = std::lower_bound(t.begin(), t.end(), s);
        std::size_t k = it == t.end() ? t.size() - 1 : static_cast<std::size_t>(std::distance(t.begin(), it));
        if (k > 0 && (it == t.end() || s - t[k - 1] < t[k] - s)) k -= 1;
        const double h = s - t[k];
        return h == 0.0 ? A[k] : step(t[k], A[k], h);
    }
};

std::shared_ptr<AreaTable> area_table(const LegendreCurve& L, std::size_t steps) {
    auto tab = std::make_shared<AreaTable>();
    tab->L = std::make_shared<LegendreCurve>(L);
    const Domain dom = L.domain();
    const double anchor = std::clamp(0.0, dom.t0, dom.t1);
    const double span = dom.span();
    std::vector<double> tb, ab;
    if (anchor > dom.t0) {
        const auto nb = static_cast<std::size_t>(
            std::max(1.0, std::round(static_cast<double>(steps) * (anchor - dom.t0) / span)));
        const double h = (anchor - dom.t0) / static_cast<double>(nb);
        double a = 0.0;
        for (std::size_t i = 1; i <= nb; ++i) {
            a = tab->step(anchor - h * static_cast<double>(i - 1), a, -h);
            tb.push_back(i == nb ? dom.t0 : anchor - h * static_cast<double>(i));
            ab.push_back(a);
        }
    }
    for (std::size_t i = tb.size(); i-- > 0;) {
        tab->t.push_back(tb[i]);
        tab->A.push_back(ab[i]);
    }
    tab->t.push_back(anchor);
    tab->A.push_back(0.0);
    if (anchor < dom.t1) {
        const auto nf = static_cast<std::size_t>(
            std::max(1.0, std::round(static_cast<double>(steps) * (dom.t1 - anchor) / span)));
        const double h = (dom.t1 - anchor) / static_cast<double>(nf);
        double a = 0.0;
        for (std::size_t i = 1; i <= nf; ++i) {
            a = tab->step(anchor + h * static_cast<double>(i - 1), a, h);
            tab->t.push_back(i == nf ? dom.t1 : anchor + h * static_cast<double>(i));
            tab->A.push_back(a);
        }
    }
    return tab;
}

void require_rho(const LegendreCurve& L) {
    for (double t : L.grid()) {
        const double r = L.plane().rho(L.eta()(t));
        if (r < 1e-6) {
            std::ostringstream msg;
            msg << "rho(eta) = " << r << " near t = " << t;
            throw Error(ErrorKind::RhoDegenerate, msg.str());
        }
    }
}

}  // namespace

LegendreCurve involute(const LegendreCurve& L, double d, std::size_t steps) {
    if (steps < 4) throw Error(ErrorKind::BadParameter, "involute needs at least 4 steps");
    const CurvaturePair cp = curvature_pair(L);
    require_nonvanishing_kappa(cp, "involute");
    require_rho(L);
    const auto tab = area_table(L, steps);
    const Domain src = L.domain();
    Domain dom = src;
    if (src.closed) {
        // closes only when the total alpha-integral vanishes
        const double total = tab->A.back() - tab->A.front();
        dom.closed = std::abs(total) < 1e-6 * std::max(1.0, scale_of(L.gamma()));
    }
    const PlanePtr plane = L.plane_ptr();
    auto position = [tab, d](double t) {
        const LegendreCurve& b = *tab->L;
        return b.gamma()(t) + (d - tab->at(t)) * b.xi(t);
    };
    std::array<VecFn, 3> derivs;
    derivs[0] = [tab, d](double t) { return (d - tab->at(t)) * xi_derivative(*tab->L, t); };
    ParamCurve sigma(dom, position, derivs, L.gamma().samples(), 1e-6);
    NormalField eta(dom, [tab](double t) { return tab->L->xi(t); }, NormalProvenance::analytic);
    return LegendreCurve(plane, std::move(sigma), std::move(eta));
}

std::pair<double, double> involute_curvature(const LegendreCurve& L, double d, double t) {
    const double a = std::clamp(0.0, L.domain().t0, L.domain().t1);
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(t - a) / 0.1)));
    double A = 0.0;
    for (int i = 0; i < pieces; ++i) {
        A += integrate([&L](double s) { return L.alpha(s); }, a + (t - a) * i / pieces, a + (t - a) * (i + 1) / pieces);
    }
    const double kr = L.kappa(t) * L.plane().rho(L.eta()(t));
    return {(d - A) * kr, kr};
}

// ---- pedal ----

namespace {

struct PedalFrame {
    Vec2 gamma, eta, xi;
    double ex;  // [eta, xi]
    double A;   // [gamma - p, eta]
};

PedalFrame pedal_frame(const LegendreCurve& L, Vec2 p, double t) {
    PedalFrame f;
    f.gamma = L.gamma()(t);
    f.eta = L.eta()(t);
    f.xi = L.plane().birkhoff(f.eta);
    f.ex = bracket(f.eta, f.xi);
    f.A = bracket(f.gamma - p, f.eta);
    return f;
}

Vec2 pedal_point(const LegendreCurve& L, Vec2 p, double t) {
    const PedalFrame f = pedal_frame(L, p, t);
    return f.gamma + (f.A / f.ex) * f.xi;
}

}  // namespace

Vec2 pedal_zeta(const LegendreCurve& L, Vec2 p, double t) {
    const PedalFrame f = pedal_frame(L, p, t);
    const double r = L.plane().rho(f.eta);
    const Vec2 bxi = L.plane().birkhoff(f.xi);
    return (bracket(f.gamma - p, f.xi) - r * f.A * bracket(f.eta, bxi) / f.ex) * f.xi + r * f.A * bxi;
}

Vec2 pedal_derivative(const LegendreCurve& L, Vec2 p, double t) {
    const PedalFrame f = pedal_frame(L, p, t);
    return (L.kappa(t) / f.ex) * pedal_zeta(L, p, t);
}

LegendreCurve PedalResult::as_legendre(PlanePtr plane) const {
    if (!frontal || !nu) throw Error(ErrorKind::PreconditionViolated, "pedal point lies on the curve; no front normal");
    return LegendreCurve(std::move(plane), curve, *nu);
}

PedalResult pedal(const LegendreCurve& L, Vec2 p) {
    auto base = std::make_shared<LegendreCurve>(L);
    const Domain dom = L.domain();
    ParamCurve curve(dom, [base, p](double t) { return pedal_point(*base, p, t); }, {}, L.gamma().samples(), 1e-6);
    PedalResult out{std::move(curve), p, {}, {}, {}, {}, false, 0.0, std::nullopt};
    const CurvaturePair cp = curvature_pair(L);
    out.t = cp.t;
    const NormedPlane& plane = L.plane();

    std::vector<double> dist(cp.t.size());
    for (std::size_t i = 0; i < cp.t.size(); ++i) {
        const PedalFrame f = pedal_frame(L, p, cp.t[i]);
        out.xi_a.push_back(f.xi / f.ex);
        out.zeta.push_back(pedal_zeta(L, p, cp.t[i]));
        dist[i] = plane.norm(f.gamma - p);
    }

    const ZeroScan kz = scan_zeros(dom, cp.t, cp.kappa, 1e-12 * max_abs(cp.kappa),
                                   [base, dom](double t) { return base->kappa(dom.wrap(t)); });
    for (const Crossing& c : kz.crossings) out.singular.push_back(c.t);
    for (double t : kz.touches) out.singular.push_back(t);

    // refine local minima of the distance to p
    const std::size_t n = dist.size();
    const double h = cp.t.size() > 1 ? cp.t[1] - cp.t[0] : dom.span();
    auto d_at = [base, p, dom](double t) { return base->plane().norm(base->gamma()(dom.wrap(t)) - p); };
    double best = std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, scale_of(L.gamma()));
    for (std::size_t i = 0; i < n; ++i) {
        const bool has_left = dom.closed || i > 0, has_right = dom.closed || i + 1 < n;
        const double left = has_left ? dist[(i + n - 1) % n] : dist[i] + 1;
        const double right = has_right ? dist[(i + 1) % n] : dist[i] + 1;
        if (dist[i] > left || dist[i] > right) continue;
        const double a = dom.closed ? cp.t[i] - h : std::max(dom.t0, cp.t[i] - h);
        const double b = dom.closed ? cp.t[i] + h : std::min(dom.t1, cp.t[i] + h);
        const Minimum m = golden_section(d_at, a, b, 200, 1e-14 * dom.span());
        best = std::min(best, m.value);
        if (m.value < 1e-6 * scale) {
            const double t = dom.wrap(m.x);
            bool dup = false;
            for (double s : out.singular) dup = dup || std::abs(s - t) < 2 * h;
            if (!dup) out.singular.push_back(t);
        }
    }
    std::sort(out.singular.begin(), out.singular.end());
    out.min_distance = best;
    out.frontal = best > 1e-6 * scale;
    if (out.frontal) {
        out.nu = NormalField(
            dom,
            [base, p](double t) {
                const Vec2 z = pedal_zeta(*base, p, t);
                return base->plane().birkhoff_inverse(base->plane().normalize(z));
            },
            NormalProvenance::analytic);
    }
    return out;
}

EnvelopeResidual pedal_envelope_residual(const LegendreCurve& L, Vec2 p, double t, Vec2 v) {
    const Domain dom = L.domain();
    const double scale = std::max(1.0, scale_of(L.gamma()));
    const NormedPlane& plane = L.plane();
    EnvelopeResidual r;
    auto line = [&](double s) -> std::optional<Vec2> {
        const Vec2 w = pedal_point(L, p, s) - p;
        if (plane.norm(w) < 1e-9 * scale) return std::nullopt;
        return plane.birkhoff(w);
    };
    std::optional<Vec2> dir = line(t);
    if (!dir) {
        const double step = 1e-5 * dom.span();
        const double s = (dom.closed || t + step <= dom.t1) ? t + step : t - step;
        dir = line(s);
        if (!dir) throw Error(ErrorKind::DegenerateLine, "pedal point coincides with p on both sides");
        r.low_confidence = true;
    }
    r.F = bracket(pedal_point(L, p, t) - v, *dir);
    auto F = [&](double s) {
        const std::optional<Vec2> d = line(s);
        if (!d) throw Error(ErrorKind::DegenerateLine, "pedal point coincides with p inside the stencil");
        return bracket(pedal_point(L, p, s) - v, *d);
    };
    r.dF = fd_derivative(F, t, 1, dom);
    return r;
}

// ---- osculating circle and vertices ----

std::pair<double, double> distance_squared_derivatives(const LegendreCurve& L, double t, Vec2 center) {
    const NormedPlane& plane = L.plane();
    const ParamCurve& g = L.gamma();
    const Domain dom = L.domain();
    auto D = [&](double s) {
        const double n = plane.norm(g(s) - center);
        return n * n;
    };
    auto speed = [&](double s) { return plane.norm(g.derivative(s, 1)); };
    const double Dt = fd_derivative(D, t, 1, dom);
    const double Dtt = fd_derivative(D, t, 2, dom);
    const double sp = speed(t);
    const double spt = fd_derivative(speed, t, 1, dom);
    return {Dt / sp, (Dtt * sp - Dt * spt) / (sp * sp * sp)};
}

OsculatingData osculating_data(const LegendreCurve& L, double t) {
    const CurvaturePair cp = curvature_pair(L);
    const double a = L.alpha(t), k = L.kappa(t);
    if (std::abs(a) <= 1e-6 * max_abs(cp.alpha)) {
        std::ostringstream msg;
        msg << "gamma is singular at t = " << t;
        throw Error(ErrorKind::SingularPoint, msg.str());
    }
    if (std::abs(k) <= 1e-6 * max_abs(cp.kappa)) {
        std::ostringstream msg;
        msg << "kappa vanishes at t = " << t;
        throw Error(ErrorKind::KappaVanishes, msg.str());
    }
    OsculatingData o;
    o.center = L.gamma()(t) - (a / k) * L.eta()(t);
    o.radius = L.plane().norm(L.gamma()(t) - o.center);
    std::tie(o.d1, o.d2) = distance_squared_derivatives(L, t, o.center);
    return o;
}

double vertex_residual(const LegendreCurve& L, double t) {
    const CurvaturePair cp = curvature_pair(L);
    const double k = L.kappa(t);
    if (std::abs(k) <= 1e-6 * max_abs(cp.kappa)) {
        std::ostringstream msg;
        msg << "kappa vanishes at t = " << t;
        throw Error(ErrorKind::KappaVanishes, msg.str());
    }
    const Vec2 eta = L.eta()(t);
    return bracket(L.gamma().derivative(t, 2), eta) + (L.alpha(t) / k) * bracket(eta, L.eta().derivative(t, 2));
}

}  // namespace legendre
