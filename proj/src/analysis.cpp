#include "legendre/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legendre/error.hpp"
#include "legendre/numerics.hpp"

namespace legendre {

LegendreCurve::LegendreCurve(PlanePtr plane, ParamCurve gamma, NormalField eta, double tolerance)
    : plane_(std::move(plane)), gamma_(std::move(gamma)), eta_(std::move(eta)) {
    residual_ = legendre_residual(*plane_, gamma_, eta_);
    if (!(residual_ < tolerance)) {
        std::ostringstream msg;
        msg << "pair fails the Legendre condition: residual " << residual_ << " >= " << tolerance;
        throw Error(ErrorKind::LegendreViolation, msg.str());
    }
}

LegendreCurve LegendreCurve::from_curve(PlanePtr plane, ParamCurve gamma) {
    NormalField eta = extend_normal(plane, gamma);
    return LegendreCurve(std::move(plane), std::move(gamma), std::move(eta));
}

double LegendreCurve::frame(double t, Vec2 eta) const {
    const double f = bracket(eta, plane_->birkhoff(eta));
    if (!(f >= 1e-10)) {
        std::ostringstream msg;
        msg << "[eta, xi] = " << f << " at t = " << t;
        throw Error(ErrorKind::DegenerateFrame, msg.str());
    }
    return f;
}

double LegendreCurve::alpha(double t) const {
    const Vec2 e = eta_(t);
    return bracket(e, gamma_.derivative(t, 1)) / frame(t, e);
}

double LegendreCurve::kappa(double t) const {
    const Vec2 e = eta_(t);
    return bracket(e, eta_.derivative(t, 1)) / frame(t, e);
}

double LegendreCurve::alpha_derivative(double t, int order) const {
    if (order == 0) return alpha(t);
    return fd_derivative([this](double s) { return alpha(s); }, t, order, domain());
}

double LegendreCurve::kappa_derivative(double t, int order) const {
    if (order == 0) return kappa(t);
    return fd_derivative([this](double s) { return kappa(s); }, t, order, domain());
}

CurvaturePair curvature_pair(const LegendreCurve& L) {
    CurvaturePair cp;
    cp.t = L.grid();
    cp.alpha.reserve(cp.t.size());
    cp.kappa.reserve(cp.t.size());
    for (double t : cp.t) {
        cp.alpha.push_back(L.alpha(t));
        cp.kappa.push_back(L.kappa(t));
    }
    return cp;
}

std::vector<std::optional<double>> circular_curvature(const CurvaturePair& cp) {
    const double floor = 1e-6 * max_abs(cp.alpha);
    std::vector<std::optional<double>> k(cp.t.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (std::abs(cp.alpha[i]) > floor) k[i] = cp.kappa[i] / cp.alpha[i];
    }
    return k;
}

std::size_t SingularityReport::zig_count() const {
    return static_cast<std::size_t>(std::count_if(cusps.begin(), cusps.end(), [](const Cusp& c) { return c.zig; }));
}
std::size_t SingularityReport::flip_count() const {
    return static_cast<std::size_t>(
        std::count_if(inflections.begin(), inflections.end(), [](const Inflection& i) { return i.flip; }));
}
std::size_t SingularityReport::regular_vertex_count() const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.regular; }));
}

namespace {

constexpr double kNoise = 1e-8;      // relative zero level for sampled scans
constexpr double kAdmission = 1e-6;  // relative level for cusp and front tests

// Fourth-order derivative of grid samples (uniform spacing).
std::vector<double> grid_derivative(const std::vector<double>& v, const Domain& dom) {
    const std::size_t n = v.size();
    const double h = dom.closed ? dom.span() / static_cast<double>(n) : dom.span() / static_cast<double>(n - 1);
    std::vector<double> out(n);
    static const std::vector<double> central = {-2, -1, 0, 1, 2};
    const std::vector<double> wc = fd_weights(central, 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> offs;
        if (dom.closed || (i >= 2 && i + 2 < n)) {
            offs = central;
        } else if (i < 2) {
            offs = {0, 1, 2, 3, 4};
            for (double& o : offs) o -= static_cast<double>(i);
        } else {
            offs = {-4, -3, -2, -1, 0};
            for (double& o : offs) o += static_cast<double>(n - 1 - i);
        }
        const std::vector<double> w = offs == central ? wc : fd_weights(offs, 1);
        double acc = 0.0;
        for (std::size_t k = 0; k < offs.size(); ++k) {
            const long long j = static_cast<long long>(i) + static_cast<long long>(offs[k]);
            const long long m = static_cast<long long>(n);
            acc += w[k] * v[static_cast<std::size_t>(((j % m) + m) % m)];
        }
        out[i] = acc / h;
    }
    return out;
}

// Bracketed refinement that falls back to the linear estimate when the
// pointwise function disagrees in sign with the samples.
ZeroScan scan_with_fallback(const Domain& dom, std::span<const double> grid, std::span<const double> values,
                            double threshold, const std::function<double(double)>& pointwise) {
    try {
        return scan_zeros(dom, grid, values, threshold, pointwise);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoConvergence) throw;
        return scan_zeros(dom, grid, values, threshold);
    }
}

[[noreturn]] void not_a_front(double t) {
    std::ostringstream msg;
    msg << "alpha and kappa vanish together near t = " << t;
    throw Error(ErrorKind::NotAFront, msg.str());
}

void find_vertices(const LegendreCurve& L, const CurvaturePair& cp, double alpha_floor, double kappa_floor,
                   SingularityReport& rep) {
    const Domain dom = L.domain();
    const std::size_t n = cp.t.size();
    std::vector<double> q(n);
    std::vector<bool> valid(n);
    double max_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        valid[i] = std::abs(cp.kappa[i]) > kappa_floor;
        q[i] = valid[i] ? cp.alpha[i] / cp.kappa[i] : 0.0;
        if (valid[i]) max_q = std::max(max_q, std::abs(q[i]));
    }
    const std::vector<double> dq = grid_derivative(q, dom);
    // a node is usable when its whole stencil sees nonvanishing kappa
    std::vector<bool> usable(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (int k = -4; k <= 4 && ok; ++k) {
            const long long j = static_cast<long long>(i) + k;
            if (!dom.closed && (j < 0 || j >= static_cast<long long>(n))) continue;
            const long long m = static_cast<long long>(n);
            ok = valid[static_cast<std::size_t>(((j % m) + m) % m)];
        }
        usable[i] = ok;
    }

    // q constant to working precision: its derivative is pure noise
    double q_lo = INFINITY, q_hi = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        if (!usable[i]) continue;
        q_lo = std::min(q_lo, q[i]);
        q_hi = std::max(q_hi, q[i]);
    }
    if (q_hi >= q_lo && q_hi - q_lo <= 1e-8 * max_q) {
        rep.all_vertices = true;
        rep.notes.push_back("alpha/kappa is constant: every parameter is a vertex");
        return;
    }

    auto dq_point = [&](double t) {
        return fd_derivative([&](double s) { return L.alpha(s) / L.kappa(s); }, dom.wrap(t), 1, dom);
    };
    double max_dq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (usable[i]) max_dq = std::max(max_dq, std::abs(dq[i]));
    }
    const double threshold = std::max(kNoise * max_dq, 1e-9 * max_q);

    std::vector<double> found;
    bool every_run_flat = true;
    bool any_run = false;
    auto scan_run = [&](const Domain& d, std::vector<double> g, std::vector<double> v) {
        any_run = true;
        const ZeroScan z = scan_with_fallback(d, g, v, threshold, dq_point);
        if (!z.all_zero) every_run_flat = false;
        for (const Crossing& c : z.crossings) found.push_back(c.t);
        for (double t : z.touches) found.push_back(t);
    };

    const bool all_usable = std::all_of(usable.begin(), usable.end(), [](bool b) { return b; });
    if (all_usable && dom.closed) {
        scan_run(dom, cp.t, dq);
    } else {
        std::size_t start = 0;
        if (dom.closed) {
            // begin after an unusable node so runs do not straddle the seam
            while (start < n && usable[start]) ++start;
        }
        std::size_t i = 0;
        while (i < n) {
            const std::size_t idx = (start + i) % n;
            if (!usable[idx]) {
                ++i;
                continue;
            }
            std::vector<double> g, v;
            double offset = 0.0;
            std::size_t prev = idx;
            while (i < n && usable[(start + i) % n]) {
                const std::size_t k = (start + i) % n;
                if (k < prev) offset = dom.span();
                g.push_back(cp.t[k] + offset);
                v.push_back(dq[k]);
                prev = k;
                ++i;
            }
            if (g.size() >= 2) scan_run(Domain{g.front(), g.back(), false}, g, v);
        }
    }
    if (any_run && every_run_flat) {
        rep.all_vertices = true;
        rep.notes.push_back("alpha/kappa is constant: every parameter is a vertex");
        return;
    }
    for (double t : found) {
        const double tw = dom.wrap(t);
        rep.vertices.push_back({tw, std::abs(L.alpha(tw)) > alpha_floor});
    }
}

MaslovIndex maslov_values(const CurvaturePair& cp, const SingularityReport& rep) {
    MaslovIndex m;
    if (rep.degenerate_singularities.empty()) {
        std::vector<bool> word;
        for (const Cusp& c : rep.cusps) word.push_back(c.zig);
        m.word_reduction = reduce_cyclic_word(word);
    }
    const long long flips = static_cast<long long>(rep.flip_count());
    const long long flops = static_cast<long long>(rep.inflections.size()) - flips;
    if ((flips - flops) % 2 == 0) m.flip_flop = static_cast<int>(std::llabs(flips - flops) / 2);
    const ProjectiveCurvatureMap pm = projective_curvature(cp, true);
    m.rotation = static_cast<int>(std::lround(std::abs(pm.total_change) / kTwoPi));
    return m;
}

}  // namespace

SingularityReport singularity_report(const LegendreCurve& L, const CurvaturePair& cp) {
    SingularityReport rep;
    const Domain dom = L.domain();
    const std::size_t n = cp.t.size();
    const double max_a = max_abs(cp.alpha), max_k = max_abs(cp.kappa);
    const double alpha_floor = kAdmission * max_a, kappa_floor = kAdmission * max_k;

    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(cp.alpha[i]) <= alpha_floor && std::abs(cp.kappa[i]) <= kappa_floor) not_a_front(cp.t[i]);
    }

    auto alpha_at = [&](double t) { return L.alpha(dom.wrap(t)); };
    auto kappa_at = [&](double t) { return L.kappa(dom.wrap(t)); };

    // cusps
    const ZeroScan za = scan_with_fallback(dom, cp.t, cp.alpha, kNoise * max_a, alpha_at);
    if (za.all_zero) {
        rep.is_immersion = false;
        rep.notes.push_back("alpha vanishes identically");
    } else {
        double max_ap = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            max_ap = std::max(max_ap, std::abs(cp.alpha[i + 1] - cp.alpha[i]) / (cp.t[i + 1] - cp.t[i]));
        }
        for (const Crossing& c : za.crossings) {
            const double k = L.kappa(c.t);
            if (std::abs(k) <= kappa_floor) not_a_front(c.t);
            const double ap = L.alpha_derivative(c.t, 1);
            if (std::abs(ap) > kAdmission * max_ap) {
                rep.cusps.push_back({c.t, k > 0.0, ap});
            } else {
                rep.degenerate_singularities.push_back(c.t);
            }
        }
        for (double t : za.touches) {
            if (std::abs(L.kappa(t)) <= kappa_floor) not_a_front(t);
            rep.degenerate_singularities.push_back(t);
        }
    }
    if (!rep.cusps.empty() || !rep.degenerate_singularities.empty()) rep.is_immersion = false;

    // inflections
    const ZeroScan zk = scan_with_fallback(dom, cp.t, cp.kappa, kNoise * max_k, kappa_at);
    if (!zk.all_zero) {
        for (const Crossing& c : zk.crossings) {
            const double a = L.alpha(c.t);
            if (std::abs(a) <= alpha_floor) not_a_front(c.t);
            rep.inflections.push_back({c.t, c.direction * (a > 0 ? 1 : -1) > 0});
        }
        if (!zk.touches.empty()) rep.notes.push_back("kappa has tangential zeros (not inflections)");
    } else {
        rep.notes.push_back("kappa vanishes identically");
    }

    // vertices, including degenerate singular points
    find_vertices(L, cp, alpha_floor, kappa_floor, rep);
    for (double t : rep.degenerate_singularities) {
        const bool known = std::any_of(rep.vertices.begin(), rep.vertices.end(),
                                       [&](const Vertex& v) { return std::abs(v.t - t) < 1e-6 * dom.span(); });
        if (!known) rep.vertices.push_back({t, false});
    }
    std::sort(rep.vertices.begin(), rep.vertices.end(), [](const Vertex& a, const Vertex& b) { return a.t < b.t; });

    if (dom.closed) {
        rep.maslov = maslov_values(cp, rep);
        rep.notes.push_back("genericity of self-intersections is not verified");
    }
    return rep;
}

bool lateral_tangent_is_zig(const LegendreCurve& L, double t0, double h) {
    const Domain& dom = L.domain();
    double a = t0 - h, b = t0 + h;
    if (!dom.closed) {
        a = std::max(a, dom.t0);
        b = std::min(b, dom.t1);
    }
    return bracket(L.gamma().derivative(a, 1), L.gamma().derivative(b, 1)) < 0.0;
}

std::optional<int> reduce_cyclic_word(const std::vector<bool>& letters) {
    std::vector<bool> stack;
    for (bool c : letters) {
        if (!stack.empty() && stack.back() == c) {
            stack.pop_back();
        } else {
            stack.push_back(c);
        }
    }
    std::size_t lo = 0, hi = stack.size();
    while (hi - lo >= 2 && stack[lo] == stack[hi - 1]) {
        ++lo;
        --hi;
    }
    const std::size_t len = hi - lo;
    if (len % 2 != 0) return std::nullopt;
    return static_cast<int>(len / 2);
}

ProjectiveCurvatureMap projective_curvature(const CurvaturePair& cp, bool closed) {
    ProjectiveCurvatureMap pm;
    pm.t = cp.t;
    const double sa = max_abs(cp.alpha) > 0 ? max_abs(cp.alpha) : 1.0;
    const double sk = max_abs(cp.kappa) > 0 ? max_abs(cp.kappa) : 1.0;
    const std::size_t n = cp.t.size();
    pm.theta.resize(n);
    auto angle = [&](std::size_t i) { return std::atan2(cp.kappa[i] / sk, cp.alpha[i] / sa); };
    for (std::size_t i = 0; i < n; ++i) {
        const double a = angle(i);
        pm.theta[i] = i == 0 ? a : pm.theta[i - 1] + std::remainder(a - pm.theta[i - 1], kPi);
    }
    pm.total_change = pm.theta[n - 1] - pm.theta[0];
    if (closed) pm.total_change += std::remainder(angle(0) - pm.theta[n - 1], kPi);
    return pm;
}

MaslovIndex maslov_index(const LegendreCurve& L, const CurvaturePair& cp) {
    if (!L.closed()) throw Error(ErrorKind::NotClosed, "the Maslov index needs a closed front");
    const SingularityReport rep = singularity_report(L, cp);
    if (!rep.degenerate_singularities.empty()) {
        throw Error(ErrorKind::PreconditionViolated, "front has non-ordinary singular points");
    }
    const MaslovIndex m = *rep.maslov;
    std::vector<int> defined;
    for (const auto& v : {m.word_reduction, m.flip_flop, m.rotation}) {
        if (v) defined.push_back(*v);
    }
    for (int v : defined) {
        if (v != defined.front()) {
            std::ostringstream msg;
            msg << "Maslov methods disagree: word " << (m.word_reduction ? std::to_string(*m.word_reduction) : "-")
                << ", flip/flop " << (m.flip_flop ? std::to_string(*m.flip_flop) : "-") << ", rotation "
                << (m.rotation ? std::to_string(*m.rotation) : "-");
            throw Error(ErrorKind::MethodsDisagree, msg.str());
        }
    }
    return m;
}

int contact_order(const LegendreCurve& L1, double t0, const LegendreCurve& L2, double u0, int kmax) {
    if (kmax < 0 || kmax > 4) throw Error(ErrorKind::BadParameter, "contact order is limited to kmax <= 4");
    if (kmax == 0) return 0;
    const Jet g1 = curve_jet(L1.gamma(), t0, kmax - 1), g2 = curve_jet(L2.gamma(), u0, kmax - 1);
    const Jet e1 = normal_jet(L1.eta(), t0, kmax - 1), e2 = normal_jet(L2.eta(), u0, kmax - 1);
    double scale = 0.0;
    for (const Jet* j : {&g1, &g2, &e1, &e2}) {
        for (const Vec2& d : j->d) scale = std::max({scale, std::abs(d.x), std::abs(d.y)});
    }
    const double tol = 1e-5 * scale;
    auto agree = [tol](Vec2 a, Vec2 b) { return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol; };
    int order = 0;
    for (int m = 0; m < kmax; ++m) {
        if (!agree(g1.d[m], g2.d[m]) || !agree(e1.d[m], e2.d[m])) break;
        order = m + 1;
    }
    return order;
}

CurvatureMatchReport contact_implies_curvature_match(const LegendreCurve& L1, double t0, const LegendreCurve& L2,
                                                     double u0, int k, double tolerance) {
    const int order = contact_order(L1, t0, L2, u0, std::min(k, 4));
    if (order < k) {
        std::ostringstream msg;
        msg << "contact order " << order << " is below the requested " << k;
        throw Error(ErrorKind::PreconditionViolated, msg.str());
    }
    CurvatureMatchReport r;
    r.matched = true;
    for (int j = 0; j < k; ++j) {
        const double da = std::abs(L1.alpha_derivative(t0, j) - L2.alpha_derivative(u0, j));
        const double dk = std::abs(L1.kappa_derivative(t0, j) - L2.kappa_derivative(u0, j));
        r.residuals.push_back(std::max(da, dk));
        if (!(r.residuals.back() <= tolerance)) r.matched = false;
    }
    return r;
}

LegendreCurve transfer_legendre(const LegendreCurve& L, PlanePtr target) {
    const PlanePtr source = L.plane_ptr();
    const NormalField eta = L.eta();
    NormalField moved(
        L.domain(), [source, target, eta](double t) { return transfer_unit(*source, *target, eta(t)); },
        eta.provenance());
    return LegendreCurve(std::move(target), L.gamma(), std::move(moved));
}

}  // namespace legendre
