#include <doctest.h>

#include <cmath>

#include "legendre/analysis.hpp"
#include "legendre/catalog.hpp"
#include "legendre/error.hpp"

using namespace legendre;

namespace {

PlanePtr E() {
    static PlanePtr p = build_plane(NormSpec::euclidean());
    return p;
}
PlanePtr L3() {
    static PlanePtr p = build_plane(NormSpec::lp(3.0));
    return p;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IoError;
}

double sup_diff(const std::vector<double>& v, auto&& f, const std::vector<double>& t) {
    double m = 0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - f(t[i])));
    return m;
}

}  // namespace

TEST_CASE("curvature pair on fixtures") {
    const LegendreCurve circ = LegendreCurve::from_curve(E(), catalog::circle());
    const CurvaturePair c = curvature_pair(circ);
    CHECK(sup_diff(c.alpha, [](double) { return 1.0; }, c.t) < 1e-7);
    CHECK(sup_diff(c.kappa, [](double) { return 1.0; }, c.t) < 1e-7);

    const LegendreCurve ast = LegendreCurve::from_curve(E(), catalog::astroid());
    const CurvaturePair a = curvature_pair(ast);
    CHECK(sup_diff(a.alpha, [](double t) { return 3 * std::sin(t) * std::cos(t); }, a.t) < 1e-6);
    CHECK(sup_diff(a.kappa, [](double) { return -1.0; }, a.t) < 1e-6);

    const LegendreCurve uc = LegendreCurve::from_curve(L3(), catalog::unit_circle_of_norm(L3()));
    const CurvaturePair u = curvature_pair(uc);
    auto speed = [](double t) { return L3()->norm(L3()->circle_tangent(t)); };
    CHECK(sup_diff(u.alpha, speed, u.t) < 1e-6);
    CHECK(sup_diff(u.kappa, speed, u.t) < 1e-6);

    // Frenet consistency
    for (double t = 0.05; t < kTwoPi; t += 0.1) {
        const Vec2 xi = ast.xi(t);
        CHECK(euclid(ast.gamma().derivative(t, 1) - xi * ast.alpha(t)) < 1e-6);
        CHECK(euclid(ast.eta().derivative(t, 1) - xi * ast.kappa(t)) < 1e-6);
    }
}

TEST_CASE("circular curvature") {
    const CurvaturePair c = curvature_pair(LegendreCurve::from_curve(E(), catalog::circle(2.0)));
    for (const auto& k : circular_curvature(c)) {
        REQUIRE(k.has_value());
        CHECK(std::abs(*k - 0.5) < 1e-7);
    }
    const CurvaturePair u = curvature_pair(LegendreCurve::from_curve(L3(), catalog::unit_circle_of_norm(L3())));
    for (const auto& k : circular_curvature(u)) CHECK(std::abs(*k - 1.0) < 1e-5);
    const LegendreCurve cusp = LegendreCurve::from_curve(E(), catalog::cusp_t2t3());
    CHECK(cusp.kappa(1.0) / cusp.alpha(1.0) == doctest::Approx(6.0 / 13.0 / std::sqrt(13.0)).epsilon(1e-7));
    const CurvaturePair cc = curvature_pair(cusp);
    const auto masked = circular_curvature(cc);
    CHECK(std::count_if(masked.begin(), masked.end(), [](const auto& k) { return !k; }) <= 1);
}

TEST_CASE("circular curvature equals the derivative of the arc-length angle") {
    // k(s) = u'(s), with u the arc-length position of eta on the unit circle
    const LegendreCurve ell = LegendreCurve::from_curve(L3(), catalog::ellipse(2, 1));
    for (double t = 0.1; t < kTwoPi; t += 0.37) {
        const double h = 1e-4;
        auto u = [&](double s) { return L3()->arc_parameter(ell.eta()(s)); };
        double du = u(t + h) - u(t - h);
        du = std::remainder(du, L3()->total_length());
        const double ds = L3()->norm(ell.gamma().derivative(t, 1)) * 2 * h;
        CHECK(std::abs(du / ds - ell.kappa(t) / ell.alpha(t)) < 1e-4);
    }
}

TEST_CASE("singularity report: astroid") {
    const LegendreCurve ast = LegendreCurve::from_curve(E(), catalog::astroid());
    const SingularityReport r = singularity_report(ast, curvature_pair(ast));
    REQUIRE(r.cusps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(r.cusps[i].t - i * kPi / 2) < 1e-9);
        CHECK_FALSE(r.cusps[i].zig);
        CHECK(lateral_tangent_is_zig(ast, r.cusps[i].t) == r.cusps[i].zig);
    }
    CHECK(r.inflections.empty());
    CHECK(r.vertices.size() == 4);
    CHECK(r.regular_vertex_count() == 4);
    CHECK(r.is_front);
    CHECK_FALSE(r.is_immersion);
    REQUIRE(r.maslov);
    CHECK(r.maslov->word_reduction == 0);
    CHECK(r.maslov->flip_flop == 0);
    CHECK(r.maslov->rotation == 0);
    // a vertex strictly between consecutive cusps
    for (std::size_t i = 0; i < 4; ++i) {
        const double a = r.cusps[i].t, b = i == 3 ? kTwoPi : r.cusps[i + 1].t;
        CHECK(std::any_of(r.vertices.begin(), r.vertices.end(), [&](const Vertex& v) { return v.t > a && v.t < b; }));
    }
}

TEST_CASE("singularity report: (t^2, t^3) and circle") {
    const LegendreCurve cusp = LegendreCurve::from_curve(E(), catalog::cusp_t2t3());
    const SingularityReport r = singularity_report(cusp, curvature_pair(cusp));
    REQUIRE(r.cusps.size() == 1);
    CHECK(std::abs(r.cusps[0].t) < 1e-9);
    CHECK(r.cusps[0].zig);
    CHECK(cusp.kappa(0.0) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(lateral_tangent_is_zig(cusp, 0.0));
    CHECK_FALSE(r.maslov);

    const LegendreCurve circ = LegendreCurve::from_curve(E(), catalog::circle());
    const SingularityReport rc = singularity_report(circ, curvature_pair(circ));
    CHECK(rc.cusps.empty());
    CHECK(rc.inflections.empty());
    CHECK(rc.all_vertices);
    CHECK(rc.is_immersion);
    CHECK(maslov_index(circ, curvature_pair(circ)).rotation == 0);
}

TEST_CASE("ellipse vertices and inflection typing") {
    const LegendreCurve ell = LegendreCurve::from_curve(E(), catalog::ellipse(2, 1));
    const SingularityReport r = singularity_report(ell, curvature_pair(ell));
    REQUIRE(r.vertices.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r.vertices[i].t - i * kPi / 2) < 1e-7);

    // a figure-eight-like curve with kappa changing sign: (sin t, sin 2t)
    const ParamCurve eight(Domain{0, kTwoPi, true}, [](double t) { return Vec2{std::sin(t), std::sin(2 * t)}; },
                           {[](double t) { return Vec2{std::cos(t), 2 * std::cos(2 * t)}; }});
    const LegendreCurve L = LegendreCurve::from_curve(E(), eight);
    const SingularityReport re = singularity_report(L, curvature_pair(L));
    CHECK(re.inflections.size() == 2);
    CHECK(re.cusps.empty());
    REQUIRE(re.maslov);
    // immersed loop: no cusps, the normal turns with the tangent
    CHECK(re.maslov->flip_flop == re.maslov->rotation);
}

TEST_CASE("cyclic word reduction") {
    CHECK(reduce_cyclic_word({}) == 0);
    CHECK(reduce_cyclic_word({true, true, true, true}) == 0);
    CHECK(reduce_cyclic_word({true, false}) == 1);
    CHECK(reduce_cyclic_word({true, false, false, true}) == 0);
    CHECK(reduce_cyclic_word({true, false, true, false}) == 2);
    CHECK(reduce_cyclic_word({true, false, true}) == std::nullopt);
    CHECK(reduce_cyclic_word({false, true, false, false}) == 1);
}

TEST_CASE("maslov preconditions") {
    const LegendreCurve cusp = LegendreCurve::from_curve(E(), catalog::cusp_t2t3());
    CHECK(kind_of([&] { maslov_index(cusp, curvature_pair(cusp)); }) == ErrorKind::NotClosed);
}

TEST_CASE("not a front") {
    // gamma = (t^2, t^5): alpha and kappa both vanish at t = 0
    const ParamCurve c(Domain{-1, 1, false}, [](double t) { return Vec2{t * t, std::pow(t, 5)}; },
                       {[](double t) { return Vec2{2 * t, 5 * std::pow(t, 4)}; }}, 2049);
    const LegendreCurve L = LegendreCurve::from_curve(E(), c);
    CHECK(kind_of([&] { singularity_report(L, curvature_pair(L)); }) == ErrorKind::NotAFront);

    // (t^3, t^4) is a front whose singular point is not an ordinary cusp
    const ParamCurve d(Domain{-1, 1, false}, [](double t) { return Vec2{t * t * t, t * t * t * t}; },
                       {[](double t) { return Vec2{3 * t * t, 4 * t * t * t}; }}, 2049);
    const LegendreCurve D = LegendreCurve::from_curve(E(), d);
    const SingularityReport r = singularity_report(D, curvature_pair(D));
    CHECK(r.cusps.empty());
    REQUIRE(r.degenerate_singularities.size() == 1);
    CHECK(std::abs(r.degenerate_singularities[0]) < 1e-9);
    CHECK(std::any_of(r.vertices.begin(), r.vertices.end(), [](const Vertex& v) { return !v.regular; }));
}

TEST_CASE("contact order") {
    const LegendreCurve circ = LegendreCurve::from_curve(E(), catalog::circle());
    CHECK(contact_order(circ, 0.3, circ, 0.3, 4) == 4);
    CHECK(contact_order(circ, 0.0, circ, 0.5, 4) == 0);
    const auto same = contact_implies_curvature_match(circ, 0.3, circ, 0.3, 3);
    for (double r : same.residuals) CHECK(r < 1e-8);
    CHECK(kind_of([&] { contact_order(circ, 0, circ, 0, 5); }) == ErrorKind::BadParameter);

    // reparametrised circle (cos(u + u^2), sin(u + u^2)) on [-0.5, 0.5]:
    // position and velocity agree at 0, second derivatives differ
    const ParamCurve rep(Domain{-0.5, 0.5, false},
                         [](double u) { return polar(u + u * u); },
                         {[](double u) { return rot90(polar(u + u * u)) * (1 + 2 * u); }});
    const LegendreCurve R = LegendreCurve::from_curve(E(), rep);
    CHECK(contact_order(circ, 0.0, R, 0.0, 4) == 2);
    const auto m = contact_implies_curvature_match(circ, 0.0, R, 0.0, 2);
    CHECK(m.residuals[0] < 1e-4);

    // the radius-2 circle through (1, 0): eta' differs already at first order
    const ParamCurve big(Domain{-kPi, kPi, false},
                         [](double t) { return Vec2{2 * std::cos(t / 2) - 1, 2 * std::sin(t / 2)}; },
                         {[](double t) { return Vec2{-std::sin(t / 2), std::cos(t / 2)}; }});
    const LegendreCurve B = LegendreCurve::from_curve(E(), big);
    CHECK(contact_order(circ, 0.0, B, 0.0, 4) == 1);
    CHECK(kind_of([&] { contact_implies_curvature_match(circ, 0.0, B, 0.0, 2); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("transfer_legendre") {
    const LegendreCurve ast = LegendreCurve::from_curve(E(), catalog::astroid());
    const LegendreCurve same = transfer_legendre(ast, E());
    for (double t = 0.1; t < 6; t += 0.5) CHECK(euclid(same.eta()(t) - ast.eta()(t)) < 1e-12);

    const LegendreCurve moved = transfer_legendre(ast, L3());
    CHECK(moved.residual() < 1e-5);
    const SingularityReport r = singularity_report(moved, curvature_pair(moved));
    REQUIRE(r.cusps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r.cusps[i].t - i * kPi / 2) < 1e-8);

    const LegendreCurve circ = LegendreCurve::from_curve(E(), catalog::circle());
    // away from the axes, where the l3 transfer map is smooth
    const ParamCurve rep(Domain{-0.5, 0.5, false}, [](double u) { return polar(0.7 + u + u * u); },
                         {[](double u) { return rot90(polar(0.7 + u + u * u)) * (1 + 2 * u); }});
    const LegendreCurve R = LegendreCurve::from_curve(E(), rep);
    CHECK(contact_order(circ, 0.7, R, 0.0, 4) == 2);
    CHECK(contact_order(transfer_legendre(circ, L3()), 0.7, transfer_legendre(R, L3()), 0.0, 4) == 2);
}
