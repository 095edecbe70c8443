#include <doctest.h>

#include <cmath>
#include <random>

#include "legendre/catalog.hpp"
#include "legendre/curve.hpp"
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

ParamCurve numeric_only(const ParamCurve& c) {
    return ParamCurve(c.domain(), [c](double t) { return c(t); }, {}, c.samples());
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

}  // namespace

TEST_CASE("derivative") {
    const ParamCurve circ = numeric_only(catalog::circle());
    CHECK(euclid(circ.derivative(0.0, 1) - Vec2{0, 1}) < 1e-10);
    const ParamCurve ast = numeric_only(catalog::astroid());
    const double k = 3.0 / (2.0 * std::sqrt(2.0));
    CHECK(euclid(ast.derivative(kPi / 4, 1) - Vec2{-k, k}) < 1e-8);
    const ParamCurve cusp = numeric_only(catalog::cusp_t2t3());
    CHECK(euclid(cusp.derivative(0.0, 3) - Vec2{0, 6}) < 1e-6);
    // one-sided stencils at the open ends
    CHECK(euclid(cusp.derivative(1.0, 1) - Vec2{2, 3}) < 1e-8);
    CHECK(euclid(cusp.derivative(-1.0, 2) - Vec2{2, -6}) < 1e-6);
    CHECK(kind_of([&] { cusp.derivative(1.5, 1); }) == ErrorKind::OutOfDomain);
    CHECK(kind_of([&] { cusp(-2.0); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("finite differences converge at fourth order") {
    auto f = [](double t) { return Vec2{std::sin(3 * t), std::exp(std::cos(t))}; };
    auto df = [](double t) { return Vec2{3 * std::cos(3 * t), -std::sin(t) * std::exp(std::cos(t))}; };
    const Domain dom{0, kTwoPi, true};
    for (double t : {0.2, 1.3, 4.0}) {
        const double e1 = euclid(fd_derivative(f, t, 1, 2e-2, dom) - df(t));
        const double e2 = euclid(fd_derivative(f, t, 1, 1e-2, dom) - df(t));
        CHECK(e1 / e2 >= 8.0);
    }
    const Domain open{0, 1, false};
    auto g = [](double t) { return Vec2{std::exp(t), std::sin(t)}; };
    const double e1 = euclid(fd_derivative(g, 0.0, 2, 2e-2, open) - Vec2{1, 0});
    const double e2 = euclid(fd_derivative(g, 0.0, 2, 1e-2, open) - Vec2{1, 0});
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("closed curves must close") {
    CHECK(kind_of([] {
              ParamCurve(Domain{0, 1, true}, [](double t) { return Vec2{t, 0}; });
          }) == ErrorKind::NotClosed);
}

TEST_CASE("induced_normal") {
    const ParamCurve circ = catalog::circle();
    const NormalField eta = induced_normal(E(), circ);
    for (double t : circ.grid()) {
        CHECK(euclid(eta(t) - polar(t)) < 1e-12);
        CHECK(bracket(eta(t), circ.derivative(t, 1)) > 0);
    }
    const ParamCurve uc = catalog::unit_circle_of_norm(L3());
    const NormalField e3 = induced_normal(L3(), uc);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, kTwoPi);
    for (int i = 0; i < 64; ++i) {
        const double t = u(rng);
        CHECK(euclid(e3(t) - uc(t)) < 1e-10);
        CHECK(is_birkhoff_orthogonal(*L3(), e3(t), uc.derivative(t, 1), 1e-7));
    }
    CHECK(kind_of([] { induced_normal(E(), catalog::cusp_t2t3()); }) == ErrorKind::SingularPoint);
}

TEST_CASE("extend_normal") {
    const ParamCurve ast = catalog::astroid();
    const NormalField eta = extend_normal(E(), ast);
    CHECK(eta.provenance() == NormalProvenance::extended_through_singularities);
    for (double t = 0; t < kTwoPi; t += 0.01) {
        CHECK(euclid(eta(t) - Vec2{std::sin(t), std::cos(t)}) < 1e-9);
    }
    for (double t : {0.0, kPi / 2, kPi, 1.5 * kPi}) CHECK(euclid(eta(t) - Vec2{std::sin(t), std::cos(t)}) < 1e-9);
    CHECK(legendre_residual(*E(), ast, eta) < 1e-6);

    const ParamCurve cusp = catalog::cusp_t2t3();
    const NormalField ec = extend_normal(E(), cusp);
    for (double t = -1; t <= 1; t += 0.01) {
        CHECK(euclid(ec(t) - Vec2{3 * t, -2} / std::sqrt(4 + 9 * t * t)) < 1e-9);
    }
    CHECK(euclid(ec(0.0) - Vec2{0, -1}) < 1e-9);
    // derivative of the extended field is smooth through the cusp
    CHECK(euclid(ec.derivative(0.0, 1) - Vec2{1.5, 0}) < 1e-6);

    const ParamCurve corner(Domain{-1, 1, false}, [](double t) { return Vec2{std::abs(t), t}; });
    CHECK(kind_of([&] { extend_normal(E(), corner); }) == ErrorKind::LimitsDisagree);

    // agrees with the induced normal on regular curves
    const ParamCurve ell = catalog::ellipse(2, 1);
    const NormalField a = extend_normal(L3(), ell), b = induced_normal(L3(), ell);
    for (double t = 0; t < kTwoPi; t += 0.05) CHECK(euclid(a(t) - b(t)) < 1e-7);
}

TEST_CASE("legendre_residual") {
    const ParamCurve circ = catalog::circle();
    const NormalField good(circ.domain(), [](double t) { return polar(t); }, NormalProvenance::user_supplied);
    const NormalField bad(circ.domain(), [](double t) { return rot90(polar(t)); }, NormalProvenance::user_supplied);
    CHECK(legendre_residual(*E(), circ, good) < 1e-8);
    CHECK(legendre_residual(*E(), circ, bad) == doctest::Approx(1.0).epsilon(1e-9));
}
