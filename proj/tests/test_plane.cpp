#include <doctest.h>

#include <cmath>
#include <random>

#include "legendre/error.hpp"
#include "legendre/plane.hpp"
#include "oracles.hpp"

using namespace legendre;

namespace {

const PlanePtr& euclid_plane() {
    static PlanePtr p = build_plane(NormSpec::euclidean());
    return p;
}
const PlanePtr& l3() {
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

}  // namespace

TEST_CASE("symplectic form") {
    CHECK(bracket({1, 0}, {0, 1}) == 1.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 20; ++i) {
        const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
        CHECK(bracket(a, b) == doctest::Approx(-bracket(b, a)));
    }
}

TEST_CASE("build_plane validation") {
    CHECK(euclid_plane()->total_length() == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(l3()->total_length() > 6.0);
    CHECK(l3()->total_length() < 8.0);
    CHECK(kind_of([] { build_plane(NormSpec::fourier({1.0, -2.0})); }) == ErrorKind::PositivityViolation);
    CHECK(kind_of([] { build_plane(NormSpec::lp(1.0)); }) == ErrorKind::ConvexityViolation);
    CHECK(kind_of([] { build_plane(NormSpec::lp(0.5)); }) == ErrorKind::BadParameter);
    // r = 1 + 0.3 cos 2t loses convexity near the minor axis
    CHECK(kind_of([] { build_plane(NormSpec::fourier({1.0, 0.3})); }) == ErrorKind::ConvexityViolation);
    CHECK_NOTHROW(build_plane(NormSpec::fourier({1.0, 0.05, 0.01})));
}

TEST_CASE("norm_eval") {
    CHECK(euclid_plane()->norm({3, 4}) == doctest::Approx(5.0));
    CHECK(l3()->norm({1, 1}) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    CHECK(l3()->norm({0, 0}) == 0.0);
    CHECK(l3()->norm({-2, 6}) == doctest::Approx(2.0 * l3()->norm({-1, 3})));
}

TEST_CASE("birkhoff map and inverse") {
    const Vec2 e = euclid_plane()->birkhoff({1, 0});
    CHECK(e.x == doctest::Approx(0.0));
    CHECK(e.y == doctest::Approx(1.0));
    const Vec2 b = l3()->birkhoff({1, 0});
    CHECK(std::abs(b.x) < 1e-14);
    CHECK(b.y == doctest::Approx(1.0));
    const double s = std::pow(2.0, -1.0 / 3.0);
    const Vec2 d = l3()->birkhoff({s, s});
    CHECK(d.x == doctest::Approx(-s).epsilon(1e-12));
    CHECK(d.y == doctest::Approx(s).epsilon(1e-12));

    const Vec2 z = l3()->birkhoff_inverse({-s, s});
    CHECK(z.x == doctest::Approx(s).epsilon(1e-12));
    CHECK(z.y == doctest::Approx(s).epsilon(1e-12));
    const Vec2 zr = l3()->birkhoff_inverse_root_find({-s, s});
    CHECK(euclid(zr - z) < 1e-10);
    const Vec2 ei = euclid_plane()->birkhoff_inverse({0, 1});
    CHECK(ei.x == doctest::Approx(1.0));
    CHECK(std::abs(ei.y) < 1e-15);

    CHECK(kind_of([] { l3()->birkhoff({0, 0}); }) == ErrorKind::ZeroVector);
    CHECK(kind_of([] { l3()->birkhoff_inverse({2, 0}); }) == ErrorKind::NotUnit);

    for (const PlanePtr& plane : {euclid_plane(), l3(), build_plane(NormSpec::fourier({1.0, 0.05, 0.01}))}) {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> ang(0, kTwoPi);
        for (int i = 0; i < 64; ++i) {
            const Vec2 v = plane->circle_point(ang(rng));
            const Vec2 w = plane->birkhoff(v);
            CHECK(plane->is_unit(w, 1e-12));
            CHECK(bracket(v, w) > 0);
            CHECK(is_birkhoff_orthogonal(*plane, v, w, 1e-7));
            CHECK(euclid(plane->birkhoff(plane->birkhoff_inverse(w)) - w) < 1e-8);
            CHECK(euclid(plane->birkhoff_inverse_root_find(w) - v) < 1e-8);
            for (double lambda : {0.5, 2.0, 10.0}) CHECK(euclid(plane->birkhoff(v * lambda) - w) < 1e-15);
        }
    }
}

TEST_CASE("birkhoff oracle") {
    CHECK(is_birkhoff_orthogonal(*euclid_plane(), {1, 0}, {0, 1}, 1e-9));
    CHECK_FALSE(is_birkhoff_orthogonal(*euclid_plane(), {1, 0}, {1, 1}, 1e-9));
    CHECK(is_birkhoff_orthogonal(*l3(), {1, 0}, l3()->birkhoff({1, 0}), 1e-9));
    CHECK(kind_of([] { is_birkhoff_orthogonal(*l3(), {0, 0}, {1, 0}, 1e-9); }) == ErrorKind::ZeroVector);
}

TEST_CASE("antinorm") {
    CHECK(euclid_plane()->antinorm({3, 4}) == doctest::Approx(5.0));
    CHECK(l3()->antinorm({1, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l3()->antinorm({1, 1}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(l3()->antinorm({0, 0}) == 0.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 64; ++i) {
        const Vec2 x{u(rng), u(rng)};
        const double a = l3()->antinorm(x), o = oracle::antinorm_sampled(*l3(), x);
        CHECK(std::abs(a - o) <= 1e-6 * o);
        // dual norm of l3 is l_{3/2}
        const double l32 = std::pow(std::pow(std::abs(x.x), 1.5) + std::pow(std::abs(x.y), 1.5), 1.0 / 1.5);
        CHECK(a == doctest::Approx(l32).epsilon(1e-10));
    }
}

TEST_CASE("arc-length parametrisation") {
    const Vec2 q = euclid_plane()->unit_circle_point(kPi / 2);
    CHECK(std::abs(q.x) < 1e-12);
    CHECK(q.y == doctest::Approx(1.0));
    for (const PlanePtr& plane : {euclid_plane(), l3()}) {
        const double L = plane->total_length();
        CHECK(euclid(plane->unit_circle_point(0.0) - plane->circle_point(0.0)) < 1e-14);
        const double h = L * 1e-5;
        for (int i = 0; i < 50; ++i) {
            const double u = L * i / 50.0 + 0.01;
            const Vec2 a = plane->unit_circle_point(u), b = plane->unit_circle_point(u + h);
            CHECK(plane->is_unit(a, 1e-12));
            CHECK(plane->norm(b - a) / h == doctest::Approx(1.0).epsilon(1e-4));
            CHECK(plane->arc_parameter(a) == doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("rho") {
    for (double th = 0; th < kTwoPi; th += 0.3) {
        CHECK(euclid_plane()->rho(polar(th)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(l3()->rho({1, 0}) < 1e-4);
    const double s = std::pow(2.0, -1.0 / 3.0);
    const double diag = l3()->rho({s, s});
    CHECK(diag > 0.0);
    CHECK(diag == doctest::Approx(oracle::rho_fd(*l3(), kPi / 4)).epsilon(1e-6));
    // regression constant for the diagonal of the l3 circle
    CHECK(diag == doctest::Approx(2.0).epsilon(1e-9));
    const auto table = l3()->table_rho();
    const std::size_t n = table.size();
    for (std::size_t i = 0; i < n / 2; ++i) CHECK(std::abs(table[i] - table[i + n / 2]) < 1e-6);
    for (double th : {0.3, 1.1, 2.0, 4.4}) {
        CHECK(l3()->rho(l3()->circle_point(th)) == doctest::Approx(oracle::rho_fd(*l3(), th)).epsilon(1e-6));
    }
    CHECK(kind_of([] { l3()->rho({2, 0}); }) == ErrorKind::NotUnit);
}

TEST_CASE("radon defect") {
    CHECK(euclid_plane()->radon_defect() < 1e-9);
    const PlanePtr round = build_plane(NormSpec::fourier({1.0}));
    CHECK(round->radon_defect() < 1e-9);
    CHECK(l3()->radon_defect() > 1e-3);
    // antinorm proportional to the norm on S only for Euclidean-equivalent planes
    double lo = 1e9, hi = 0;
    for (double th = 0; th < kTwoPi; th += 0.1) {
        const double a = round->antinorm(round->circle_point(th));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    CHECK((hi - lo) / hi < 1e-6);
}

TEST_CASE("transfer_unit") {
    const PlanePtr& E = euclid_plane();
    for (double th = 0; th < kTwoPi; th += 0.5) {
        CHECK(euclid(transfer_unit(*E, *E, polar(th)) - polar(th)) < 1e-12);
    }
    const Vec2 a = transfer_unit(*E, *l3(), {1, 0});
    CHECK(a.x == doctest::Approx(1.0));
    CHECK(std::abs(a.y) < 1e-12);
    const double s = std::pow(2.0, -1.0 / 3.0);
    const Vec2 b = transfer_unit(*E, *l3(), Vec2{1, 1} / std::sqrt(2.0));
    CHECK(b.x == doctest::Approx(s).epsilon(1e-12));
    CHECK(b.y == doctest::Approx(s).epsilon(1e-12));
    CHECK(bracket(b, E->birkhoff(Vec2{1, 1} / std::sqrt(2.0))) > 0);
    CHECK(kind_of([&] { transfer_unit(*E, *l3(), {2, 0}); }) == ErrorKind::NotUnit);
}
