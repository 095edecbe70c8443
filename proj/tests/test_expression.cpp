#include <doctest.h>

#include <cmath>
#include <random>

#include "legendre/expression.hpp"

using namespace legendre;

namespace {

NodePtr node(NodeKind k, std::vector<NodePtr> c = {}, double v = 0, std::string fn = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    n->function = std::move(fn);
    n->children = std::move(c);
    return n;
}

NodePtr random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 1 ? 3 : 11);
    const int k = pick(rng);
    switch (k) {
        case 0: return node(NodeKind::number, {}, std::uniform_real_distribution<double>(0, 100)(rng));
        case 1: return node(NodeKind::variable);
        case 2: return node(NodeKind::constant_pi);
        case 3: return node(NodeKind::constant_e);
        case 4: return node(NodeKind::negate, {random_tree(rng, depth - 1)});
        case 5: return node(NodeKind::add, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 6: return node(NodeKind::subtract, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 7: return node(NodeKind::multiply, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 8: return node(NodeKind::divide, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        case 9: return node(NodeKind::power, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
        default: {
            const auto& fns = expression_functions();
            const std::string fn = fns[std::uniform_int_distribution<std::size_t>(0, fns.size() - 1)(rng)];
            return node(NodeKind::call, {random_tree(rng, depth - 1)}, 0, fn);
        }
    }
}

}  // namespace

TEST_CASE("expression values") {
    CHECK(parse_expression("cos(t)^3")(0.0) == doctest::Approx(1.0));
    CHECK(parse_expression("abs(cos(t))^1.5*sign(cos(t))")(M_PI) == doctest::Approx(-1.0));
    CHECK(parse_expression("2^3^2")(0) == 512.0);
    CHECK(parse_expression("1 - 2 - 3")(0) == -4.0);
    CHECK(parse_expression("8/4/2")(0) == 1.0);
    CHECK(parse_expression("-t^2")(3.0) == 9.0);  // unary binds tighter than ^
    CHECK(parse_expression("-(t^2)")(3.0) == -9.0);
    CHECK(parse_expression("2*e")(0) == doctest::Approx(2 * M_E));
    CHECK(parse_expression("2e1")(0) == 20.0);
    CHECK(parse_expression("1.5E-1 + .5")(0) == doctest::Approx(0.65));
    CHECK(parse_expression("pi")(0) == doctest::Approx(M_PI));
}

TEST_CASE("parse errors report offset and expected tokens") {
    try {
        parse_expression("1/(1+t");
        FAIL("expected a parse error");
    } catch (const ParseFailure& e) {
        CHECK(e.offset() == 6);
        CHECK(e.kind() == ErrorKind::ParseError);
        REQUIRE(e.expected().size() == 1);
        CHECK(e.expected()[0] == ")");
    }
    for (const char* bad : {"", "2 t", "foo(t)", "sin t", "1 +", "3*)", "1e999", "t**2"}) {
        CHECK_THROWS_AS(parse_expression(bad), ParseFailure);
    }
    try {
        parse_expression("2 + foo(t)");
    } catch (const ParseFailure& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("guarded functions") {
    const Expression e = parse_expression("log(t)");
    CHECK(e.warnings().empty());
    CHECK_THROWS_AS(e(-1.0), Error);
    const Expression w = parse_expression("sqrt(-1) + t");
    CHECK(w.warnings().size() == 1);
    CHECK_THROWS_AS(w(0.0), Error);
    CHECK_THROWS_AS(parse_expression("1/t")(0.0), Error);
    CHECK_THROWS_AS(parse_expression("asin(t)")(2.0), Error);
}

TEST_CASE("pretty print is a parse fixed point") {
    std::mt19937 rng(20261017);
    for (int i = 0; i < 100; ++i) {
        const NodePtr tree = random_tree(rng, 6);
        const std::string text = pretty_print(*tree);
        const Expression back = parse_expression(text);
        CHECK_MESSAGE(back.root() == *tree, text);
        CHECK(pretty_print(back.root()) == text);
    }
    CHECK(parse_expression("(-t)^2").to_string() == "-t^2");
    CHECK(parse_expression("-(t^2)").to_string() == "-(t^2)");
    CHECK(parse_expression("(1-2)-(3-4)").to_string() == "1 - 2 - (3 - 4)");
}
