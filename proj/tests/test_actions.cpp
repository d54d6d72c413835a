#include <doctest.h>

#include <cmath>
#include <numbers>

#include "whitney/actions.hpp"

using namespace whitney;

namespace {

const Tolerance kExact = Tolerance::exact_mode();

OrthogonalElement rot90() {
    OrthogonalElement g;
    g.dim = 2;
    g.mat = {Rational(0), Rational(-1), Rational(1), Rational(0)};
    g.label = "r90";
    return g;
}

OrthogonalElement minus_one_1d() {
    OrthogonalElement g;
    g.dim = 1;
    g.mat = {Rational(-1)};
    g.label = "-1";
    return g;
}

FiniteGroup z2_line() { return group_closure({minus_one_1d()}, kExact, 8); }
FiniteGroup z4_plane() { return group_closure({rot90()}, kExact, 8); }

Polynomial x_squared_1d() { return Polynomial::monomial(MultiIndex({2}), 1); }

JetField random_field(Rng& rng, const PointCloud& X, std::uint32_t m) {
    JetField f(X, m);
    for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t s = 0; s < f.basis().size(); ++s) f.set_at_slot(p, s, rng.next_rational(5, 3));
    return f;
}

} // namespace

TEST_CASE("group_closure") {
    FiniteGroup z4 = z4_plane();
    CHECK(z4.size() == 4);
    CHECK(z4.element(z4.identity()).approx_equal(OrthogonalElement::identity(2), kExact));

    FiniteGroup z2 = z2_line();
    CHECK(z2.size() == 2);

    // an irrational rotation generates a dense subgroup
    double c = std::cos(1.0), s = std::sin(1.0);
    OrthogonalElement irr;
    irr.dim = 2;
    irr.mat = {rational_from_double(c), rational_from_double(-s), rational_from_double(s),
               rational_from_double(c)};
    try {
        group_closure({irr}, Tolerance::float_mode(), 1000);
        FAIL("expected bound_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == "bound-exceeded");
    }
}

TEST_CASE("group structure is consistent") {
    FiniteGroup z4 = z4_plane();
    for (std::size_t a = 0; a < z4.size(); ++a) {
        CHECK(z4.product(a, z4.inverse(a)) == z4.identity());
        for (std::size_t b = 0; b < z4.size(); ++b) {
            OrthogonalElement prod = z4.element(a) * z4.element(b);
            CHECK(z4.element(z4.product(a, b)).approx_equal(prod, kExact));
        }
    }
}

TEST_CASE("orbit_cloud") {
    FiniteGroup z2 = z2_line();
    PointCloud Z(1, {{Rational(1)}});
    OrbitCloud orbit = orbit_cloud(z2, Z, kExact);
    REQUIRE(orbit.cloud.size() == 2);
    CHECK(orbit.cloud.point(0)[0] == 1);
    CHECK(orbit.cloud.point(1)[0] == -1);

    // a stable cloud maps to itself (up to order)
    PointCloud stable(1, {{Rational(2)}, {Rational(-2)}});
    OrbitCloud same = orbit_cloud(z2, stable, kExact);
    CHECK(same.cloud.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(same.cloud.find(stable.point(i), kExact).has_value());

    FiniteGroup z4 = z4_plane();
    PointCloud axis(2, {{Rational(1), Rational(0)}});
    OrbitCloud four = orbit_cloud(z4, axis, kExact);
    CHECK(four.cloud.size() == 4);
}

TEST_CASE("group_pullback") {
    // jet of x^2 at -1 pulled through -I lands at 1 with the reflected table
    PointCloud at_minus1(1, {{Rational(-1)}});
    JetField F = jet_of_poly(x_squared_1d(), at_minus1, 2);
    CHECK(F.value(0, MultiIndex({0})) == 1);
    CHECK(F.value(0, MultiIndex({1})) == -2);
    JetField pulled = group_pullback(minus_one_1d(), F);
    CHECK(pulled.cloud().point(0)[0] == 1);
    CHECK(pulled.value(0, MultiIndex({0})) == 1);
    CHECK(pulled.value(0, MultiIndex({1})) == 2);
    CHECK(pulled.value(0, MultiIndex({2})) == 2);

    Rng rng(211);
    PointCloud X(2, {{Rational(1), Rational(2)}, {Rational(0), Rational(3)}});
    JetField G = random_field(rng, X, 3);
    CHECK(compare_fields(group_pullback(OrthogonalElement::identity(2), G), G, kExact).equal);

    // cocycle: (gh)# = h# o g# ... pulling through g then h equals gh
    FiniteGroup z4 = z4_plane();
    for (std::size_t a = 0; a < z4.size(); ++a)
        for (std::size_t b = 0; b < z4.size(); ++b) {
            JetField two_step = group_pullback(z4.element(b), group_pullback(z4.element(a), G));
            JetField one_step = group_pullback(z4.element(a) * z4.element(b), G);
            CHECK(compare_fields(two_step, one_step, kExact).equal);
        }
}

TEST_CASE("groupoid_arrows for finite groups") {
    FiniteGroup z4 = z4_plane();
    PointCloud Z(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    auto arrows = groupoid_arrows(z4, Z, kExact);
    CHECK(arrows.size() == 4); // two units, the quarter turn, its inverse

    std::size_t units = 0, forward = 0, backward = 0;
    for (const auto& a : arrows) {
        if (a.g.approx_equal(OrthogonalElement::identity(2), kExact)) {
            ++units;
            CHECK(a.source == a.target);
        } else if (a.source == 0 && a.target == 1) {
            ++forward;
        } else if (a.source == 1 && a.target == 0) {
            ++backward;
        }
    }
    CHECK(units == 2);
    CHECK(forward == 1);
    CHECK(backward == 1);

    PointCloud empty(2, {});
    CHECK(groupoid_arrows(z4, empty, kExact).empty());
}

TEST_CASE("arrow sets form a groupoid") {
    // closure under inverse and composition, units present: exhaustive scan
    auto check_groupoid = [](const FiniteGroup& G, const PointCloud& Z) {
        auto arrows = groupoid_arrows(G, Z, kExact);
        for (std::size_t z = 0; z < Z.size(); ++z) {
            bool has_unit = false;
            for (const auto& a : arrows)
                if (a.source == z && a.target == z &&
                    a.g.approx_equal(OrthogonalElement::identity(G.dim()), kExact))
                    has_unit = true;
            CHECK(has_unit);
        }
        auto find_arrow = [&](const OrthogonalElement& g, std::size_t src, std::size_t tgt) {
            for (const auto& a : arrows)
                if (a.source == src && a.target == tgt && a.g.approx_equal(g, kExact)) return true;
            return false;
        };
        for (const auto& a : arrows) {
            CHECK(find_arrow(a.g.inverse(), a.target, a.source));
            for (const auto& b : arrows)
                if (b.source == a.target) CHECK(find_arrow(b.g * a.g, a.source, b.target));
        }
    };

    FiniteGroup z4 = z4_plane();
    check_groupoid(z4, PointCloud(2, {{Rational(1), Rational(0)},
                                      {Rational(0), Rational(1)},
                                      {Rational(2), Rational(2)}}));

    // a six-point partial orbit of S3 acting by coordinate permutations
    OrthogonalElement s12 = OrthogonalElement::identity(3);
    s12.at(0, 0) = 0;
    s12.at(1, 1) = 0;
    s12.at(0, 1) = 1;
    s12.at(1, 0) = 1;
    s12.label = "s12";
    OrthogonalElement s23 = OrthogonalElement::identity(3);
    s23.at(1, 1) = 0;
    s23.at(2, 2) = 0;
    s23.at(1, 2) = 1;
    s23.at(2, 1) = 1;
    s23.label = "s23";
    FiniteGroup s3 = group_closure({s12, s23}, kExact, 8);
    check_groupoid(s3, PointCloud(3, {{Rational(1), Rational(2), Rational(3)},
                                      {Rational(2), Rational(1), Rational(3)},
                                      {Rational(3), Rational(2), Rational(1)},
                                      {Rational(1), Rational(1), Rational(0)},
                                      {Rational(0), Rational(1), Rational(1)},
                                      {Rational(5), Rational(6), Rational(7)}}));
}

TEST_CASE("circle rotations are orthogonal for any angle and weight") {
    CircleAction circle{4, {{0, 1, 1}, {2, 3, 3}}};
    Rng rng(233);
    Tolerance tol = Tolerance::float_mode();
    for (int t = 0; t < 20; ++t) {
        double theta = static_cast<double>(rng.next_int(-700, 700)) / 100.0;
        CHECK(circle.rotation(theta).is_orthogonal(tol));
    }
    // the weight-1 block reproduces the standard quarter turn
    CircleAction plane{2, {{0, 1, 1}}};
    OrthogonalElement quarter = plane.rotation(std::numbers::pi / 2);
    Point e1{Rational(1), Rational(0)};
    Point moved = quarter.apply(e1);
    CHECK(moved[0] == 0);
    CHECK(moved[1] == 1);
}

TEST_CASE("groupoid_arrows for the circle") {
    CircleAction circle{2, {{0, 1, 1}}};
    PointCloud Z(2, {{Rational(0), Rational(1)}});
    auto arrows = groupoid_arrows(circle, Z, kExact);
    REQUIRE(arrows.size() == 1); // the lone unit arrow
    CHECK(arrows[0].source == 0);
    CHECK(arrows[0].target == 0);
    CHECK(arrows[0].g.approx_equal(OrthogonalElement::identity(2), kExact));

    // two points on the same circle produce the connecting rotations
    PointCloud pair(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    auto four = groupoid_arrows(circle, pair, kExact);
    CHECK(four.size() == 4);

    CircleAction weighted{4, {{0, 1, 1}, {2, 3, 2}}};
    try {
        groupoid_arrows(weighted, Z, kExact);
        FAIL("expected unsupported_feature");
    } catch (const Error& e) {
        CHECK(e.kind() == "unsupported-feature");
    }
}

TEST_CASE("check_inv1") {
    FiniteGroup z2 = z2_line();
    PointCloud Z(1, {{Rational(1)}, {Rational(-1)}});
    auto arrows = groupoid_arrows(z2, Z, kExact);
    CHECK(arrows.size() == 4);

    JetField even = jet_of_poly(x_squared_1d(), Z, 2);
    CHECK(check_inv1(arrows, even, kExact).ok);

    JetField odd = jet_of_poly(Polynomial::variable(1, 0), Z, 2);
    InvarianceReport rep = check_inv1(arrows, odd, kExact);
    CHECK(!rep.ok);
    // first failing component of the reflected jet of x is already the value
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().alpha == MultiIndex({0}));
    CHECK(rep.violations.front().got == -rep.violations.front().expected);

    // only unit arrows: vacuously true
    PointCloud lone(1, {{Rational(2)}});
    auto unit_arrows = groupoid_arrows(z2, lone, kExact);
    CHECK(unit_arrows.size() == 1);
    JetField any = jet_of_poly(Polynomial::variable(1, 0), lone, 2);
    CHECK(check_inv1(unit_arrows, any, kExact).ok);
}

TEST_CASE("check_inv1 across circle arrows in float mode") {
    // two points on the unit circle connected by an irrational rotation:
    // jets of an invariant polynomial satisfy the arrow condition within tol
    CircleAction circle{2, {{0, 1, 1}}};
    Tolerance ftol = Tolerance::float_mode();
    PointCloud Z(2, {{make_rational(3, 5), make_rational(4, 5)}, {make_rational(4, 5), make_rational(3, 5)}});
    auto arrows = groupoid_arrows(circle, Z, ftol);
    CHECK(arrows.size() == 4);

    Polynomial r2(2);
    r2.add_term(MultiIndex({2, 0}), 1);
    r2.add_term(MultiIndex({0, 2}), 1);
    Polynomial f = r2 * r2 + r2 * Rational(3);
    CHECK(check_inv1(arrows, jet_of_poly(f, Z, 3), ftol).ok);
    CHECK(!check_inv1(arrows, jet_of_poly(Polynomial::variable(2, 0), Z, 1), ftol).ok);
}

TEST_CASE("check_inv2") {
    std::vector<Rational> rot{Rational(0), Rational(-1), Rational(1), Rational(0)};
    PointCloud single(2, {{Rational(0), Rational(1)}});

    Polynomial r2(2);
    r2.add_term(MultiIndex({2, 0}), 1);
    r2.add_term(MultiIndex({0, 2}), 1);
    CHECK(check_inv2({rot}, jet_of_poly(r2, single, 2), kExact).ok);

    InvarianceReport rep = check_inv2({rot}, jet_of_poly(Polynomial::variable(2, 1), single, 2), kExact);
    CHECK(!rep.ok);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().alpha == MultiIndex({1, 0}));
    CHECK(rep.violations.front().got == 1);

    std::vector<Rational> zero(4, Rational(0));
    Rng rng(227);
    JetField f = random_field(rng, single, 3);
    CHECK(check_inv2({zero}, f, kExact).ok);
    CHECK_THROWS_AS(check_inv2({rot}, jet_of_poly(r2, single, 0), kExact), Error);
}

TEST_CASE("the circle generator matches the stated datum") {
    // fundamental field at (0,1) must be -d/dx
    CircleAction circle{2, {{0, 1, 1}}};
    auto a = circle.generator_matrix();
    Point z{Rational(0), Rational(1)};
    PolyMap xi = PolyMap::linear(2, 2, a);
    Point v = xi.eval(z);
    CHECK(v[0] == -1);
    CHECK(v[1] == 0);
}

TEST_CASE("average_poly for finite groups") {
    FiniteGroup z2 = z2_line();
    CHECK(average_poly(z2, Polynomial::variable(1, 0)).is_zero());

    FiniteGroup z4 = z4_plane();
    Polynomial x2 = Polynomial::monomial(MultiIndex({2, 0}), 1);
    Polynomial expect(2);
    expect.add_term(MultiIndex({2, 0}), make_rational(1, 2));
    expect.add_term(MultiIndex({0, 2}), make_rational(1, 2));
    CHECK(average_poly(z4, x2) == expect);

    // idempotence and invariance of the average
    Rng rng(229);
    for (int t = 0; t < 5; ++t) {
        Polynomial f(2);
        for (const auto& alpha : multi_indices_up_to(2, 3))
            if (rng.next_int(0, 1)) f.add_term(alpha, rng.next_rational(4, 2));
        Polynomial avg = average_poly(z4, f);
        CHECK(average_poly(z4, avg) == avg);
        PointCloud Z(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)},
                         {Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}});
        auto arrows = groupoid_arrows(z4, Z, kExact);
        CHECK(check_inv1(arrows, jet_of_poly(avg, Z, 3), kExact).ok);
    }
}

TEST_CASE("average_poly for the circle") {
    CircleAction circle{2, {{0, 1, 1}}};
    Polynomial x2 = Polynomial::monomial(MultiIndex({2, 0}), 1);
    Polynomial avg = average_poly(circle, x2, 5);
    // integral of cos^2 over the circle is 1/2
    CHECK(std::fabs(to_double(avg.coeff(MultiIndex({2, 0}))) - 0.5) <= 1e-9);
    CHECK(std::fabs(to_double(avg.coeff(MultiIndex({0, 2}))) - 0.5) <= 1e-9);
    CHECK(std::fabs(to_double(avg.coeff(MultiIndex({1, 1})))) <= 1e-9);
    Point probe{Rational(1), Rational(0)};
    CHECK(std::fabs(to_double(avg.eval(probe)) - 0.5) <= 1e-9);

    // the averaged polynomial is infinitesimally invariant
    PointCloud single(2, {{Rational(0), Rational(1)}});
    auto rep = check_inv2({circle.generator_matrix()}, jet_of_poly(avg, single, 2),
                          Tolerance::float_mode());
    CHECK(rep.ok);

    CHECK_THROWS_AS(average_poly(circle, x2, 2), Error);
}

TEST_CASE("extend_invariant base example") {
    FiniteGroup z2 = z2_line();
    PointCloud Z(1, {{Rational(1)}});
    JetField F = jet_of_poly(x_squared_1d(), Z, 2);
    JetField ext = extend_invariant(z2, F, kExact);
    REQUIRE(ext.cloud().size() == 2);
    CHECK(ext.cloud().point(0)[0] == 1);
    CHECK(ext.cloud().point(1)[0] == -1);
    CHECK(ext.value(1, MultiIndex({0})) == 1);
    CHECK(ext.value(1, MultiIndex({1})) == -2);
    CHECK(ext.value(1, MultiIndex({2})) == 2);
    // and the output is the jet of x^2 over the whole orbit
    CHECK(compare_fields(ext, jet_of_poly(x_squared_1d(), ext.cloud(), 2), kExact).equal);
}

TEST_CASE("extending from a groupoid-trivial cloud needs no global invariance") {
    // Z = {1} has only the unit arrow, so the jet of x extends; the result
    // is the reflected jet at -1, which is the invariant extension
    FiniteGroup z2 = z2_line();
    PointCloud Z(1, {{Rational(1)}});
    JetField F = jet_of_poly(Polynomial::variable(1, 0), Z, 2);
    JetField ext = extend_invariant(z2, F, kExact);
    REQUIRE(ext.cloud().size() == 2);
    CHECK(ext.value(1, MultiIndex({0})) == 1);
    CHECK(ext.value(1, MultiIndex({1})) == -1);
    CHECK(ext.value(1, MultiIndex({2})) == 0);
    auto arrows = groupoid_arrows(z2, ext.cloud(), kExact);
    CHECK(check_inv1(arrows, ext, kExact).ok);
}

TEST_CASE("extending from a stable cloud reproduces the field up to reordering") {
    FiniteGroup z4 = z4_plane();
    PointCloud Z(2, {{Rational(2), Rational(1)}, {Rational(-1), Rational(2)},
                     {Rational(-2), Rational(-1)}, {Rational(1), Rational(-2)}});
    Rng rng(239);
    Polynomial inv = average_poly(z4, [&] {
        Polynomial f(2);
        for (const auto& alpha : multi_indices_up_to(2, 3)) f.add_term(alpha, rng.next_rational(4, 2));
        return f;
    }());
    JetField F = jet_of_poly(inv, Z, 2);
    JetField ext = extend_invariant(z4, F, kExact);
    CHECK(ext.cloud().size() == Z.size());
    CHECK(compare_fields(restrict_field(ext, Z, kExact), F, kExact).equal);
}

TEST_CASE("extend_invariant rejects non-invariant input") {
    FiniteGroup z2 = z2_line();
    PointCloud Z(1, {{Rational(1)}, {Rational(-1)}});
    JetField F = jet_of_poly(Polynomial::variable(1, 0), Z, 2); // odd, not invariant
    try {
        extend_invariant(z2, F, kExact);
        FAIL("expected non_invariant");
    } catch (const Error& e) {
        CHECK(e.kind() == "non-invariant");
    }
    // the unchecked core detects the same input as conflicting candidates
    try {
        detail::extend_invariant_unchecked(z2, F, kExact, Exec::serial);
        FAIL("expected conflicting_extension");
    } catch (const Error& e) {
        CHECK(e.kind() == "conflicting-extension");
        CHECK(std::string(e.what()).find("witnesses") != std::string::npos);
    }
}
