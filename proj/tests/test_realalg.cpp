#include <catch2/catch_amalgamated.hpp>

#include "knotinv/realalg.hpp"
#include "test_support.hpp"

using namespace knotinv;
using testsupport::rand_palindromic;

namespace {
LaurentPoly L(const std::string& s) { return parse_laurent(s); }
SymmetricPoly S(const std::string& s) { return parse_symmetric(s); }

IsolatingInterval root_of(const SymmetricPoly& q, const Rational& lo, const Rational& hi, size_t which = 0) {
    auto roots = sturm_isolate(q, lo, hi);
    REQUIRE(roots.size() > which);
    return roots[which].interval;
}
}  // namespace

TEST_CASE("sturm isolation") {
    SECTION("two square roots of 2") {
        auto roots = sturm_isolate(S("s^2 - 2"), Rational(-2), Rational(2));
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].multiplicity == 1);
        CHECK(roots[1].multiplicity == 1);
        // increasing order: -sqrt2 then sqrt2
        CHECK(roots[0].interval.hi <= roots[1].interval.lo);
        CHECK(sign_at(S("s^2 - 2"), roots[0].interval) == 0);
        CHECK(compare_alg_rational(roots[0].interval, Rational(0)) < 0);
        CHECK(compare_alg_rational(roots[1].interval, Rational(0)) > 0);
    }
    SECTION("single rational root") {
        auto roots = sturm_isolate(S("s - 1"), Rational(-2), Rational(2));
        REQUIRE(roots.size() == 1);
        CHECK(compare_alg_rational(roots[0].interval, Rational(1)) == 0);
    }
    SECTION("no real roots") {
        CHECK(sturm_isolate(S("s^2 + 1"), Rational(-2), Rational(2)).empty());
    }
    SECTION("multiplicities from squarefree decomposition") {
        auto q = S("s - 1").pow(3) * S("s^2 - 2");
        auto roots = sturm_isolate(q, Rational(-2), Rational(2));
        REQUIRE(roots.size() == 3);
        CHECK(roots[0].multiplicity == 1);
        CHECK(roots[1].multiplicity == 3);
        CHECK(roots[2].multiplicity == 1);
    }
    SECTION("window endpoints excluded") {
        auto roots = sturm_isolate(S("s") * S("s - 2"), Rational(0), Rational(2));
        CHECK(roots.empty());
    }
    SECTION("each interval has Sturm variation count one") {
        auto q = S("s^3 - 3*s + 1");
        auto roots = sturm_isolate(q, Rational(-2), Rational(2));
        REQUIRE(roots.size() == 3);
        auto chain = sturm_chain(q);
        for (const auto& r : roots)
            CHECK(sturm_count(chain, r.interval.lo, r.interval.hi) == 1);
    }
}

TEST_CASE("sign determination at algebraic numbers") {
    IsolatingInterval sqrt2 = root_of(S("s^2 - 2"), Rational(0), Rational(2));
    CHECK(sign_at(S("s^2 - 3"), sqrt2) == -1);
    CHECK(sign_at(S("s^2 - 2"), sqrt2) == 0);
    CHECK(sign_at(S("s + 3"), sqrt2) == 1);

    SECTION("invariant under interval refinement") {
        IsolatingInterval narrow = sqrt2;
        for (int i = 0; i < 20; ++i) {
            CHECK(sign_at(S("s^2 - 3"), narrow) == -1);
            CHECK(sign_at(S("s^2 - 2"), narrow) == 0);
            CHECK(sign_at(S("7*s^3 - 1"), narrow) == sign_at(S("7*s^3 - 1"), sqrt2));
            narrow.refine_in_place();
        }
    }
    SECTION("sign at rational algebraic numbers") {
        IsolatingInterval one = root_of(S("s - 1"), Rational(-2), Rational(2));
        CHECK(sign_at(S("s - 1"), one) == 0);
        CHECK(sign_at(S("2*s - 1"), one) == 1);
        CHECK(sign_at(S("s - 2"), one) == -1);
    }
}

TEST_CASE("algebraic comparison") {
    IsolatingInterval sqrt2 = root_of(S("s^2 - 2"), Rational(0), Rational(2));
    IsolatingInterval sqrt2b = root_of(S("s^4 - 4"), Rational(0), Rational(2));
    IsolatingInterval sqrt3 = root_of(S("s^2 - 3"), Rational(0), Rational(2));
    CHECK(compare_alg(sqrt2, sqrt2b) == 0);
    CHECK(compare_alg(sqrt2, sqrt3) < 0);
    CHECK(compare_alg(sqrt3, sqrt2) > 0);
    CHECK(compare_alg_rational(sqrt2, Rational(3, 2)) < 0);
    CHECK(compare_alg_rational(sqrt2, Rational(7, 5)) > 0);
}

TEST_CASE("circle roots") {
    SECTION("one simple root") {
        auto roots = circle_roots(L("t - 1 + t^-1"));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 1);
        CHECK(compare_alg_rational(roots[0].abscissa, Rational(1)) == 0);
        CHECK(roots[0].theta_over_2pi() == Catch::Approx(1.0 / 6).epsilon(1e-9));
    }
    SECTION("squaring doubles multiplicity") {
        auto roots = circle_roots(L("t - 1 + t^-1") * L("t - 1 + t^-1"));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
    }
    SECTION("no roots off the circle") {
        CHECK(circle_roots(L("t + 3 + t^-1")).empty());
    }
    SECTION("errors") {
        CHECK_THROWS_AS(circle_roots(L("t")), NotPalindromic);
        CHECK_THROWS_AS(circle_roots(L("t - 2 + t^-1")), RootAtPlusMinusOne);   // vanishes at t = 1
        CHECK_THROWS_AS(circle_roots(L("t + 2 + t^-1")), RootAtPlusMinusOne);   // vanishes at t = -1
    }
    SECTION("ordering is by decreasing abscissa") {
        auto roots = circle_roots(L("t - 1 + t^-1") * L("t + 1 + t^-1"));
        REQUIRE(roots.size() == 2);
        CHECK(compare_alg(roots[0].abscissa, roots[1].abscissa) > 0);
        CHECK(roots[0].theta_over_2pi() < roots[1].theta_over_2pi());
    }
    SECTION("multiset union for coprime products") {
        LaurentPoly p = L("t - 1 + t^-1") * L("2*t - 1 + 2*t^-1");
        LaurentPoly q = L("t + 1 + t^-1");
        auto rp = circle_roots(p), rq = circle_roots(q), rpq = circle_roots(p * q);
        REQUIRE(rpq.size() == rp.size() + rq.size());
        size_t matched = 0;
        for (const auto& r : rpq) {
            for (const auto& x : rp)
                if (compare_alg(r.abscissa, x.abscissa) == 0 && r.multiplicity == x.multiplicity) ++matched;
            for (const auto& x : rq)
                if (compare_alg(r.abscissa, x.abscissa) == 0 && r.multiplicity == x.multiplicity) ++matched;
        }
        CHECK(matched == rpq.size());
    }
    SECTION("degree conservation") {
        // span = 2 * (#circle roots with multiplicity + #off-circle s-roots with multiplicity)
        LaurentPoly p = L("t - 1 + t^-1") * L("t + 3 + t^-1") * L("t + 1 + t^-1");
        auto roots = circle_roots(p);
        int circle_mult = 0;
        for (const auto& r : roots) circle_mult += r.multiplicity;
        SymmetricPoly q = to_symmetric(p);
        CHECK(p.span() == 2 * q.degree());
        CHECK(circle_mult == 2);
        CHECK(q.degree() - circle_mult == 1);  // one off-circle s-root
    }
}

TEST_CASE("exact evaluation on the circle") {
    GaussianRational z{Rational(3, 5), Rational(4, 5)};
    CHECK(eval_circle(L("t + t^-1"), z) == GaussianRational{Rational(6, 5), Rational(0)});
    CHECK(eval_circle(L("1"), z) == GaussianRational{Rational(1), Rational(0)});
    CHECK(eval_circle(L("t - 1 + t^-1"), z) == GaussianRational{Rational(1, 5), Rational(0)});
    CHECK_THROWS_AS(eval_circle(L("t"), GaussianRational{Rational(1), Rational(1)}), NotOnCircle);

    SECTION("palindromic values are real, symmetric, and match the lift") {
        for (int i = 0; i < 40; ++i) {
            LaurentPoly p = rand_palindromic();
            GaussianRational w = testsupport::rand_circle_point();
            auto v = eval_circle(p, w);
            CHECK(v.im == 0);
            CHECK(eval_circle(p, w.conj()) == v);
            CHECK(to_symmetric(p).eval(w.re * 2) == v.re);
        }
    }
}

TEST_CASE("rational points on arcs") {
    auto root1 = root_of(S("s - 1"), Rational(-2), Rational(2));
    SECTION("arc from z=1 down to the root at s=1") {
        auto z = rational_point_on_arc(ArcEndpoint::one(), ArcEndpoint::at(root1));
        CHECK(z == GaussianRational{Rational(3, 5), Rational(4, 5)});
    }
    SECTION("arc between s=-1 root and z=-1") {
        auto rootm1 = root_of(S("s + 1"), Rational(-2), Rational(2));
        auto z = rational_point_on_arc(ArcEndpoint::at(rootm1), ArcEndpoint::minus_one());
        CHECK(z == GaussianRational{Rational(-3, 5), Rational(4, 5)});
    }
    SECTION("full upper arc") {
        auto z = rational_point_on_arc(ArcEndpoint::one(), ArcEndpoint::minus_one());
        CHECK(z == GaussianRational{Rational(0), Rational(1)});
    }
    SECTION("errors on empty arcs") {
        CHECK_THROWS_AS(rational_point_on_arc(ArcEndpoint::at(root1), ArcEndpoint::at(root1)), EmptyArc);
        CHECK_THROWS_AS(rational_point_on_arc(ArcEndpoint::minus_one(), ArcEndpoint::one()), EmptyArc);
        auto rootm1 = root_of(S("s + 1"), Rational(-2), Rational(2));
        CHECK_THROWS_AS(rational_point_on_arc(ArcEndpoint::at(rootm1), ArcEndpoint::at(root1)), EmptyArc);
    }
    SECTION("output lies exactly on the circle, strictly between abscissae") {
        auto sqrt2 = root_of(S("s^2 - 2"), Rational(0), Rational(2));
        auto msqrt2 = root_of(S("s^2 - 2"), Rational(-2), Rational(0));
        auto z = rational_point_on_arc(ArcEndpoint::at(sqrt2), ArcEndpoint::at(msqrt2));
        CHECK(z.norm2() == 1);
        Rational s = z.re * 2;
        CHECK(compare_alg_rational(sqrt2, s) > 0);
        CHECK(compare_alg_rational(msqrt2, s) < 0);
    }
}

TEST_CASE("squarefree decomposition") {
    auto q = S("s - 1").pow(2) * S("s^2 - 2").pow(3) * S("s + 3");
    auto dec = squarefree_decomposition(q);
    REQUIRE(dec.size() == 3);
    int total = 0;
    SymmetricPoly rebuilt(1);
    for (const auto& f : dec) {
        total += f.multiplicity * f.factor.degree();
        rebuilt = rebuilt * f.factor.pow(f.multiplicity);
    }
    CHECK(total == q.degree());
    CHECK(rebuilt.primitive() == q.primitive());
}
