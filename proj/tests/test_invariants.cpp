#include <catch2/catch_amalgamated.hpp>

#include "knotinv/invariants.hpp"
#include "test_support.hpp"

using namespace knotinv;
using testsupport::rand_int;
using testsupport::rand_seifert;

namespace {
LaurentPoly L(const std::string& s) { return parse_laurent(s); }

HermitianLaurentMatrix diag(const std::vector<std::string>& entries) {
    std::vector<LaurentPoly> ps;
    for (const auto& e : entries) ps.push_back(L(e));
    return HermitianLaurentMatrix::diagonal(ps);
}
}  // namespace

TEST_CASE("exact point signatures") {
    SECTION("positive definite 1x1 away from roots") {
        auto A = diag({"t + 3 + t^-1"});
        auto s = signature_at_rational_point(A, GaussianRational{Rational(0), Rational(1)});
        CHECK(s.raw == 1);
        CHECK(s.eta == 0);
        CHECK(s.sigma == 0);  // baseline subtracted
    }
    SECTION("signature vanishes at z = 1 by definition") {
        auto A = blanchfield_matrix(trefoil_seifert());
        auto s = signature_at_rational_point(A, GaussianRational{Rational(1), Rational(0)});
        CHECK(s.sigma == 0);
    }
    SECTION("knot-level value at z = -1 for the trefoil") {
        auto M = levine_tristram_matrix(trefoil_seifert());
        auto s = signature_at_rational_point(M, GaussianRational{Rational(-1), Rational(0)});
        CHECK(s.raw == -2);
        CHECK(s.eta == 0);
    }
}

TEST_CASE("signatures at algebraic roots") {
    SECTION("trefoil linking matrix at its root") {
        auto A = blanchfield_matrix(trefoil_seifert());
        auto roots = circle_roots(A.determinant());
        REQUIRE(roots.size() == 1);
        auto s = signature_at_root(A, roots[0]);
        CHECK(s.sigma == -1);
        CHECK(s.eta == 1);
    }
    SECTION("negated square entry") {
        auto A = diag({"-t^2 + 2*t - 3 + 2*t^-1 - t^-2"});  // -(t - 1 + t^-1)^2
        REQUIRE(A.at(0, 0) == -(L("t - 1 + t^-1") * L("t - 1 + t^-1")));
        auto roots = circle_roots(A.determinant());
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        auto s = signature_at_root(A, roots[0]);
        CHECK(s.sigma == 1);
        CHECK(s.eta == 1);
    }
    SECTION("rank-one pieces cancel at a shared root") {
        auto A = diag({"t - 1 + t^-1", "-t + 1 - t^-1"});
        auto roots = circle_roots(A.determinant());
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        auto s = signature_at_root(A, roots[0]);
        CHECK(s.sigma == 0);
        CHECK(s.eta == 2);
    }
    SECTION("non-root is rejected") {
        auto A = diag({"t + 3 + t^-1"});
        auto other = circle_roots(L("t - 1 + t^-1"));
        CHECK_THROWS_AS(signature_at_root(A, other[0]), NotARoot);
    }
}

TEST_CASE("profiles") {
    SECTION("trefoil") {
        auto A = blanchfield_matrix(trefoil_seifert());
        auto p = profile(A);
        REQUIRE(p.roots.size() == 1);
        REQUIRE(p.arc_sigma.size() == 2);
        CHECK(p.arc_sigma[0] == 0);
        CHECK(p.arc_sigma[1] == -2);
        CHECK(p.at_root[0].sigma == -1);
        CHECK(p.at_root[0].eta == 1);
        CHECK(p.roots[0].theta_over_2pi() == Catch::Approx(1.0 / 6).epsilon(1e-9));
    }
    SECTION("no circle roots means constant zero signature") {
        auto p = profile(diag({"t + 3 + t^-1"}));
        CHECK(p.roots.empty());
        REQUIRE(p.arc_sigma.size() == 1);
        CHECK(p.arc_sigma[0] == 0);
    }
    SECTION("degenerate unit points are rejected") {
        CHECK_THROWS_AS(profile(diag({"t - 2 + t^-1"})), RootAtPlusMinusOne);
    }
    SECTION("piecewise constancy: extra samples agree with the stored arc value") {
        for (int trial = 0; trial < 6; ++trial) {
            auto V = rand_seifert(rand_int(1, 2));
            auto A = blanchfield_matrix(validate_and_normalize(V).normalized);
            auto p = profile(A);
            std::vector<ArcEndpoint> ends;
            ends.push_back(ArcEndpoint::one());
            for (const auto& r : p.roots) ends.push_back(ArcEndpoint::at(r));
            ends.push_back(ArcEndpoint::minus_one());
            for (size_t i = 0; i + 1 < ends.size(); ++i) {
                // two distinct samples per arc: one near each end
                GaussianRational z1 = rational_point_on_arc(ends[i], ends[i + 1]);
                auto s1 = signature_at_rational_point(A, z1);
                CHECK(s1.sigma == p.arc_sigma[i]);
                CHECK(s1.eta == 0);
            }
        }
    }
}

TEST_CASE("numerical invariants of knots") {
    SECTION("trefoil end to end") {
        auto k = knot_summary(trefoil_seifert());
        CHECK(k.summary.mu == 1);
        CHECK(k.summary.eta == 1);
        CHECK(k.summary.n_r == 1);
        CHECK(k.summary.unknotting_lower_bound == 1);
        CHECK(k.warnings.empty());
    }
    SECTION("figure eight") {
        auto k = knot_summary(figure_eight_seifert());
        CHECK(k.summary.mu == 0);
        CHECK(k.summary.eta == 1);
        CHECK(k.summary.n_r == 1);
    }
    SECTION("unknot") {
        auto k = knot_summary(SeifertMatrix{});
        CHECK(k.summary.mu == 0);
        CHECK(k.summary.eta == 0);
        CHECK(k.summary.n_r == 0);
    }
    SECTION("torus knots up to genus three") {
        for (int g = 1; g <= 3; ++g) {
            auto k = knot_summary(torus_knot_seifert(g));
            CHECK(k.summary.mu == g);
            CHECK(k.summary.eta == 1);
            CHECK(k.summary.n_r == g);
        }
    }
    SECTION("granny vs square: connected sums with and without mirroring") {
        auto granny = knot_summary(connected_sum(trefoil_seifert(), trefoil_seifert()));
        CHECK(granny.summary.mu == 2);
        CHECK(granny.summary.eta == 2);
        auto square = knot_summary(connected_sum(trefoil_seifert(), mirror_reverse(trefoil_seifert())));
        CHECK(square.summary.eta == 2);
        CHECK(square.summary.n_r == 2);
        // the nullity-weighted mu exceeds the vanishing signature span here
        CHECK_FALSE(square.warnings.empty());
    }
    SECTION("eta agrees with the Nakanishi count from tV - V^t") {
        for (int trial = 0; trial < 8; ++trial) {
            auto V = rand_seifert(rand_int(1, 2));
            auto k = knot_summary(V);
            int n = V.size();
            LMat m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m.at(i, j) = LaurentPoly::monomial(V.v[i][j], 1) - LaurentPoly(V.v[j][i]);
            CHECK(k.summary.eta == nonunit_factor_count(m));
        }
    }
    SECTION("mirror negates signatures pointwise, fixes mu and eta") {
        for (int trial = 0; trial < 6; ++trial) {
            auto V = rand_seifert(rand_int(1, 2));
            auto a = knot_summary(V);
            auto b = knot_summary(mirror_reverse(V));
            REQUIRE(a.prof.arc_sigma.size() == b.prof.arc_sigma.size());
            for (size_t i = 0; i < a.prof.arc_sigma.size(); ++i)
                CHECK(a.prof.arc_sigma[i] == -b.prof.arc_sigma[i]);
            for (size_t i = 0; i < a.prof.at_root.size(); ++i) {
                CHECK(a.prof.at_root[i].sigma == -b.prof.at_root[i].sigma);
                CHECK(a.prof.at_root[i].eta == b.prof.at_root[i].eta);
            }
            CHECK(a.summary.mu == b.summary.mu);
            CHECK(a.summary.eta == b.summary.eta);
        }
    }
    SECTION("mu is additive under connected sum") {
        for (int trial = 0; trial < 5; ++trial) {
            auto V1 = rand_seifert(1), V2 = rand_seifert(rand_int(1, 2));
            auto a = knot_summary(V1), b = knot_summary(V2);
            auto s = knot_summary(connected_sum(V1, V2));
            CHECK(s.summary.mu == a.summary.mu + b.summary.mu);
            CHECK(s.summary.eta <= a.summary.eta + b.summary.eta);
            CHECK(s.summary.eta >= std::max(a.summary.eta, b.summary.eta));
        }
    }
    SECTION("coprime Alexander polynomials: eta of the sum is the max") {
        auto a = knot_summary(trefoil_seifert());
        auto b = knot_summary(figure_eight_seifert());
        REQUIRE(laurent_gcd(a.alexander.poly, b.alexander.poly).is_one());
        auto s = knot_summary(connected_sum(trefoil_seifert(), figure_eight_seifert()));
        CHECK(s.summary.eta == std::max(a.summary.eta, b.summary.eta));
    }
    SECTION("matrix size bounds the invariants") {
        for (int trial = 0; trial < 6; ++trial) {
            auto V = rand_seifert(rand_int(1, 3));
            auto k = knot_summary(V);
            CHECK(k.summary.mu <= V.size());
            CHECK(k.summary.eta <= V.size());
            CHECK(k.summary.n_r <= V.size() + 1);
            CHECK(k.blanchfield.size() >= std::max(k.summary.mu, k.summary.eta));
        }
    }
}

TEST_CASE("invariant comparison") {
    auto A = blanchfield_matrix(trefoil_seifert());
    SECTION("congruence preserves the verdict") {
        LMat P(2, 2);
        P.at(0, 0) = L("1");
        P.at(0, 1) = L("t");
        P.at(1, 1) = L("1");
        auto B = move_congruence(A, P);
        CHECK(check_same_invariants(A, B).equal);
    }
    SECTION("stabilization by a unit block preserves the verdict") {
        auto B = move_stabilize(A, HermitianLaurentMatrix::diagonal({L("1")}));
        CHECK(check_same_invariants(A, B).equal);
    }
    SECTION("opposite signs are distinguished") {
        auto P = diag({"t - 1 + t^-1"});
        auto N = diag({"-t + 1 - t^-1"});
        auto rep = check_same_invariants(P, N);
        CHECK_FALSE(rep.equal);
        CHECK_FALSE(rep.first_difference.empty());
    }
    SECTION("random move sequences preserve profiles") {
        for (int trial = 0; trial < 10; ++trial) {
            auto V = rand_seifert(rand_int(1, 2));
            auto M = blanchfield_matrix(validate_and_normalize(V).normalized);
            HermitianLaurentMatrix B = M;
            bool tail_uncoupled = false;
            for (int mv = 0; mv < 3; ++mv) {
                int pick = rand_int(0, 2);
                if (pick == 0) {
                    int n = B.size();
                    LMat P = LMat::identity(n);
                    int i = rand_int(0, n - 1), j = rand_int(0, n - 1);
                    if (i != j) P.at(i, j) = testsupport::rand_laurent(2, 1);
                    B = move_congruence(B, P);
                    tail_uncoupled = false;
                } else if (pick == 1) {
                    B = move_stabilize(B, HermitianLaurentMatrix::diagonal(
                                              {rand_int(0, 1) ? L("1") : L("-1")}));
                    tail_uncoupled = true;
                } else if (tail_uncoupled) {
                    B = move_destabilize(B, B.size() - 1, 1);
                    tail_uncoupled = false;
                }
            }
            CHECK(check_same_invariants(M, B).equal);
        }
    }
}
