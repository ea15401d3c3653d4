#include "doctest.h"

#include "polylat/lattice.hpp"
#include "polylat/rng.hpp"

#include <cmath>

using namespace polylat;

namespace {

ZMat zmat(std::initializer_list<std::initializer_list<long>> rows) {
    ZMat m;
    for (auto& r : rows) {
        ZVec v;
        for (long x : r) v.emplace_back(x);
        m.push_back(std::move(v));
    }
    return m;
}

ZMat random_mat(Rng& rng, std::size_t m, std::size_t n, long spread) {
    ZMat a(m, ZVec(n));
    for (auto& r : a)
        for (auto& v : r) v = static_cast<long>(rng.below(2 * static_cast<u64>(spread) + 1)) - spread;
    return a;
}

bool negated_or_equal(const ZVec& a, const ZVec& b) {
    bool eq = true, neg = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) eq = false;
        if (a[i] != -b[i]) neg = false;
    }
    return eq || neg;
}

// the 4x4 block basis [[I, -G], [0, 6I]] of the worked F_7 instance
ZMat f7_basis() {
    return zmat({{1, 0, -1, -5}, {0, 1, -5, -1}, {0, 0, 6, 0}, {0, 0, 0, 6}});
}

} // namespace

TEST_CASE("exact determinants") {
    CHECK(det_exact(zmat({{2, 1}, {1, 3}})) == 5);
    CHECK(det_exact(zmat({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
    CHECK(det_exact(zmat({{1, 2}, {2, 4}})) == 0);
    CHECK(det_exact(f7_basis()) == 36);
}

TEST_CASE("round half away from zero") {
    auto r = [](long n, long d) { return round_half_away(ZZ(n), ZZ(d)); };
    CHECK(r(3, 2) == 2);
    CHECK(r(-3, 2) == -2);
    CHECK(r(1, 2) == 1);
    CHECK(r(-1, 2) == -1);
    CHECK(r(2, 3) == 1);
    CHECK(r(-2, 3) == -1);
    CHECK(r(1, 3) == 0);
    CHECK(r(7, 2) == 4);
    CHECK(r(6, 3) == 2);
    CHECK(r(0, 5) == 0);
    CHECK_THROWS_AS(r(1, 0), usage_error);
}

TEST_CASE("integral gram-schmidt recurrences") {
    ZMat rows = zmat({{1, 0}, {1, 2}});
    IntegralGS gs = integral_gs(rows);
    REQUIRE(gs.dd.size() == 3);
    CHECK(gs.dd[0] == 1);
    CHECK(gs.dd[1] == 1);
    CHECK(gs.dd[2] == 4);
    CHECK(gs.lam[1][0] == 1);
    // target vector recurrence: mu_{t,1} = lam_t[1]/dd[2] = 6/4 = 3/2
    ZVec t = {ZZ(3), ZZ(3)};
    auto lt = integral_gs_target(gs, rows, t);
    CHECK(lt[0] == 3);
    CHECK(lt[1] == 6);
    CHECK_THROWS_AS(integral_gs(zmat({{1, 2}, {2, 4}})), internal_error);
}

TEST_CASE("hermite normal form") {
    ZMat h = hnf(zmat({{2, 0}, {1, 1}}));
    CHECK(h == zmat({{1, 1}, {0, 2}}));
    // invariant under unimodular row mixing
    ZMat a = zmat({{3, 1, 2}, {1, 4, 1}, {0, 2, 5}});
    ZMat mixed = a;
    mixed[0] = row_sub_scaled(mixed[0], ZZ(-2), mixed[1]); // r0 += 2 r1
    std::swap(mixed[1], mixed[2]);
    CHECK(hnf(a) == hnf(mixed));
    CHECK(hnf(a) != hnf(zmat({{6, 2, 4}, {1, 4, 1}, {0, 2, 5}})));
}

TEST_CASE("unimodular transform recovery") {
    ZMat b = zmat({{1, 2}, {3, 4}});
    ZMat to = zmat({{4, 6}, {3, 4}}); // rows: r0+r1, r1
    auto u = unimodular_transform(b, to);
    REQUIRE(u.has_value());
    CHECK(*u == zmat({{1, 1}, {0, 1}}));
    // doubling a row leaves the lattice, so no unimodular transform exists
    CHECK_FALSE(unimodular_transform(b, zmat({{2, 4}, {3, 4}})).has_value());
}

TEST_CASE("exact rational gram-schmidt data") {
    LatticeBasis b = make_basis(zmat({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}}));
    GramSchmidtData gsd = gram_schmidt(b);
    REQUIRE(gsd.exact);
    CHECK(gsd.mu[1][0] == QQ(1, 3));
    CHECK(gsd.mu[2][0] == QQ(14, 3));
    CHECK(gsd.mu[2][1] == QQ(13, 14));
    CHECK(gsd.bstar_norm_sq[0] == QQ(3));
    CHECK(gsd.bstar_norm_sq[1] == QQ(14, 3));
    CHECK(gsd.bstar_norm_sq[2] == QQ(9, 14));
}

TEST_CASE("lll basics and validation") {
    LatticeBasis b = make_basis(zmat({{4, 1}, {1, 1}}));
    CHECK_FALSE(is_lll_reduced_exact(b));
    LatticeBasis r = lll_reduce(b);
    CHECK(is_lll_reduced_exact(r));
    CHECK(norm_sq(r.rows[0]) == 2); // shortest vector (1,1)
    auto u = unimodular_transform(b.rows, r.rows);
    CHECK(u.has_value());
    CHECK(abs(det_exact(r.rows)) == abs(det_exact(b.rows)));

    CHECK_THROWS_AS(lll_reduce(b, 1.0), usage_error);
    CHECK_THROWS_AS(lll_reduce(b, 0.25), usage_error);
    CHECK_THROWS_AS(lll_reduce(make_basis(zmat({{1, 2}, {2, 4}}))), usage_error);
    CHECK_THROWS_AS(make_basis(ZMat{}), usage_error);
    CHECK_THROWS_AS(make_basis(zmat({{1, 2}, {3, 4}, {5, 6}})), usage_error);
}

TEST_CASE("lll determinism") {
    Rng rng(1234);
    ZMat a = random_mat(rng, 12, 12, 500);
    LatticeBasis r1 = lll_reduce(make_basis(a));
    LatticeBasis r2 = lll_reduce(make_basis(a));
    CHECK(r1.rows == r2.rows);
}

TEST_CASE("lll postconditions on random bases") {
    for (u64 seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        Rng rng(seed);
        ZMat a = random_mat(rng, 5, 5, 25);
        if (det_exact(a) == 0) continue;
        LatticeBasis red = lll_reduce(make_basis(a));
        CHECK(is_lll_reduced_exact(red));
        auto u = unimodular_transform(a, red.rows);
        CHECK(u.has_value());
        // first-row quality: |b1|^2 <= 2^(m-1) lambda1^2
        ZVec sv = brute_force_svp(red, 4);
        ZZ l1 = norm_sq(sv);
        CHECK(norm_sq(red.rows[0]) <= (ZZ(1) << 4) * l1);
    }
}

TEST_CASE("lll handles larger entries with exact refinement") {
    Rng rng(99);
    ZMat a = random_mat(rng, 20, 20, 1000000);
    LatticeBasis red = lll_reduce(make_basis(a));
    CHECK(is_lll_reduced_exact(red));
    CHECK(unimodular_transform(a, red.rows).has_value());
}

TEST_CASE("bkz finds the shortest vector at full block size") {
    for (u64 seed : {7ull, 8ull, 9ull}) {
        Rng rng(seed);
        ZMat a = random_mat(rng, 8, 8, 30);
        if (det_exact(a) == 0) continue;
        BkzStats stats;
        LatticeBasis red = bkz_reduce(make_basis(a), 8, 0.99, 8, &stats);
        CHECK(is_lll_reduced_exact(red));
        CHECK(unimodular_transform(a, red.rows).has_value());
        CHECK(abs(det_exact(red.rows)) == abs(det_exact(a)));
        ZVec sv = brute_force_svp(red, 3);
        CHECK(norm_sq(red.rows[0]) == norm_sq(sv));
        CHECK(stats.tours >= 1);
    }
}

TEST_CASE("bkz argument validation") {
    LatticeBasis b = make_basis(zmat({{4, 1}, {1, 1}}));
    CHECK_THROWS_AS(bkz_reduce(b, 1), usage_error);
    CHECK_THROWS_AS(bkz_reduce(b, 3), usage_error);
    CHECK_THROWS_AS(bkz_reduce(b, 2, 0.99, 0), usage_error);
}

TEST_CASE("babai nearest plane, exact tie handling") {
    LatticeBasis b = make_basis(zmat({{2, 0}, {0, 2}}));
    ZVec t = {ZZ(3), ZZ(3)};
    CvpResult r = babai_nearest_plane(b, t);
    CHECK_FALSE(r.exact);
    // 3/2 rounds away from zero in both coordinates
    CHECK(r.closest == ZVec{ZZ(4), ZZ(4)});
    CHECK(r.error == ZVec{ZZ(-1), ZZ(-1)});

    // identity-like case decodes exactly
    LatticeBasis id = make_basis(zmat({{1, 0}, {0, 1}}));
    CvpResult r2 = babai_nearest_plane(id, {ZZ(3), ZZ(-7)});
    CHECK(r2.closest == ZVec{ZZ(3), ZZ(-7)});
    CHECK(norm_sq(r2.error) == 0);
    CHECK_THROWS_AS(babai_nearest_plane(id, {ZZ(1)}), usage_error);
}

TEST_CASE("babai floating-point path above the exactness limit") {
    // 90-dimensional diag(3) basis: every coordinate rounds to zero
    std::size_t m = 90;
    ZMat rows(m, ZVec(m, ZZ(0)));
    for (std::size_t i = 0; i < m; ++i) rows[i][i] = 3;
    ZVec t(m, ZZ(1));
    CvpResult r = babai_nearest_plane(make_basis(rows), t);
    CHECK(norm_sq(r.closest) == 0);
    CHECK(norm_sq(r.error) == static_cast<long>(m));
}

TEST_CASE("brute force oracles") {
    LatticeBasis b = make_basis(f7_basis());
    ZVec sv = brute_force_svp(b, 2);
    CHECK(norm_sq(sv) == 2);
    // the minimum is attained by (1,1,0,0) up to sign
    CHECK(negated_or_equal(sv, {ZZ(1), ZZ(1), ZZ(0), ZZ(0)}));

    LatticeBasis diag = make_basis(zmat({{2, 0}, {0, 2}}));
    CvpResult r = brute_force_cvp(diag, {ZZ(3), ZZ(3)}, 2);
    CHECK(r.exact);
    CHECK(norm_sq(r.error) == 2); // four closest points tie at distance sqrt(2)

    Rng rng(1);
    ZMat big = random_mat(rng, 14, 14, 3);
    CHECK_THROWS_AS(brute_force_svp(make_basis(big), 9), usage_error);
}

TEST_CASE("svp enumeration on the worked instance") {
    LatticeBasis b = make_basis(f7_basis());
    u64 nodes = 0;
    auto coeffs = svp_enumerate(b, 2.0, nullptr, ~u64{0}, nullptr, &nodes);
    REQUIRE(coeffs.has_value());
    ZVec v = apply_coeffs(b, *coeffs);
    CHECK(norm_sq(v) == 2);
    CHECK(negated_or_equal(v, {ZZ(1), ZZ(1), ZZ(0), ZZ(0)}));
    CHECK(nodes > 0);

    // nothing strictly inside radius 1
    CHECK_FALSE(svp_enumerate(b, 0.99).has_value());
    CHECK_THROWS_AS(svp_enumerate(b, 0.0), usage_error);
}

TEST_CASE("enumeration pruning profile semantics") {
    LatticeBasis b = make_basis(f7_basis());
    u64 nodes_plain = 0, nodes_ones = 0, nodes_linear = 0;
    auto plain = svp_enumerate(b, 2.0, nullptr, ~u64{0}, nullptr, &nodes_plain);
    std::vector<double> ones(4, 1.0);
    auto same = svp_enumerate(b, 2.0, &ones, ~u64{0}, nullptr, &nodes_ones);
    REQUIRE(plain.has_value());
    REQUIRE(same.has_value());
    CHECK(*plain == *same);
    CHECK(nodes_plain == nodes_ones);

    // linear profile prunes at least as hard as no profile
    std::vector<double> linear = {0.25, 0.5, 0.75, 1.0};
    (void)svp_enumerate(b, 2.0, &linear, ~u64{0}, nullptr, &nodes_linear);
    CHECK(nodes_linear <= nodes_plain);

    std::vector<double> bad = {0.5, 0.5};
    CHECK_THROWS_AS(svp_enumerate(b, 2.0, &bad), usage_error);
    std::vector<double> bad2 = {0.0, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(svp_enumerate(b, 2.0, &bad2), usage_error);

    bool aborted = false;
    (void)svp_enumerate(b, 2.0, nullptr, 3, &aborted);
    CHECK(aborted);
}

TEST_CASE("kannan embedding") {
    LatticeBasis b = make_basis(zmat({{5, 0}, {0, 5}}));
    ZVec target = {ZZ(6), ZZ(1)}; // lattice point (5,0) plus error (1,1)
    LatticeBasis emb = embed_cvp_to_svp(b, target, ZZ(1));
    REQUIRE(emb.rank() == 3);
    CHECK(emb.rows[2] == ZVec{ZZ(6), ZZ(1), ZZ(1)});
    LatticeBasis red = lll_reduce(emb);
    CHECK(norm_sq(red.rows[0]) == 3);
    CHECK(negated_or_equal(red.rows[0], {ZZ(1), ZZ(1), ZZ(1)}));
    CHECK_THROWS_AS(embed_cvp_to_svp(b, target, ZZ(0)), usage_error);
}

TEST_CASE("reduction report on a diagonal basis") {
    LatticeBasis b = make_basis(zmat({{2, 0}, {0, 1}}));
    ReductionReport rep = reduction_report(b);
    CHECK(rep.shortest_row_norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.hermite_factor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rep.root_hermite == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
    CHECK(rep.orthogonality_defect == doctest::Approx(1.0).epsilon(1e-9));
}
