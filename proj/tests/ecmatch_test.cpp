#include <doctest.h>

#include <random>

#include "im3/ecmatch.hpp"

using namespace im3;

TEST_CASE("ap_from_psi") {
    ImagQuadField M(1);
    CHECK(ap_from_psi(M, {7, SplitKind::Inert, {-7, 0}}).ap == 0);
    CHECK(ap_from_psi(M, {5, SplitKind::Split, {2, 1}}).ap == 4);
    // a Hasse-violating trace is a theorem-violation finding
    CHECK_THROWS_AS(ap_from_psi(M, {5, SplitKind::Split, {3, 1}}), TheoremViolation);
}

TEST_CASE("ec_count basics") {
    WeierstrassCurve cm{1, 0};  // y^2 = x^3 + x, CM by Z[i]
    for (u64 p : {7, 11, 19, 23, 31}) CHECK(ec_count(cm, p).ap == 0);  // p = 3 mod 4
    CHECK(ec_count(cm, 5).ap == 2);

    WeierstrassCurve j0{0, 1};  // y^2 = x^3 + 1, CM by Z[w]
    CHECK(ec_count(j0, 5).ap == 0);  // 5 = 2 mod 3 inert in Q(sqrt(-3))

    WeierstrassCurve e{0, -2};
    CHECK_THROWS_AS(ec_count(e, 3), BadPrime);
    CHECK(!ec_good_prime(e, 2));
    CHECK(ec_good_prime(e, 5));

    // Hasse bound on a sample
    for (u64 p : {5, 13, 97, 151}) {
        i64 a = ec_count({3, -7}, p).ap;
        CHECK((i128)a * a <= 4 * (i128)p);
    }
}

TEST_CASE("self-match round trip") {
    WeierstrassCurve e{0, -2};
    std::vector<EllipticAp> aps;
    for (u64 p = 5; p <= 150; p++) {
        if (!is_prime(p) || !ec_good_prime(e, p)) continue;
        aps.push_back(ec_count(e, p));
    }
    REQUIRE(aps.size() >= 20);
    auto got = find_matching_curve(aps, 10, 150);
    CHECK(std::find(got.begin(), got.end(), e) != got.end());
    // survivors are sorted by (|A|+|B|, A, B)
    for (size_t i = 1; i < got.size(); i++) {
        i64 sa = std::abs(got[i - 1].A) + std::abs(got[i - 1].B);
        i64 sb = std::abs(got[i].A) + std::abs(got[i].B);
        CHECK(sa <= sb);
    }
}

TEST_CASE("random traces match nothing") {
    std::mt19937_64 rng(31);
    std::vector<EllipticAp> aps;
    for (u64 p = 5; p <= 200; p++) {
        if (!is_prime(p)) continue;
        if (p % 4 == 3) {
            aps.push_back({p, 0});
        } else {
            i64 b = (i64)std::sqrt(2.0 * (double)p);
            aps.push_back({p, (i64)(rng() % (u64)(2 * b + 1)) - b});
        }
    }
    auto got = find_matching_curve(aps, 25, 200);
    CHECK(got.empty());
}

TEST_CASE("CM survivors vanish at about half the primes") {
    WeierstrassCurve cm{1, 0};
    i64 zeros = 0, total = 0;
    for (u64 p = 5; p <= 1000; p++) {
        if (!is_prime(p) || !ec_good_prime(cm, p)) continue;
        total++;
        zeros += ec_count(cm, p).ap == 0;
    }
    CHECK(zeros * 100 >= 45 * total);
}

TEST_CASE("candidate list path and preconditions") {
    WeierstrassCurve e{1, 0};
    std::vector<EllipticAp> aps;
    for (u64 p = 5; p <= 120; p++) {
        if (!is_prime(p) || !ec_good_prime(e, p)) continue;
        aps.push_back(ec_count(e, p));
    }
    std::vector<WeierstrassCurve> cands = {{1, 0}, {0, -2}, {5, 5}};
    auto got = find_matching_curve(aps, 0, 120, cands);
    REQUIRE(got.size() >= 1);
    CHECK(got.front() == e);

    std::vector<EllipticAp> few(aps.begin(), aps.begin() + 10);
    CHECK_THROWS_AS(find_matching_curve(few, 5, 120), Unsupported);
}
