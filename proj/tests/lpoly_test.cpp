#include <doctest.h>

#include <cmath>

#include "im3/lpoly.hpp"

using namespace im3;

TEST_CASE("newton identities on reference counts") {
    // zero power sums
    LPolynomial z = lpoly_from_counts({7, 8, 50, 344});
    CHECK(z.a1 == 0);
    CHECK(z.a2 == 0);
    CHECK(z.a3 == 0);

    // the inert shape from s = (0, -2b, 0), b = 3 at p = 7
    LPolynomial ish = lpoly_from_counts({7, 8, 50 + 6, 344});
    CHECK(ish.a1 == 0);
    CHECK(ish.a2 == 3);
    CHECK(ish.a3 == 0);

    // frozen reference values (independent brute-force counts)
    LPolynomial d1p5 = lpoly_from_counts({5, 6, 26, 96});
    CHECK(d1p5.a1 == 0);
    CHECK(d1p5.a2 == 0);
    CHECK(d1p5.a3 == -10);
    LPolynomial d1p13 = lpoly_from_counts({13, 10, 180, 2290});
    CHECK(d1p13.a1 == -4);
    CHECK(d1p13.a2 == 13);
    CHECK(d1p13.a3 == 0);
    LPolynomial d2p11 = lpoly_from_counts({11, 10, 144, 1198});
    CHECK(d2p11.a1 == -2);
    CHECK(d2p11.a2 == 13);
    CHECK(d2p11.a3 == -68);
    LPolynomial d3p7 = lpoly_from_counts({7, 13, 67, 364});
    CHECK(d3p7.a1 == 5);
    CHECK(d3p7.a2 == 21);
    CHECK(d3p7.a3 == 70);
    LPolynomial d7p11 = lpoly_from_counts({11, 6, 80, 1302});
    CHECK(d7p11.a1 == -6);
    CHECK(d7p11.a2 == -3);
    CHECK(d7p11.a3 == 80);
}

TEST_CASE("functional equation coefficients") {
    LPolynomial L{11, -6, -3, 80};
    auto c = L.coeffs();
    CHECK(c[4] == (i128)11 * -3);
    CHECK(c[5] == (i128)121 * -6);
    CHECK(c[6] == (i128)1331);
}

TEST_CASE("integrality and weil guards") {
    // s1 odd parity breaks the a2 division
    CHECK_THROWS_AS(lpoly_from_counts({7, 7, 50, 344}), NonIntegralCoefficient);
    // counts violating the Weil bound
    CHECK_THROWS_AS(lpoly_from_counts({7, 8 + 40, 50, 344}), BadPrime);
}

TEST_CASE("shortcut_inert") {
    LPolynomial s = shortcut_inert(7, 8, 56);
    CHECK(s.a1 == 0);
    CHECK(s.a2 == 3);
    CHECK(s.a3 == 0);
    // equals the full reconstruction on inert reference data (d1 p=3)
    CHECK(shortcut_inert(3, 4, 10) == lpoly_from_counts({3, 4, 10, 28}));
    // s1 != 0 falsifies the inert prediction
    CHECK_THROWS_AS(shortcut_inert(5, 5, 26), TheoremViolation);
    // parity failure
    CHECK_THROWS_AS(shortcut_inert(7, 8, 51), NonIntegralCoefficient);
}

TEST_CASE("roots: magnitude, round trip, special shapes") {
    auto check_poly = [](const LPolynomial& L) {
        auto roots = evaluate_roots(L);
        double p = (double)L.p;
        for (const auto& a : roots) CHECK(std::abs(std::norm(a) - p) / p < 1e-6);
        // conjugate-paired order
        for (int i = 0; i < 6; i += 2) {
            CHECK(roots[(size_t)i].real() ==
                  doctest::Approx(roots[(size_t)(i + 1)].real()).epsilon(1e-9));
            CHECK(roots[(size_t)i].imag() ==
                  doctest::Approx(-roots[(size_t)(i + 1)].imag()).epsilon(1e-9));
        }
        // power sums reproduce s_k
        i64 ip = (i64)L.p;
        i64 s1 = -L.a1;
        i64 s2 = (i64)((i128)L.a1 * L.a1 - 2 * (i128)L.a2);
        i64 s3 = (i64)(-(i128)L.a1 * L.a1 * L.a1 + 3 * (i128)L.a1 * L.a2 - 3 * (i128)L.a3);
        (void)ip;
        std::complex<double> p1 = 0, p2 = 0, p3 = 0;
        for (const auto& a : roots) {
            p1 += a;
            p2 += a * a;
            p3 += a * a * a;
        }
        CHECK(std::abs(p1 - (double)s1) < 1e-6 * (1 + std::abs((double)s1)));
        CHECK(std::abs(p2 - (double)s2) < 1e-6 * (1 + std::abs((double)s2)));
        CHECK(std::abs(p3 - (double)s3) < 1e-6 * (1 + std::abs((double)s3)));
    };

    // a = 0: roots satisfy alpha^6 = -p^3
    LPolynomial z{7, 0, 0, 0};
    auto roots = evaluate_roots(z);
    for (const auto& a : roots) {
        std::complex<double> a6 = std::pow(a, 6);
        CHECK(std::abs(a6 + 343.0) < 1e-6 * 343.0);
    }
    check_poly(z);

    // inert shape contains +- i sqrt(p)
    LPolynomial inert{13, 0, 13 - 5, 0};  // t = 5
    auto r2 = evaluate_roots(inert);
    double best = 1e9;
    for (const auto& a : r2) best = std::min(best, std::abs(a - std::complex<double>(0, std::sqrt(13.0))));
    CHECK(best < 1e-8);
    check_poly(inert);

    check_poly({11, -6, -3, 80});
    check_poly({13, -4, 13, 0});
    check_poly({101, 5, -30, 400});
}
