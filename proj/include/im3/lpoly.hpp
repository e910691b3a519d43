#pragma once

#include <array>
#include <complex>

#include "im3/curves.hpp"

namespace im3 {

// Power sums s_k = p^k + 1 - N_k of the six Frobenius eigenvalues.
struct PowerSums {
    u64 p;
    i64 s1, s2, s3;

    static PowerSums from_counts(const PointCounts& pc);
};

// Degree-6 Weil polynomial 1 + a1 T + a2 T^2 + a3 T^3 + p a2 T^4 + p^2 a1 T^5 + p^3 T^6.
// The functional equation holds by construction.
struct LPolynomial {
    u64 p;
    i64 a1, a2, a3;

    bool operator==(const LPolynomial&) const = default;

    // full coefficient vector, constant term first (i128: a6 = p^3)
    std::array<i128, 7> coeffs() const {
        i128 P = (i128)p;
        return {1, a1, a2, a3, (i128)a2 * P, (i128)a1 * P * P, P * P * P};
    }
};

// Newton identities: a1 = -s1, a2 = (s1^2 - s2)/2, a3 = -(s1^3 - 3 s1 s2 + 2 s3)/6.
// Divisions must be exact; failure flags the prime.
LPolynomial lpoly_from_counts(const PointCounts& pc);

// Reconstruct the inert-shape L-polynomial (a1 = a3 = 0, a2 = -s2/2)
// from N_1, N_2 alone. Throws TheoremViolation when s1 != 0.
LPolynomial shortcut_inert(u64 p, i64 n1, i64 n2);

// The six reciprocal roots, conjugate-paired (alpha, conj(alpha)) adjacent,
// computed by Aberth-Ehrlich iteration on the palindromic rescaling.
std::array<std::complex<double>, 6> evaluate_roots(const LPolynomial& L);

}  // namespace im3
