#pragma once

#include <optional>

#include "im3/curves.hpp"

namespace im3 {

// exp(2 pi i num / order), stored reduced: 0 <= num < order, gcd(num, order) = 1
// (except the identity 1 = (0, 1)).
struct RootOfUnity {
    int num = 0;
    int order = 1;

    static RootOfUnity make(int num, int order);
    RootOfUnity mul(const RootOfUnity& o) const;
    RootOfUnity pow(int k) const;
    bool operator==(const RootOfUnity&) const = default;
    bool is_one() const { return num == 0; }
    bool is_rational() const { return order <= 2; }  // +1 or -1
    // strictly upper half plane under zeta_n -> e^{2 pi i/n}
    bool upper_half() const { return num > 0 && 2 * num < order; }
    std::string str() const;
};

// (x, y) -> (zeta_x * x, zeta_y * y)
struct MonomialAutomorphism {
    RootOfUnity zeta_x, zeta_y;
};

// x^i dx / y^j
struct Differential {
    int i, j;
    bool operator==(const Differential&) const = default;
};

struct SignatureReport {
    std::array<RootOfUnity, 3> eigenvalues;
    std::optional<std::pair<int, int>> signature;  // (r_sigma, r_sigma_bar), r_sigma >= r_sigma_bar
    bool unital = false;
    std::string generated_algebra;
};

// The standard monomial basis of regular differentials for the supported
// families: hyperelliptic deg 7/8, y^3 = quartic, y^4 = cubic.
std::vector<Differential> differential_basis(const CurveModel& c);

// Pulls the automorphism back through the basis; exact cyclotomic arithmetic.
// Validates that the automorphism maps the curve equation to a scalar
// multiple of itself.
SignatureReport act(const MonomialAutomorphism& a, const CurveModel& c);

}  // namespace im3
