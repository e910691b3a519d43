#pragma once

#include <optional>

#include "im3/imstruct.hpp"

namespace im3 {

struct EllipticAp {
    u64 p;
    i64 ap;
};

// y^2 = x^3 + Ax + B
struct WeierstrassCurve {
    i64 A, B;
    bool operator==(const WeierstrassCurve&) const = default;
    i64 disc4a3_27b2() const { return 4 * A * A * A + 27 * B * B; }
};

// Split: a_p = Tr(psi); inert: a_p = 0. Asserts the Hasse bound.
EllipticAp ap_from_psi(const ImagQuadField& M, const HeckeValue& h);

// a_p = p + 1 - #E(F_p) by direct character summation; requires p not
// dividing 6 * (4A^3 + 27B^2).
EllipticAp ec_count(const WeierstrassCurve& E, u64 p);

bool ec_good_prime(const WeierstrassCurve& E, u64 p);

// Exhaustive scan over |A|, |B| <= coeff_bound; a candidate survives iff
// ec_count agrees with the given traces at every common good prime
// <= prime_bound. Survivors sorted by (|A|+|B|, A, B). When `candidates`
// is given, only those models are tested.
std::vector<WeierstrassCurve> find_matching_curve(
    const std::vector<EllipticAp>& aps, i64 coeff_bound, u64 prime_bound,
    const std::optional<std::vector<WeierstrassCurve>>& candidates = std::nullopt);

}  // namespace im3
