#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "im3/ff.hpp"

namespace im3 {

enum class CurveFamily { Hyperelliptic, Superelliptic, PlaneQuartic };

// Monomial order of the 15 homogeneous quartic coefficients:
// X^4, X^3Y, X^3Z, X^2Y^2, X^2YZ, X^2Z^2, XY^3, XY^2Z, XYZ^2, XZ^3,
// Y^4, Y^3Z, Y^2Z^2, YZ^3, Z^4.
inline constexpr std::array<std::array<int, 3>, 15> kQuarticMonomials = {{
    {4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1}, {2, 0, 2}, {1, 3, 0},
    {1, 2, 1}, {1, 1, 2}, {1, 0, 3}, {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
}};

// A genus-3 curve in one of the three supported shapes. Immutable after
// construction; construction validates the genus-3 constraints.
struct CurveModel {
    CurveFamily family;
    std::string name;
    std::vector<i64> f;                // y^m = f(x) coefficients, ascending
    int m = 2;                         // 2 for hyperelliptic
    std::array<i64, 15> quartic{};     // plane quartic coefficients
    std::vector<u64> bad_primes;

    bool counting_supported() const {
        return family != CurveFamily::Superelliptic || m == 3;
    }
    bool is_bad_prime(u64 p) const {
        for (u64 b : bad_primes)
            if (b == p) return true;
        return false;
    }
};

CurveModel make_hyperelliptic(const std::string& name, std::vector<i64> f,
                              std::vector<u64> bad_primes);
// m = 3 (counted) or m = 4 (symbolic use only); m = 2 folds into hyperelliptic
CurveModel make_superelliptic(const std::string& name, int m, std::vector<i64> f,
                              std::vector<u64> bad_primes);
CurveModel make_plane_quartic(const std::string& name, const std::array<i64, 15>& coeffs,
                              std::vector<u64> bad_primes);

struct PointCounts {
    u64 p;
    i64 n1, n2, n3;
};

// |N - (q+1)| <= 6 sqrt(q), exact integer comparison
bool weil_bound_ok(u64 q, i64 n);

// Point count of the smooth projective model over F_q.
i64 count_points(const CurveModel& c, const ExtField& F);

// Independent exhaustive-enumeration oracle; requires q <= 10^4.
i64 brute_force_oracle(const CurveModel& c, const ExtField& F);

// N_1, N_2, N_3 over the deterministically constructed extensions.
// Throws BadPrime for listed bad primes and on Weil-bound violations
// (BadPrimeSuspected flagging).
PointCounts count_triple(const CurveModel& c, u64 p);

// N_1, N_2 only (the shortcut path input).
std::pair<i64, i64> count_pair(const CurveModel& c, u64 p);

// Primes p <= bound flagged bad by the shipped heuristics: small
// characteristic per family, leading coefficient, non-squarefree reduction
// (hyper/superelliptic) or a rational singular point (quartic).
std::vector<u64> suspect_bad_primes(const CurveModel& c, u64 bound);

// Integer resultant of f and its derivative (nonzero iff f squarefree over Q).
i128 integer_disc_resultant(const std::vector<i64>& f);

}  // namespace im3
