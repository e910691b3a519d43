#pragma once

#include <map>
#include <optional>

#include "im3/lpoly.hpp"
#include "im3/quadfield.hpp"

namespace im3 {

// L = (1 + pT^2)(1 - tT^2 + p^2 T^4) with b = a2 = p - t.
struct InertFactorization {
    u64 p;
    i64 b;
    i64 t;
};

// Cubic 1 - uT + vT^2 - wT^3 over O_M.
struct CubicFactor {
    QuadInt u, v, w;
    bool operator==(const CubicFactor&) const = default;
};

// The verified conjugate pair; `canonical` has w.y > 0 (ties broken by w.x > 0).
struct SplitFactorization {
    CubicFactor canonical;
    CubicFactor conjugate;
};

struct HeckeValue {
    u64 p;
    SplitKind kind;
    QuadInt psi;  // split: w/p with psi*conj(psi) = p; inert: -p
};

struct CharacterConsistencyReport {
    i64 modulus = 0;  // smallest consistent N, or 0 when none found up to n_max
    bool consistent = false;
    // residue (x mod N, y mod N) of the normalized generator -> unit psi/generator
    std::map<std::pair<i64, i64>, QuadInt> table;
    std::vector<std::string> violations;
};

struct NoFactorFound : TheoremViolation {
    explicit NoFactorFound(const std::string& m) : TheoremViolation("no cubic factor: " + m) {}
};
struct MultipleFactorsFound : Error {
    explicit MultipleFactorsFound(const std::string& m)
        : Error("multiple cubic factors (degenerate, manual review): " + m) {}
};

// Verifies a1 = a3 = 0, the bound -p <= b <= 3p (equivalently |t| <= 2p),
// and the exact product identity. Throws TheoremViolation with context.
InertFactorization check_inert(const LPolynomial& L);

// Finds the conjugate pair of exact cubic factors of L over O_M by testing
// all complementary root triples and verifying c * conj(c) = L exactly.
SplitFactorization split_cubic_factor(const LPolynomial& L, const ImagQuadField& M);

// Exact check that the product of the two cubics reproduces L over O_M.
bool verify_factorization(const ImagQuadField& M, const LPolynomial& L, const CubicFactor& c);

CubicFactor conj_factor(const ImagQuadField& M, const CubicFactor& c);

// Split: psi = w/p (coordinatewise exact), asserts psi * conj(psi) = p.
HeckeValue extract_psi(const ImagQuadField& M, const CubicFactor& cf, u64 p);
// Inert: psi = -Nm(p) against the (1 + pT^2) factor.
HeckeValue extract_psi(const ImagQuadField& M, const InertFactorization& f);

// True iff the value at the conjugate ideal is the conjugate value,
// i.e. the two verified cubics are exactly conjugate coefficientwise.
bool conjugation_check(const ImagQuadField& M, const CubicFactor& c, const CubicFactor& cbar);
bool conjugation_check(const ImagQuadField& M, const HeckeValue& at_p, const HeckeValue& at_pbar);

// For every split value psi, the normalized generator g = canonical_associate(psi)
// determines the unit zeta = psi/g. Searches the smallest modulus N <= n_max such
// that zeta depends only on g mod N. Requires >= 10 split values and h_M = 1.
CharacterConsistencyReport character_consistency(const ImagQuadField& M,
                                                 const std::vector<HeckeValue>& split_values,
                                                 i64 n_max = 1024);

// The accelerated zeta path at an inert good prime: counts only N_1, N_2,
// reconstructs L from the inert shape and verifies it. Wall time recorded
// for comparison against the full N_1..N_3 path.
struct ShortcutResult {
    LPolynomial L;
    InertFactorization inert;
    i64 us;
};
ShortcutResult shortcut_pipeline(const CurveModel& c, const ImagQuadField& M, u64 p);

}  // namespace im3
