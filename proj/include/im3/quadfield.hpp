#pragma once

#include <optional>
#include <string>
#include <vector>

#include "im3/ff.hpp"

namespace im3 {

// Element x + y*omega of O_M, omega depending on the field (see ImagQuadField).
struct QuadInt {
    i64 x = 0;
    i64 y = 0;
    bool operator==(const QuadInt&) const = default;
};

enum class SplitKind { Split, Inert, Ramified };

struct SplitType {
    SplitKind kind;
    // generator of a prime above p when one exists (h = 1 split primes)
    std::optional<QuadInt> pi;
};

// Reduced integral binary quadratic form a x^2 + b xy + c y^2.
struct QForm {
    i64 a, b, c;
    bool operator==(const QForm&) const = default;
};

struct ClassNumberResult {
    i64 D;
    i64 h;
    std::vector<QForm> forms;
};

// M = Q(sqrt(-d)), d squarefree positive. O_M = Z[omega] with
// omega = (1+sqrt(-d))/2 when -d = 1 mod 4, else omega = sqrt(-d).
class ImagQuadField {
public:
    explicit ImagQuadField(i64 d);

    i64 d() const { return d_; }
    i64 disc() const { return D_; }
    bool half_integer_basis() const { return half_; }  // omega = (1+sqrt(-d))/2
    i64 omega_trace() const { return half_ ? 1 : 0; }
    i64 omega_norm() const { return half_ ? (1 + d_) / 4 : d_; }

    QuadInt from_int(i64 n) const { return {n, 0}; }
    QuadInt conj(const QuadInt& z) const { return {z.x + omega_trace() * z.y, -z.y}; }
    i64 trace(const QuadInt& z) const { return 2 * z.x + omega_trace() * z.y; }
    i64 norm(const QuadInt& z) const;
    QuadInt add(const QuadInt& a, const QuadInt& b) const { return {a.x + b.x, a.y + b.y}; }
    QuadInt sub(const QuadInt& a, const QuadInt& b) const { return {a.x - b.x, a.y - b.y}; }
    QuadInt neg(const QuadInt& a) const { return {-a.x, -a.y}; }
    QuadInt mul(const QuadInt& a, const QuadInt& b) const;
    bool is_unit(const QuadInt& z) const { return norm(z) == 1; }

    // z / n with both coordinates exactly divisible
    QuadInt div_int_exact(const QuadInt& z, i64 n) const;
    // z / w exact in O_M
    QuadInt div_exact(const QuadInt& z, const QuadInt& w) const;

    // All units of O_M: {±1}, plus ±i for d = 1, the six units for d = 3.
    std::vector<QuadInt> units() const;

    // The unique associate inside the fundamental angular cone
    // [0, 2*pi / #units) of the fixed embedding sqrt(-d) -> +i*sqrt(d).
    QuadInt canonical_associate(const QuadInt& z) const;

    // Complex embedding under sqrt(-d) -> +i sqrt(d): returns (re, im).
    std::pair<double, double> embed(const QuadInt& z) const;

    SplitType split_type(u64 p) const;

private:
    i64 d_;
    i64 D_;
    bool half_;
};

// Class number of a negative discriminant via the reduced-forms scan.
ClassNumberResult class_number(i64 D);

bool is_fundamental_discriminant(i64 D);

// All fundamental D < 0 with |D| <= bound and h(D) = 1, ascending |D|.
std::vector<i64> class_number_one_discs(i64 bound);

std::string to_string(const ImagQuadField& M, const QuadInt& z);

}  // namespace im3
