#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "im3/errors.hpp"

namespace im3 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

bool is_prime(u64 n);

// Prime field F_p for 2 < p < 2^31. Residues are plain uint64_t in [0, p).
// Products fit in 64 bits, reduced with a precomputed Barrett constant.
class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 p() const { return p_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a ? p_ - a : 0; }
    u64 mul(u64 a, u64 b) const { return reduce(a * b); }
    u64 pow(u64 a, u64 n) const;
    u64 inv(u64 a) const;

    // Reduce t < 2^62 modulo p.
    u64 reduce(u64 t) const {
        u64 q = (u64)(((u128)t * binv_) >> 64);
        u64 r = t - q * p_;
        while (r >= p_) r -= p_;
        return r;
    }
    u64 from_int(i64 v) const {
        i64 r = v % (i64)p_;
        return r < 0 ? (u64)(r + (i64)p_) : (u64)r;
    }

private:
    u64 p_;
    u64 binv_;  // floor(2^64 / p)
};

// F_{p^k} for k in {1,2,3}, with the deterministically chosen modulus:
// the lexicographically first irreducible monic polynomial
// x^k + c_{k-1} x^{k-1} + ... + c_0 in the order of (c_{k-1},...,c_0).
//
// Elements are coefficient triples in the power basis, little-endian,
// unused coordinates zero.
class ExtField {
public:
    using Elem = std::array<u64, 3>;

    static ExtField make(u64 p, int k);

    const PrimeField& base() const { return fp_; }
    u64 p() const { return fp_.p(); }
    int k() const { return k_; }
    u64 q() const { return q_; }  // p^k; construction rejects p^k >= 2^63
    // modulus coefficients c_0..c_{k-1} (the x^k coefficient is 1)
    const std::array<u64, 3>& modulus() const { return mod_; }

    Elem zero() const { return {0, 0, 0}; }
    Elem one() const { return {1, 0, 0}; }
    Elem from_int(i64 v) const { return {fp_.from_int(v), 0, 0}; }
    bool is_zero(const Elem& a) const { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

    Elem add(const Elem& a, const Elem& b) const {
        return {fp_.add(a[0], b[0]), fp_.add(a[1], b[1]), fp_.add(a[2], b[2])};
    }
    Elem sub(const Elem& a, const Elem& b) const {
        return {fp_.sub(a[0], b[0]), fp_.sub(a[1], b[1]), fp_.sub(a[2], b[2])};
    }
    Elem neg(const Elem& a) const { return {fp_.neg(a[0]), fp_.neg(a[1]), fp_.neg(a[2])}; }
    Elem smul(u64 c, const Elem& a) const {
        return {fp_.mul(c, a[0]), fp_.mul(c, a[1]), fp_.mul(c, a[2])};
    }

    Elem mul(const Elem& a, const Elem& b) const {
        switch (k_) {
            case 1: return {fp_.mul(a[0], b[0]), 0, 0};
            case 2: return mul2(a, b);
            default: return mul3(a, b);
        }
    }
    Elem sqr(const Elem& a) const { return mul(a, a); }

    Elem pow(const Elem& a, u64 n) const;
    Elem inv(const Elem& a) const;  // a != 0

    // 0 if a == 0, else a^{(q-1)/2} read as +-1. Requires q odd.
    int quadratic_character(const Elem& a) const;

    // Enumeration order: index = c_0 + c_1 p + c_2 p^2.
    u64 index(const Elem& a) const {
        u64 s = a[0];
        if (k_ > 1) s += a[1] * fp_.p();
        if (k_ > 2) s += a[2] * fp_.p() * fp_.p();
        return s;
    }
    Elem from_index(u64 i) const {
        Elem e = {0, 0, 0};
        for (int j = 0; j < k_; j++) { e[j] = i % fp_.p(); i /= fp_.p(); }
        return e;
    }

private:
    ExtField(PrimeField fp, int k, std::array<u64, 3> mod);

    Elem mul2(const Elem& a, const Elem& b) const {
        // (a0 + a1 x)(b0 + b1 x) mod x^2 + m1 x + m0
        u64 t0 = a[0] * b[0];
        u64 t1 = a[0] * b[1] + a[1] * b[0];
        u64 t2 = fp_.reduce(a[1] * b[1]);
        // fold t2 x^2 = -t2 (m1 x + m0)
        u64 r0 = fp_.reduce(t0 + (fp_.p() - fp_.mul(t2, mod_[0])));
        u64 r1 = fp_.reduce(t1 + (fp_.p() - fp_.mul(t2, mod_[1])));
        return {r0, r1, 0};
    }
    Elem mul3(const Elem& a, const Elem& b) const;

    PrimeField fp_;
    int k_;
    u64 q_;
    std::array<u64, 3> mod_;  // c_0, c_1, c_2
};

// Dense univariate polynomial over F_q, coefficients ascending by degree.
using FqPoly = std::vector<ExtField::Elem>;

FqPoly fqpoly_trim(const ExtField& F, FqPoly f);
int fqpoly_deg(const ExtField& F, const FqPoly& f);  // -1 for the zero polynomial
ExtField::Elem fqpoly_eval(const ExtField& F, const FqPoly& f, const ExtField::Elem& x);
FqPoly fqpoly_derivative(const ExtField& F, const FqPoly& f);
FqPoly fqpoly_mulmod(const ExtField& F, const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly fqpoly_gcd(const ExtField& F, FqPoly a, FqPoly b);
// f / g, exact division required
FqPoly fqpoly_divexact(const ExtField& F, const FqPoly& f, const FqPoly& g);
// f with repeated factors stripped: f / gcd(f, f')
FqPoly fqpoly_squarefree_part(const ExtField& F, const FqPoly& f);

// Number of distinct roots of f in F_q, via deg gcd(x^q - x mod f, f).
// Works in any characteristic; f must be nonzero.
int count_distinct_roots(const ExtField& F, const FqPoly& f);

// Spec operation: distinct-root count for deg f <= 4.
int count_roots(const ExtField& F, const FqPoly& f);

}  // namespace im3
