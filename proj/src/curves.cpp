#include "im3/curves.hpp"

#include <algorithm>
#include <optional>

namespace im3 {

// --- model construction -------------------------------------------------

static int poly_deg(const std::vector<i64>& f) {
    for (int i = (int)f.size() - 1; i >= 0; i--)
        if (f[(size_t)i] != 0) return i;
    return -1;
}

i128 integer_disc_resultant(const std::vector<i64>& fin) {
    // Res(f, f') via fraction-free Bareiss elimination of the Sylvester matrix
    std::vector<i64> f(fin.begin(), fin.begin() + poly_deg(fin) + 1);
    int n = (int)f.size() - 1;
    std::vector<i64> g(n > 0 ? (size_t)n : 1, 0);
    for (int i = 1; i <= n; i++) g[(size_t)(i - 1)] = (i64)i * f[(size_t)i];
    int m = n - 1;
    int dim = n + m;
    std::vector<std::vector<i128>> a((size_t)dim, std::vector<i128>((size_t)dim, 0));
    for (int r = 0; r < m; r++)
        for (int i = 0; i <= n; i++) a[(size_t)r][(size_t)(r + i)] = f[(size_t)(n - i)];
    for (int r = 0; r < n; r++)
        for (int i = 0; i <= m; i++) a[(size_t)(m + r)][(size_t)(r + i)] = g[(size_t)(m - i)];
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < dim - 1; k++) {
        if (a[(size_t)k][(size_t)k] == 0) {
            int s = -1;
            for (int r = k + 1; r < dim; r++)
                if (a[(size_t)r][(size_t)k] != 0) { s = r; break; }
            if (s < 0) return 0;
            std::swap(a[(size_t)k], a[(size_t)s]);
            sign = -sign;
        }
        for (int r = k + 1; r < dim; r++) {
            for (int c = k + 1; c < dim; c++)
                a[(size_t)r][(size_t)c] =
                    (a[(size_t)k][(size_t)k] * a[(size_t)r][(size_t)c] -
                     a[(size_t)r][(size_t)k] * a[(size_t)k][(size_t)c]) /
                    prev;
            a[(size_t)r][(size_t)k] = 0;
        }
        prev = a[(size_t)k][(size_t)k];
    }
    return sign * a[(size_t)(dim - 1)][(size_t)(dim - 1)];
}

CurveModel make_hyperelliptic(const std::string& name, std::vector<i64> f,
                              std::vector<u64> bad_primes) {
    int deg = poly_deg(f);
    if (deg < 7 || deg > 8)
        throw Unsupported("hyperelliptic model needs deg f in {7,8}, got " + std::to_string(deg));
    f.resize((size_t)deg + 1);
    if (integer_disc_resultant(f) == 0)
        throw Unsupported("hyperelliptic f has repeated roots over Q (genus drops)");
    return CurveModel{CurveFamily::Hyperelliptic, name, std::move(f), 2, {}, std::move(bad_primes)};
}

CurveModel make_superelliptic(const std::string& name, int m, std::vector<i64> f,
                              std::vector<u64> bad_primes) {
    int deg = poly_deg(f);
    if (m == 2) return make_hyperelliptic(name, std::move(f), std::move(bad_primes));
    if (m == 3) {
        if (deg != 4) throw Unsupported("y^3 = f needs deg f = 4 for genus 3");
    } else if (m == 4) {
        if (deg != 3) throw Unsupported("y^4 = f needs deg f = 3 for genus 3");
    } else {
        throw Unsupported("superelliptic exponent must be 2, 3 or 4");
    }
    f.resize((size_t)deg + 1);
    if (integer_disc_resultant(f) == 0)
        throw Unsupported("superelliptic f is not squarefree over Q");
    return CurveModel{CurveFamily::Superelliptic, name, std::move(f), m, {}, std::move(bad_primes)};
}

CurveModel make_plane_quartic(const std::string& name, const std::array<i64, 15>& coeffs,
                              std::vector<u64> bad_primes) {
    bool any = false;
    for (i64 c : coeffs) any = any || c != 0;
    if (!any) throw Unsupported("zero quartic");
    CurveModel c{CurveFamily::PlaneQuartic, name, {}, 0, coeffs, std::move(bad_primes)};
    return c;
}

bool weil_bound_ok(u64 q, i64 n) {
    i128 dev = (i128)n - ((i128)q + 1);
    return dev * dev <= (i128)36 * (i128)q;
}

// --- field tables --------------------------------------------------------

namespace {

struct Bitset {
    std::vector<u64> w;
    explicit Bitset(u64 n = 0) : w((size_t)((n + 63) / 64), 0) {}
    void set(u64 i) { w[(size_t)(i >> 6)] |= 1ULL << (i & 63); }
    bool get(u64 i) const { return (w[(size_t)(i >> 6)] >> (i & 63)) & 1; }
};

struct ElemIter {
    ExtField::Elem e{0, 0, 0};
    int k;
    u64 p;
    void next() {
        for (int i = 0; i < k; i++) {
            if (++e[(size_t)i] < p) return;
            e[(size_t)i] = 0;
        }
    }
};

struct FieldTables {
    u64 q = 0;
    bool has_cube = false, has_sqrt = false;
    Bitset sq, cb;
    std::vector<u32> sqrt_tbl;
};

FieldTables build_tables(const ExtField& F, bool want_cube, bool want_sqrt) {
    FieldTables T;
    T.q = F.q();
    T.sq = Bitset(T.q);
    want_cube = want_cube && (T.q % 3 == 1);
    want_sqrt = want_sqrt && T.q < (1ULL << 28);
    if (want_cube) T.cb = Bitset(T.q);
    if (want_sqrt) T.sqrt_tbl.assign((size_t)T.q, 0);
    ElemIter it{{0, 0, 0}, F.k(), F.p()};
    for (u64 i = 0; i < T.q; i++, it.next()) {
        ExtField::Elem s = F.sqr(it.e);
        u64 si = F.index(s);
        T.sq.set(si);
        if (want_sqrt) T.sqrt_tbl[(size_t)si] = (u32)i;
        if (want_cube) T.cb.set(F.index(F.mul(s, it.e)));
    }
    T.has_cube = want_cube;
    T.has_sqrt = want_sqrt;
    return T;
}

// Tonelli-Shanks square root in F_q (odd q); nullopt for nonsquares.
std::optional<ExtField::Elem> ts_sqrt(const ExtField& F, const ExtField::Elem& a) {
    if (F.is_zero(a)) return F.zero();
    if (F.quadratic_character(a) != 1) return std::nullopt;
    u64 m = F.q() - 1;
    int e = 0;
    while ((m & 1) == 0) { m >>= 1; e++; }
    // find a nonresidue
    ExtField::Elem n = F.zero();
    for (u64 i = 2; i < F.q(); i++) {
        n = F.from_index(i);
        if (!F.is_zero(n) && F.quadratic_character(n) == -1) break;
    }
    ExtField::Elem x = F.pow(a, (m + 1) / 2);
    ExtField::Elem t = F.pow(a, m);
    ExtField::Elem r = F.pow(n, m);
    while (!(t == F.one())) {
        int i = 0;
        ExtField::Elem tt = t;
        while (!(tt == F.one())) { tt = F.sqr(tt); i++; }
        ExtField::Elem b = r;
        for (int j = 0; j < e - i - 1; j++) b = F.sqr(b);
        x = F.mul(x, b);
        r = F.sqr(b);
        t = F.mul(t, r);
        e = i;
    }
    return x;
}

// --- closed-form fiber root counting ------------------------------------

struct CubicCtx {
    ExtField::Elem inv2, inv3, inv4, inv27;
    u64 m;  // (q+1)/3 when q = 2 mod 3
};

CubicCtx make_cubic_ctx(const ExtField& F) {
    CubicCtx c;
    c.inv2 = F.inv(F.from_int(2));
    c.inv3 = F.inv(F.from_int(3));
    c.inv4 = F.sqr(c.inv2);
    c.inv27 = F.mul(F.sqr(c.inv3), c.inv3);
    c.m = F.q() % 3 == 2 ? (F.q() + 1) / 3 : 0;
    return c;
}

// arithmetic in F_{q^2} = F_q[u]/(u^2 - r)
struct Fq2 {
    ExtField::Elem a, b;
};
Fq2 fq2_mul(const ExtField& F, const ExtField::Elem& r, const Fq2& x, const Fq2& y) {
    ExtField::Elem ac = F.mul(x.a, y.a);
    ExtField::Elem bd = F.mul(x.b, y.b);
    ExtField::Elem ad_bc = F.add(F.mul(x.a, y.b), F.mul(x.b, y.a));
    return {F.add(ac, F.mul(r, bd)), ad_bc};
}
Fq2 fq2_sqr(const ExtField& F, const ExtField::Elem& r, const Fq2& x) {
    ExtField::Elem a2 = F.sqr(x.a);
    ExtField::Elem b2 = F.sqr(x.b);
    ExtField::Elem ab = F.mul(x.a, x.b);
    return {F.add(a2, F.mul(r, b2)), F.add(ab, ab)};
}
Fq2 fq2_pow(const ExtField& F, const ExtField::Elem& r, Fq2 x, u64 n) {
    Fq2 acc{F.one(), F.zero()};
    while (n) {
        if (n & 1) acc = fq2_mul(F, r, acc, x);
        x = fq2_sqr(F, r, x);
        n >>= 1;
    }
    return acc;
}

// distinct roots of the monic cubic t^3 + b2 t^2 + b1 t + b0; needs p >= 5
int cubic_roots_monic(const ExtField& F, const FieldTables& T, const CubicCtx& C,
                      const ExtField::Elem& b2, const ExtField::Elem& b1,
                      const ExtField::Elem& b0) {
    // depress t = s - b2/3
    ExtField::Elem b2o3 = F.mul(b2, C.inv3);
    ExtField::Elem P = F.sub(b1, F.mul(b2, b2o3));
    // Q = 2 b2^3/27 - b2 b1 / 3 + b0
    ExtField::Elem b2cub = F.mul(F.sqr(b2), b2);
    ExtField::Elem Q = F.add(F.sub(F.smul(2, F.mul(b2cub, C.inv27)), F.mul(b2o3, b1)), b0);

    bool Pz = F.is_zero(P), Qz = F.is_zero(Q);
    if (Pz && Qz) return 1;
    if (Pz) {
        // s^3 = -Q
        if (F.q() % 3 == 2) return 1;
        return T.cb.get(F.index(F.neg(Q))) ? 3 : 0;
    }
    if (Qz) {
        // s (s^2 + P)
        return 1 + (T.sq.get(F.index(F.neg(P))) ? 2 : 0);
    }
    // e = Q^2/4 + P^3/27 = -disc/108
    ExtField::Elem e = F.add(F.mul(F.sqr(Q), C.inv4), F.mul(F.mul(F.sqr(P), P), C.inv27));
    if (F.is_zero(e)) return 2;  // one double root and one simple root, both rational
    if (F.q() % 3 == 1) {
        // disc is a square iff e is (chi(-3) = 1 here)
        if (!T.sq.get(F.index(e))) return 1;
        ExtField::Elem w;
        if (T.has_sqrt) {
            w = F.from_index(T.sqrt_tbl[(size_t)F.index(e)]);
        } else {
            auto ws = ts_sqrt(F, e);
            if (!ws) throw Error("sqrt of square failed");
            w = *ws;
        }
        ExtField::Elem z = F.add(F.neg(F.mul(Q, C.inv2)), w);
        return T.cb.get(F.index(z)) ? 3 : 0;
    }
    // q = 2 mod 3: chi(-3) = -1, so disc square <=> e nonsquare
    if (T.sq.get(F.index(e))) return 1;
    // z = -Q/2 + u in F_{q^2} = F_q[u]/(u^2 - e); the cubic splits iff z is a
    // cube there, iff z^((q+1)/3) lies in F_q
    Fq2 z{F.neg(F.mul(Q, C.inv2)), F.one()};
    Fq2 Z = fq2_pow(F, e, z, C.m);
    return F.is_zero(Z.b) ? 3 : 0;
}

// distinct roots of c[0] + c[1] t + ... + c[deg] t^deg, deg <= 3, via closed
// forms; lcinv caches the inverse of the cubic leading coefficient
struct LcInvCache {
    ExtField::Elem lc, inv;
    bool valid = false;
};

i64 small_fiber_roots(const ExtField& F, const FieldTables& T, const CubicCtx& C,
                      const std::array<ExtField::Elem, 4>& c, u64 q_for_zero,
                      LcInvCache& cache) {
    int deg = 3;
    while (deg >= 0 && F.is_zero(c[(size_t)deg])) deg--;
    if (deg < 0) return (i64)q_for_zero;  // zero fiber: the whole line lies on the curve
    if (deg == 0) return 0;
    if (deg == 1) return 1;
    if (deg == 2) {
        ExtField::Elem disc = F.sub(F.sqr(c[1]), F.smul(4, F.mul(c[2], c[0])));
        if (F.is_zero(disc)) return 1;
        return T.sq.get(F.index(disc)) ? 2 : 0;
    }
    if (!(cache.valid && cache.lc == c[3])) {
        cache.lc = c[3];
        cache.inv = F.inv(c[3]);
        cache.valid = true;
    }
    return cubic_roots_monic(F, T, C, F.mul(c[2], cache.inv), F.mul(c[1], cache.inv),
                             F.mul(c[0], cache.inv));
}

}  // namespace

// --- per-family point counts ---------------------------------------------

static i64 count_hyperelliptic(const CurveModel& c, const ExtField& F) {
    if (F.p() == 2) throw BadPrime("hyperelliptic counting needs odd characteristic");
    int deg = poly_deg(c.f);
    if (c.f[(size_t)deg] % (i64)F.p() == 0)
        throw BadPrime("characteristic divides the leading coefficient");
    std::vector<ExtField::Elem> fc;
    for (i64 a : c.f) fc.push_back(F.from_int(a));
    u64 q = F.q();
    i64 n = 0;
    if (q <= 2048) {
        ElemIter it{{0, 0, 0}, F.k(), F.p()};
        for (u64 i = 0; i < q; i++, it.next()) {
            ExtField::Elem fx = fqpoly_eval(F, fc, it.e);
            n += 1 + F.quadratic_character(fx);
        }
        if (deg == 7) n += 1;
        else n += F.quadratic_character(F.from_int(c.f[8])) == 1 ? 2 : 0;
        return n;
    }
    FieldTables T = build_tables(F, false, false);
    ElemIter it{{0, 0, 0}, F.k(), F.p()};
    for (u64 i = 0; i < q; i++, it.next()) {
        ExtField::Elem acc = F.zero();
        for (size_t j = fc.size(); j-- > 0;) acc = F.add(F.mul(acc, it.e), fc[j]);
        if (F.is_zero(acc)) n += 1;
        else if (T.sq.get(F.index(acc))) n += 2;
    }
    if (deg == 7) n += 1;
    else n += T.sq.get(F.index(F.from_int(c.f[8]))) ? 2 : 0;
    return n;
}

static i64 count_super3(const CurveModel& c, const ExtField& F) {
    if (F.p() == 3) throw BadPrime("y^3 model in characteristic 3");
    if (c.f[4] % (i64)F.p() == 0)
        throw BadPrime("characteristic divides the leading coefficient");
    u64 q = F.q();
    if (q % 3 == 2) return (i64)q + 1;  // cubing is a bijection: one y per x
    std::vector<ExtField::Elem> fc;
    for (i64 a : c.f) fc.push_back(F.from_int(a));
    FieldTables T = build_tables(F, true, false);
    i64 n = 0;
    ElemIter it{{0, 0, 0}, F.k(), F.p()};
    for (u64 i = 0; i < q; i++, it.next()) {
        ExtField::Elem fx = fqpoly_eval(F, fc, it.e);
        if (F.is_zero(fx)) n += 1;
        else if (T.cb.get(F.index(fx))) n += 3;
    }
    return n + 1;
}

// coefficient grid c[i][j] of x^i y^j for the chart z = 1, reduced mod p
static std::array<std::array<i64, 5>, 5> quartic_grid(const CurveModel& c) {
    std::array<std::array<i64, 5>, 5> g{};
    for (size_t t = 0; t < 15; t++) {
        auto [i, j, k] = kQuarticMonomials[t];
        (void)k;
        g[(size_t)i][(size_t)j] += c.quartic[t];
    }
    return g;
}

static i64 count_quartic(const CurveModel& c, const ExtField& F) {
    auto grid = quartic_grid(c);
    u64 p = F.p();
    // degrees mod p
    auto nz = [&](i64 v) { return v % (i64)p != 0; };
    int degx = -1, degy = -1;
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++)
            if (nz(grid[(size_t)i][(size_t)j])) {
                degx = std::max(degx, i);
                degy = std::max(degy, j);
            }
    if (degx < 0) throw BadPrime("quartic vanishes mod p");

    i64 n = 0;
    u64 q = F.q();

    // choose fibering so the fiber degree is smallest; swap roles of x and y
    bool fiber_in_x = degx <= degy;
    int fdeg = fiber_in_x ? degx : degy;

    // fiber coefficient polynomials in the parameter
    std::array<std::vector<ExtField::Elem>, 5> fcoef;
    for (int i = 0; i <= 4; i++) {
        std::vector<ExtField::Elem> cf;
        for (int j = 0; j <= 4; j++) {
            i64 v = fiber_in_x ? grid[(size_t)i][(size_t)j] : grid[(size_t)j][(size_t)i];
            cf.push_back(F.from_int(v));
        }
        fcoef[(size_t)i] = fqpoly_trim(F, cf);
    }

    bool closed_form = p >= 5 && fdeg <= 3;
    FieldTables T;
    CubicCtx C;
    if (closed_form) {
        T = build_tables(F, true, q % 3 == 1);
        C = make_cubic_ctx(F);
    }
    LcInvCache cache;
    ElemIter it{{0, 0, 0}, F.k(), F.p()};
    for (u64 i = 0; i < q; i++, it.next()) {
        if (closed_form) {
            std::array<ExtField::Elem, 4> cf;
            for (int d = 0; d <= 3; d++) cf[(size_t)d] = fqpoly_eval(F, fcoef[(size_t)d], it.e);
            n += small_fiber_roots(F, T, C, cf, q, cache);
        } else {
            FqPoly fiber;
            for (int d = 0; d <= 4; d++) fiber.push_back(fqpoly_eval(F, fcoef[(size_t)d], it.e));
            fiber = fqpoly_trim(F, fiber);
            if (fiber.empty()) n += (i64)q;
            else if ((int)fiber.size() == 1) n += 0;
            else n += count_distinct_roots(F, fiber);
        }
    }

    // line at infinity: binary quartic B(X, Y) = F(X, Y, 0)
    std::array<i64, 5> b{};  // coefficient of X^{4-j} Y^j
    for (size_t t = 0; t < 15; t++) {
        auto [i, j, k] = kQuarticMonomials[t];
        if (k == 0) b[(size_t)j] += c.quartic[t];
    }
    bool ball = true;
    for (i64 v : b) ball = ball && !nz(v);
    if (ball) {
        n += (i64)q + 1;  // degenerate: the whole line lies on the curve
    } else {
        FqPoly bt;  // B(1, t) as a polynomial in t
        for (int j = 0; j <= 4; j++) bt.push_back(F.from_int(b[(size_t)j]));
        bt = fqpoly_trim(F, bt);
        if ((int)bt.size() >= 2) n += count_distinct_roots(F, bt);
        if (!nz(b[4])) n += 1;  // [0:1:0]
    }
    return n;
}

i64 count_points(const CurveModel& c, const ExtField& F) {
    if (!c.counting_supported())
        throw Unsupported("point counting for y^4 models is not supported");
    if (c.is_bad_prime(F.p()))
        throw BadPrime("p = " + std::to_string(F.p()) + " is listed bad for " + c.name);
    switch (c.family) {
        case CurveFamily::Hyperelliptic: return count_hyperelliptic(c, F);
        case CurveFamily::Superelliptic: return count_super3(c, F);
        default: return count_quartic(c, F);
    }
}

// --- brute-force oracle ---------------------------------------------------

static i64 oracle_k1(const CurveModel& c, const ExtField& F) {
    u32 p = (u32)F.p();
    auto redc = [&](i64 v) { return (u32)(((v % (i64)p) + (i64)p) % (i64)p); };
    i64 n = 0;
    if (c.family == CurveFamily::Hyperelliptic || c.family == CurveFamily::Superelliptic) {
        int e = c.family == CurveFamily::Hyperelliptic ? 2 : 3;
        if (c.family == CurveFamily::Hyperelliptic && p == 2)
            throw BadPrime("oracle: odd q required for hyperelliptic");
        // histogram of y^e over all y: cnt[v] is the exact fiber size at v
        std::vector<u32> cnt((size_t)p, 0);
        for (u32 y = 0; y < p; y++) {
            u64 t = 1;
            for (int i = 0; i < e; i++) t = t * y % p;
            cnt[(size_t)t]++;
        }
        std::vector<u32> fc;
        for (i64 a : c.f) fc.push_back(redc(a));
        for (u32 x = 0; x < p; x++) {
            u64 acc = 0;
            for (size_t j = fc.size(); j-- > 0;) acc = (acc * x + fc[j]) % p;
            n += cnt[(size_t)acc];
        }
        if (c.family == CurveFamily::Hyperelliptic) {
            int deg = poly_deg(c.f);
            if (deg == 7) n += 1;
            else {
                u32 lc = redc(c.f[8]);
                if (lc == 0) throw BadPrime("oracle: p divides leading coefficient");
                n += cnt[(size_t)lc];  // 2 if lc is a nonzero square, else 0
            }
        } else {
            if (redc(c.f[4]) == 0) throw BadPrime("oracle: p divides leading coefficient");
            n += 1;
        }
        return n;
    }
    // plane quartic: evaluate F(x, y, 1) at every affine pair, walking the
    // lower-degree variable with exact finite differences (additions only)
    auto grid = quartic_grid(c);
    int degx = 0, degy = 0;
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++)
            if (grid[(size_t)i][(size_t)j] % (i64)p != 0) {
                degx = std::max(degx, i);
                degy = std::max(degy, j);
            }
    bool inner_x = degx <= degy;
    std::array<std::array<u32, 5>, 5> g{};  // g[inner][outer]
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++) {
            u32 v = redc(grid[(size_t)i][(size_t)j]);
            if (inner_x) g[(size_t)i][(size_t)j] = v;
            else g[(size_t)j][(size_t)i] = v;
        }
    auto addm = [&](u32 a, u32 b) {
        u32 s = a + b;
        return s >= p ? s - p : s;
    };
    auto subm = [&](u32 a, u32 b) { return a >= b ? a - b : a + p - b; };
    // seed a finite-difference stack for one outer value
    auto seed = [&](u32 o, std::array<u32, 5>& D, int& deg) {
        u32 a[5];
        for (int d = 0; d <= 4; d++) {
            u64 acc = 0;
            for (int j = 4; j >= 0; j--) acc = (acc * o + g[(size_t)d][(size_t)j]) % p;
            a[d] = (u32)acc;
        }
        deg = 4;
        while (deg > 0 && a[deg] == 0) deg--;
        u32 v[5];
        for (u32 t = 0; t <= (u32)deg; t++) {  // values at 0..deg
            u64 acc = 0;
            for (int d = deg; d >= 0; d--) acc = (acc * t + a[d]) % p;
            v[t] = (u32)acc;
        }
        for (int lvl = 0; lvl <= deg; lvl++) {
            D[(size_t)lvl] = v[0];
            for (int i = 0; i < deg - lvl; i++) v[(size_t)i] = subm(v[(size_t)i + 1], v[(size_t)i]);
        }
    };
    auto walk_one = [&](const std::array<u32, 5>& D, int deg) {
        i64 cntz = 0;
        u32 d0 = D[0], d1 = D[1], d2 = D[2], d3 = D[3], d4 = D[4];
        if (deg == 3) {
            for (u32 t = 0; t < p; t++) {
                cntz += d0 == 0;
                d0 = addm(d0, d1);
                d1 = addm(d1, d2);
                d2 = addm(d2, d3);
            }
        } else if (deg == 4) {
            for (u32 t = 0; t < p; t++) {
                cntz += d0 == 0;
                d0 = addm(d0, d1);
                d1 = addm(d1, d2);
                d2 = addm(d2, d3);
                d3 = addm(d3, d4);
            }
        } else {
            for (u32 t = 0; t < p; t++) {
                cntz += d0 == 0;
                d0 = addm(d0, d1);
                if (deg >= 2) d1 = addm(d1, d2);
            }
        }
        return cntz;
    };
    for (u32 o = 0; o < p; o += 2) {
        std::array<u32, 5> A{}, B{};
        int dega, degb = -1;
        seed(o, A, dega);
        bool haveb = o + 1 < p;
        if (haveb) seed(o + 1, B, degb);
        if (dega == 0) {
            if (A[0] == 0) n += (i64)p;
            dega = -1;
        }
        if (haveb && degb == 0) {
            if (B[0] == 0) n += (i64)p;
            degb = -1;
        }
        if (dega == 3 && degb == 3) {
            // walk two cubic fibers together to keep the add chains busy
            u32 a0 = A[0], a1 = A[1], a2 = A[2], a3 = A[3];
            u32 b0 = B[0], b1 = B[1], b2 = B[2], b3 = B[3];
            i64 cntz = 0;
            for (u32 t = 0; t < p; t++) {
                cntz += (a0 == 0) + (b0 == 0);
                a0 = addm(a0, a1);
                b0 = addm(b0, b1);
                a1 = addm(a1, a2);
                b1 = addm(b1, b2);
                a2 = addm(a2, a3);
                b2 = addm(b2, b3);
            }
            n += cntz;
        } else {
            if (dega > 0) n += walk_one(A, dega);
            if (degb > 0) n += walk_one(B, degb);
        }
    }
    // line at infinity, exhaustively: [1:t:0] roots and [0:1:0]
    std::array<u32, 5> b{};
    bool ball = true;
    for (size_t t = 0; t < 15; t++) {
        auto [i, j, k] = kQuarticMonomials[t];
        if (k == 0) b[(size_t)j] = (u32)(((i64)b[(size_t)j] + redc(c.quartic[t])) % p);
    }
    for (u32 v : b) ball = ball && v == 0;
    if (ball) return n + (i64)p + 1;
    for (u32 t = 0; t < p; t++) {
        u64 acc = 0;
        for (int j = 4; j >= 0; j--) acc = (acc * t + b[(size_t)j]) % p;
        n += acc == 0;
    }
    n += b[4] == 0;
    return n;
}

static i64 oracle_generic(const CurveModel& c, const ExtField& F) {
    u64 q = F.q();
    i64 n = 0;
    if (c.family == CurveFamily::Hyperelliptic || c.family == CurveFamily::Superelliptic) {
        if (c.family == CurveFamily::Hyperelliptic && q % 2 == 0)
            throw BadPrime("oracle: odd q required for hyperelliptic");
        int e = c.family == CurveFamily::Hyperelliptic ? 2 : 3;
        std::vector<u32> cnt((size_t)q, 0);
        ElemIter y{{0, 0, 0}, F.k(), F.p()};
        for (u64 i = 0; i < q; i++, y.next()) {
            ExtField::Elem t = F.sqr(y.e);
            if (e == 3) t = F.mul(t, y.e);
            cnt[(size_t)F.index(t)]++;
        }
        std::vector<ExtField::Elem> fc;
        for (i64 a : c.f) fc.push_back(F.from_int(a));
        ElemIter x{{0, 0, 0}, F.k(), F.p()};
        for (u64 i = 0; i < q; i++, x.next()) n += cnt[(size_t)F.index(fqpoly_eval(F, fc, x.e))];
        if (c.family == CurveFamily::Hyperelliptic) {
            if (poly_deg(c.f) == 7) n += 1;
            else {
                if (c.f[8] % (i64)F.p() == 0) throw BadPrime("oracle: p divides leading coefficient");
                n += cnt[(size_t)F.index(F.from_int(c.f[8]))];
            }
        } else {
            if (c.f[4] % (i64)F.p() == 0) throw BadPrime("oracle: p divides leading coefficient");
            n += 1;
        }
        return n;
    }
    // quartic: every affine pair via finite differences along +1 chains
    // (each chain walks a coset of the prime subfield)
    auto grid = quartic_grid(c);
    int degx = 0, degy = 0;
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++)
            if (grid[(size_t)i][(size_t)j] % (i64)F.p() != 0) {
                degx = std::max(degx, i);
                degy = std::max(degy, j);
            }
    bool inner_x = degx <= degy;
    std::array<std::vector<ExtField::Elem>, 5> fcoef;
    for (int d = 0; d <= 4; d++) {
        std::vector<ExtField::Elem> cf;
        for (int j = 0; j <= 4; j++) {
            i64 v = inner_x ? grid[(size_t)d][(size_t)j] : grid[(size_t)j][(size_t)d];
            cf.push_back(F.from_int(v));
        }
        fcoef[(size_t)d] = cf;
    }
    u64 p = F.p();
    ElemIter o{{0, 0, 0}, F.k(), F.p()};
    for (u64 i = 0; i < q; i++, o.next()) {
        std::array<ExtField::Elem, 5> a;
        int deg = 0;
        for (int d = 0; d <= 4; d++) {
            a[(size_t)d] = fqpoly_eval(F, fcoef[(size_t)d], o.e);
            if (!F.is_zero(a[(size_t)d])) deg = d;
        }
        if (deg == 0) {
            if (F.is_zero(a[0])) n += (i64)q;
            continue;
        }
        FqPoly fiber(a.begin(), a.begin() + deg + 1);
        // chains over bases with first coordinate zero
        ElemIter base{{0, 0, 0}, F.k(), F.p()};
        u64 chains = q / p;
        for (u64 ch = 0; ch < chains; ch++) {
            // seed the difference stack from deg+1 consecutive values
            std::array<ExtField::Elem, 5> v{}, D{};
            ExtField::Elem at = base.e;
            for (int t = 0; t <= deg; t++) {
                v[(size_t)t] = fqpoly_eval(F, fiber, at);
                at = F.add(at, F.one());
            }
            for (int lvl = 0; lvl <= deg; lvl++) {
                D[(size_t)lvl] = v[0];
                for (int t = 0; t < deg - lvl; t++)
                    v[(size_t)t] = F.sub(v[(size_t)t + 1], v[(size_t)t]);
            }
            for (u64 t = 0; t < p; t++) {
                n += F.is_zero(D[0]);
                for (int lvl = 0; lvl < deg; lvl++)
                    D[(size_t)lvl] = F.add(D[(size_t)lvl], D[(size_t)lvl + 1]);
            }
            // advance base past the prime-subfield coordinate
            base.e[0] = F.p() - 1;
            base.next();
        }
    }
    std::array<i64, 5> b{};
    for (size_t t = 0; t < 15; t++) {
        auto [i, j, k] = kQuarticMonomials[t];
        if (k == 0) b[(size_t)j] += c.quartic[t];
    }
    bool ball = true;
    for (i64 v : b) ball = ball && v % (i64)F.p() == 0;
    if (ball) return n + (i64)q + 1;
    ElemIter t{{0, 0, 0}, F.k(), F.p()};
    for (u64 j = 0; j < q; j++, t.next()) {
        ExtField::Elem acc = F.zero();
        for (int d = 4; d >= 0; d--) acc = F.add(F.mul(acc, t.e), F.from_int(b[(size_t)d]));
        n += F.is_zero(acc);
    }
    n += b[4] % (i64)F.p() == 0;
    return n;
}

i64 brute_force_oracle(const CurveModel& c, const ExtField& F) {
    if (F.q() > 10000) throw Unsupported("oracle limited to fields with <= 10^4 elements");
    if (!c.counting_supported())
        throw Unsupported("point counting for y^4 models is not supported");
    if (c.is_bad_prime(F.p()))
        throw BadPrime("p = " + std::to_string(F.p()) + " is listed bad for " + c.name);
    return F.k() == 1 ? oracle_k1(c, F) : oracle_generic(c, F);
}

// --- triples ---------------------------------------------------------------

PointCounts count_triple(const CurveModel& c, u64 p) {
    if (c.is_bad_prime(p)) throw BadPrime("p = " + std::to_string(p) + " is listed bad for " + c.name);
    PointCounts pc{p, 0, 0, 0};
    for (int k = 1; k <= 3; k++) {
        ExtField F = ExtField::make(p, k);
        i64 n = count_points(c, F);
        if (!weil_bound_ok(F.q(), n))
            throw BadPrime("Weil bound violated at p=" + std::to_string(p) +
                           " k=" + std::to_string(k) + " (BadPrimeSuspected)");
        (k == 1 ? pc.n1 : k == 2 ? pc.n2 : pc.n3) = n;
    }
    return pc;
}

std::pair<i64, i64> count_pair(const CurveModel& c, u64 p) {
    if (c.is_bad_prime(p)) throw BadPrime("p = " + std::to_string(p) + " is listed bad for " + c.name);
    ExtField F1 = ExtField::make(p, 1);
    ExtField F2 = ExtField::make(p, 2);
    i64 n1 = count_points(c, F1);
    i64 n2 = count_points(c, F2);
    if (!weil_bound_ok(F1.q(), n1) || !weil_bound_ok(F2.q(), n2))
        throw BadPrime("Weil bound violated at p=" + std::to_string(p) + " (BadPrimeSuspected)");
    return {n1, n2};
}

// --- bad-prime flagging ------------------------------------------------------

std::vector<u64> suspect_bad_primes(const CurveModel& c, u64 bound) {
    std::vector<u64> out;
    for (u64 p = 2; p <= bound; p++) {
        if (!is_prime(p)) continue;
        bool bad = false;
        if (c.family == CurveFamily::Hyperelliptic || c.family == CurveFamily::Superelliptic) {
            int deg = poly_deg(c.f);
            if ((c.family == CurveFamily::Hyperelliptic && p == 2) ||
                (c.family == CurveFamily::Superelliptic && p == (u64)c.m) ||
                c.f[(size_t)deg] % (i64)p == 0) {
                bad = true;
            } else {
                ExtField F = ExtField::make(p, 1);
                FqPoly f;
                for (i64 a : c.f) f.push_back(F.from_int(a));
                FqPoly g = fqpoly_gcd(F, f, fqpoly_derivative(F, f));
                bad = fqpoly_deg(F, g) > 0;
            }
        } else {
            // rational singular point search over P^2(F_p)
            ExtField F = ExtField::make(p, 1);
            const PrimeField& fp = F.base();
            // evaluates c * d * X^i Y^j Z^k with one exponent lowered for partials
            auto term = [&](i64 co, i64 mult, int i, int j, int k, u64 X, u64 Y, u64 Z) {
                if (mult == 0 || i < 0 || j < 0 || k < 0) return (u64)0;
                u64 v = fp.from_int(co * mult);
                for (int a = 0; a < i; a++) v = fp.mul(v, X);
                for (int a = 0; a < j; a++) v = fp.mul(v, Y);
                for (int a = 0; a < k; a++) v = fp.mul(v, Z);
                return v;
            };
            auto singular_at = [&](u64 X, u64 Y, u64 Z) {
                u64 f = 0, fx = 0, fy = 0, fz = 0;
                for (size_t t = 0; t < 15; t++) {
                    auto [i, j, k] = kQuarticMonomials[t];
                    i64 co = c.quartic[t];
                    f = fp.add(f, term(co, 1, i, j, k, X, Y, Z));
                    fx = fp.add(fx, term(co, i, i - 1, j, k, X, Y, Z));
                    fy = fp.add(fy, term(co, j, i, j - 1, k, X, Y, Z));
                    fz = fp.add(fz, term(co, k, i, j, k - 1, X, Y, Z));
                }
                return f == 0 && fx == 0 && fy == 0 && fz == 0;
            };
            for (u64 y = 0; y < p && !bad; y++)
                for (u64 z = 0; z < p && !bad; z++) bad = singular_at(1, y, z);
            for (u64 z = 0; z < p && !bad; z++) bad = bad || singular_at(0, 1, z);
            if (!bad) bad = singular_at(0, 0, 1);
        }
        if (bad) out.push_back(p);
    }
    return out;
}

}  // namespace im3
