#include "im3/lpoly.hpp"

#include <algorithm>
#include <cmath>

namespace im3 {

PowerSums PowerSums::from_counts(const PointCounts& pc) {
    i64 p = (i64)pc.p;
    PowerSums s{pc.p, 0, 0, 0};
    s.s1 = p + 1 - pc.n1;
    s.s2 = p * p + 1 - pc.n2;
    s.s3 = p * p * p + 1 - pc.n3;
    for (int k = 1; k <= 3; k++) {
        i64 sk = k == 1 ? s.s1 : k == 2 ? s.s2 : s.s3;
        i128 qk = 1;
        for (int i = 0; i < k; i++) qk *= p;
        if ((i128)sk * sk > 36 * qk)
            throw BadPrime("power sum s" + std::to_string(k) + " violates the Weil bound at p=" +
                           std::to_string(pc.p));
    }
    return s;
}

static void check_coeff_bounds(const LPolynomial& L) {
    i128 p = (i128)L.p;
    if ((i128)L.a1 * L.a1 > 36 * p || (L.a2 > 15 * (i64)L.p || L.a2 < -15 * (i64)L.p) ||
        (i128)L.a3 * L.a3 > 400 * p * p * p)
        throw BadPrime("L-polynomial coefficient bound violated at p=" + std::to_string(L.p));
}

LPolynomial lpoly_from_counts(const PointCounts& pc) {
    PowerSums s = PowerSums::from_counts(pc);
    i64 a1 = -s.s1;
    i128 num2 = (i128)s.s1 * s.s1 - s.s2;
    if (num2 % 2 != 0)
        throw NonIntegralCoefficient("a2 at p=" + std::to_string(pc.p));
    i64 a2 = (i64)(num2 / 2);
    i128 num3 = (i128)s.s1 * s.s1 * s.s1 - 3 * (i128)s.s1 * s.s2 + 2 * (i128)s.s3;
    if (num3 % 6 != 0)
        throw NonIntegralCoefficient("a3 at p=" + std::to_string(pc.p));
    i64 a3 = (i64)(-(num3 / 6));
    LPolynomial L{pc.p, a1, a2, a3};
    check_coeff_bounds(L);
    return L;
}

LPolynomial shortcut_inert(u64 p, i64 n1, i64 n2) {
    i64 ip = (i64)p;
    i64 s1 = ip + 1 - n1;
    if (s1 != 0)
        throw TheoremViolation("s1 = " + std::to_string(s1) + " nonzero at inert p=" +
                               std::to_string(p) + " (S1NonZero)");
    i64 s2 = ip * ip + 1 - n2;
    if (s2 % 2 != 0)
        throw NonIntegralCoefficient("inert a2 at p=" + std::to_string(p));
    LPolynomial L{p, 0, -s2 / 2, 0};
    check_coeff_bounds(L);
    return L;
}

std::array<std::complex<double>, 6> evaluate_roots(const LPolynomial& L) {
    using cd = std::complex<double>;
    // rescale alpha = sqrt(p) * beta: the polynomial in beta is palindromic
    // with coefficients of size O(20), well conditioned at any p
    double sp = std::sqrt((double)L.p);
    double c1 = (double)L.a1 / sp;
    double c2 = (double)L.a2 / (double)L.p;
    double c3 = (double)L.a3 / (sp * (double)L.p);
    // monic: b^6 + c1 b^5 + c2 b^4 + c3 b^3 + c2 b^2 + c1 b + 1
    std::array<double, 7> c = {1.0, c1, c2, c3, c2, c1, 1.0};

    auto eval = [&](cd z, cd& deriv) {
        cd v = c[0], d = 0.0;
        for (int i = 1; i <= 6; i++) {
            d = d * z + v;
            v = v * z + c[i];
        }
        deriv = d;
        return v;
    };

    // roots of the rescaled polynomial lie on the unit circle; start outside
    // it with uneven angles so no iterate coincides with a root or a sibling
    std::array<cd, 6> z;
    for (int i = 0; i < 6; i++) {
        double th = 2.0 * M_PI * ((double)i + 0.27) / 6.0 + 0.013 * (double)i;
        double r = 1.35 + 0.03 * (double)(i % 3);
        z[i] = cd(r * std::cos(th), r * std::sin(th));
    }
    // repeated roots (they do occur: degenerate split primes) limit plain
    // Aberth to linear convergence near sqrt(eps); that accuracy is ample
    // because every downstream claim is re-verified exactly over O_M
    double worst = 1.0;
    for (int it = 0; it < 400 && worst > 1e-13; it++) {
        worst = 0.0;
        for (int i = 0; i < 6; i++) {
            cd d;
            cd v = eval(z[i], d);
            if (std::abs(v) == 0.0) continue;
            cd ratio = v / d;
            cd s = 0.0;
            for (int j = 0; j < 6; j++)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            cd delta = ratio / (1.0 - ratio * s);
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[i])));
        }
    }
    if (worst > 1e-6) throw Error("root finder did not converge");

    // scale back and order as conjugate pairs (alpha, conj(alpha))
    std::array<cd, 6> roots;
    for (int i = 0; i < 6; i++) roots[i] = z[i] * sp;
    std::sort(roots.begin(), roots.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() > b.imag();
    });
    // greedy conjugate pairing
    std::array<cd, 6> out;
    std::array<bool, 6> used{};
    int w = 0;
    for (int i = 0; i < 6; i++) {
        if (used[(size_t)i]) continue;
        used[(size_t)i] = true;
        cd a = roots[(size_t)i];
        int best = -1;
        double bd = 0;
        for (int j = i + 1; j < 6; j++) {
            if (used[(size_t)j]) continue;
            double dd = std::abs(roots[(size_t)j] - std::conj(a));
            if (best < 0 || dd < bd) { best = j; bd = dd; }
        }
        if (best < 0) throw Error("conjugate pairing failed");
        used[(size_t)best] = true;
        out[(size_t)w++] = a;
        out[(size_t)w++] = roots[(size_t)best];
    }
    return out;
}

}  // namespace im3
