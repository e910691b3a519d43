#include "im3/ecmatch.hpp"

#include <algorithm>
#include <map>

namespace im3 {

EllipticAp ap_from_psi(const ImagQuadField& M, const HeckeValue& h) {
    i64 ap = h.kind == SplitKind::Split ? M.trace(h.psi) : 0;
    if ((i128)ap * ap > 4 * (i128)h.p)
        throw TheoremViolation("Hasse bound |a_p| <= 2 sqrt(p) failed at p=" + std::to_string(h.p) +
                               ": a_p=" + std::to_string(ap));
    return {h.p, ap};
}

bool ec_good_prime(const WeierstrassCurve& E, u64 p) {
    if (p == 2 || p == 3) return false;
    return E.disc4a3_27b2() % (i64)p != 0;
}

EllipticAp ec_count(const WeierstrassCurve& E, u64 p) {
    if (!ec_good_prime(E, p)) throw BadPrime("p=" + std::to_string(p) + " is bad for the model");
    PrimeField fp(p);
    // chi table over F_p
    std::vector<signed char> chi((size_t)p, -1);
    chi[0] = 0;
    for (u64 t = 1; t < p; t++) chi[(size_t)fp.mul(t, t)] = 1;
    u64 a = fp.from_int(E.A), b = fp.from_int(E.B);
    i64 s = 0;
    for (u64 x = 0; x < p; x++) {
        u64 v = fp.add(fp.mul(fp.add(fp.mul(x, x), a), x), b);  // x^3 + Ax + B
        s += chi[(size_t)v];
    }
    return {p, -s};
}

std::vector<WeierstrassCurve> find_matching_curve(
    const std::vector<EllipticAp>& aps, i64 coeff_bound, u64 prime_bound,
    const std::optional<std::vector<WeierstrassCurve>>& candidates) {
    if (aps.size() < 20) throw Unsupported("matching needs at least 20 primes of trace data");
    std::map<u64, i64> want;
    for (const auto& a : aps)
        if (a.p <= prime_bound && a.p > 3) want[a.p] = a.ap;

    // per-prime lookup tables a_p[(A mod p, B mod p)] for fast rejection
    std::vector<u64> small;
    for (const auto& [p, ap] : want) {
        if (p > 37) break;
        small.push_back(p);
    }
    std::map<u64, std::vector<i64>> tables;  // sentinel 1000 marks singular reduction
    for (u64 p : small) {
        PrimeField fp(p);
        std::vector<signed char> chi((size_t)p, -1);
        chi[0] = 0;
        for (u64 t = 1; t < p; t++) chi[(size_t)fp.mul(t, t)] = 1;
        std::vector<i64> tab((size_t)(p * p), 1000);
        for (u64 a = 0; a < p; a++)
            for (u64 b = 0; b < p; b++) {
                u64 disc = fp.add(fp.mul(fp.mul(fp.mul(4, a), a), a), fp.mul(fp.mul(27, b), b));
                if (disc == 0) continue;
                i64 s = 0;
                for (u64 x = 0; x < p; x++)
                    s += chi[(size_t)fp.add(fp.mul(fp.add(fp.mul(x, x), a), x), b)];
                tab[(size_t)(a * p + b)] = -s;
            }
        tables[p] = std::move(tab);
    }

    std::vector<WeierstrassCurve> survivors;
    auto consider = [&](const WeierstrassCurve& E) {
        if (E.disc4a3_27b2() == 0) return;
        bool alive = true;
        for (u64 p : small) {
            u64 a = ((E.A % (i64)p) + (i64)p) % (i64)p;
            u64 b = ((E.B % (i64)p) + (i64)p) % (i64)p;
            i64 tap = tables[p][(size_t)(a * p + b)];
            if (tap == 1000) continue;  // singular reduction: not a common good prime
            if (tap != want[p]) { alive = false; break; }
        }
        if (!alive) return;
        for (const auto& [p, ap] : want) {
            if (!ec_good_prime(E, p)) continue;
            if (ec_count(E, p).ap != ap) { alive = false; break; }
        }
        if (alive) survivors.push_back(E);
    };
    if (candidates) {
        for (const auto& E : *candidates) consider(E);
    } else {
        for (i64 A = -coeff_bound; A <= coeff_bound; A++)
            for (i64 B = -coeff_bound; B <= coeff_bound; B++) consider({A, B});
    }
    std::sort(survivors.begin(), survivors.end(), [](const WeierstrassCurve& a, const WeierstrassCurve& b) {
        i64 sa = std::abs(a.A) + std::abs(a.B), sb = std::abs(b.A) + std::abs(b.B);
        if (sa != sb) return sa < sb;
        if (a.A != b.A) return a.A < b.A;
        return a.B < b.B;
    });
    return survivors;
}

}  // namespace im3
