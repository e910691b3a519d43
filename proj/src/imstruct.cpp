#include "im3/imstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace im3 {

ShortcutResult shortcut_pipeline(const CurveModel& c, const ImagQuadField& M, u64 p) {
    if (M.split_type(p).kind != SplitKind::Inert)
        throw Unsupported("shortcut_pipeline needs a prime inert in M");
    auto t0 = std::chrono::steady_clock::now();
    auto [n1, n2] = count_pair(c, p);
    LPolynomial L = shortcut_inert(p, n1, n2);  // S1NonZero propagates as a violation
    InertFactorization f = check_inert(L);
    i64 us = std::chrono::duration_cast<std::chrono::microseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    return {L, f, us};
}

InertFactorization check_inert(const LPolynomial& L) {
    i64 p = (i64)L.p;
    if (L.a1 != 0 || L.a3 != 0)
        throw TheoremViolation("inert prime p=" + std::to_string(L.p) + " has a1=" +
                               std::to_string(L.a1) + " a3=" + std::to_string(L.a3) +
                               ", expected a1=a3=0");
    i64 b = L.a2;
    i64 t = p - b;
    if (b < -p || b > 3 * p)
        throw TheoremViolation("inert bound failed at p=" + std::to_string(L.p) +
                               ": b=" + std::to_string(b) + " outside [-p, 3p]");
    // exact product identity (1 + pT^2)(1 - tT^2 + p^2 T^4) = L
    std::array<i128, 7> prod = {1,
                                0,
                                (i128)p - t,
                                0,
                                (i128)p * p - (i128)p * t,
                                0,
                                (i128)p * p * p};
    auto lc = L.coeffs();
    for (int i = 0; i < 7; i++)
        if (prod[(size_t)i] != lc[(size_t)i])
            throw TheoremViolation("inert factorization product mismatch at p=" +
                                   std::to_string(L.p));
    return InertFactorization{L.p, b, t};
}

CubicFactor conj_factor(const ImagQuadField& M, const CubicFactor& c) {
    return {M.conj(c.u), M.conj(c.v), M.conj(c.w)};
}

bool verify_factorization(const ImagQuadField& M, const LPolynomial& L, const CubicFactor& c) {
    const QuadInt u = c.u, v = c.v, w = c.w;
    const QuadInt uc = M.conj(u), vc = M.conj(v), wc = M.conj(w);
    auto lc = L.coeffs();
    QuadInt t1 = M.neg(M.add(u, uc));
    QuadInt t2 = M.add(M.add(v, vc), M.mul(u, uc));
    QuadInt t3 = M.neg(M.add(M.add(w, wc), M.add(M.mul(u, vc), M.mul(uc, v))));
    QuadInt t4 = M.add(M.add(M.mul(u, wc), M.mul(uc, w)), M.mul(v, vc));
    QuadInt t5 = M.neg(M.add(M.mul(v, wc), M.mul(vc, w)));
    QuadInt t6 = M.mul(w, wc);
    const QuadInt got[7] = {{1, 0}, t1, t2, t3, t4, t5, t6};
    for (int i = 0; i < 7; i++) {
        if (got[i].y != 0) return false;
        if ((i128)got[i].x != lc[(size_t)i]) return false;
    }
    return true;
}

static std::optional<QuadInt> round_to_lattice(const ImagQuadField& M, std::complex<double> z) {
    auto [wre, wim] = M.embed({0, 1});
    double y = z.imag() / wim;
    double x = z.real() - y * wre;
    double ry = std::nearbyint(y), rx = std::nearbyint(x);
    if (std::abs(rx) > 4.0e18 || std::abs(ry) > 4.0e18) return std::nullopt;
    return QuadInt{(i64)rx, (i64)ry};
}

SplitFactorization split_cubic_factor(const LPolynomial& L, const ImagQuadField& M) {
    auto roots = evaluate_roots(L);
    std::vector<CubicFactor> verified;
    for (int mask = 0; mask < (1 << 6); mask++) {
        if (__builtin_popcount((unsigned)mask) != 3) continue;
        std::vector<std::complex<double>> sel;
        for (int i = 0; i < 6; i++)
            if (mask & (1 << i)) sel.push_back(roots[(size_t)i]);
        std::complex<double> e1 = sel[0] + sel[1] + sel[2];
        std::complex<double> e2 = sel[0] * sel[1] + sel[0] * sel[2] + sel[1] * sel[2];
        std::complex<double> e3 = sel[0] * sel[1] * sel[2];
        auto u = round_to_lattice(M, e1);
        auto v = round_to_lattice(M, e2);
        auto w = round_to_lattice(M, e3);
        if (!u || !v || !w) continue;
        CubicFactor cand{*u, *v, *w};
        if (!verify_factorization(M, L, cand)) continue;
        if (std::find(verified.begin(), verified.end(), cand) == verified.end())
            verified.push_back(cand);
    }
    if (verified.empty())
        throw NoFactorFound("p=" + std::to_string(L.p) + " over Q(sqrt(-" + std::to_string(M.d()) +
                            ")), a=(" + std::to_string(L.a1) + "," + std::to_string(L.a2) + "," +
                            std::to_string(L.a3) + ")");
    // factors come in conjugate pairs; group and canonicalize
    std::vector<SplitFactorization> pairs;
    std::vector<bool> used(verified.size(), false);
    for (size_t i = 0; i < verified.size(); i++) {
        if (used[i]) continue;
        used[i] = true;
        CubicFactor cb = conj_factor(M, verified[i]);
        for (size_t j = i + 1; j < verified.size(); j++)
            if (!used[j] && verified[j] == cb) { used[j] = true; break; }
        const CubicFactor& a = verified[i];
        bool a_canonical = a.w.y > 0 || (a.w.y == 0 && a.w.x > 0);
        pairs.push_back(a_canonical ? SplitFactorization{a, cb} : SplitFactorization{cb, a});
    }
    if (pairs.size() > 1) {
        std::string msg = "p=" + std::to_string(L.p) + ":";
        for (const auto& pr : pairs)
            msg += " [u=" + to_string(M, pr.canonical.u) + " v=" + to_string(M, pr.canonical.v) +
                   " w=" + to_string(M, pr.canonical.w) + "]";
        throw MultipleFactorsFound(msg);
    }
    return pairs[0];
}

HeckeValue extract_psi(const ImagQuadField& M, const CubicFactor& cf, u64 p) {
    i64 ip = (i64)p;
    if (M.norm(cf.w) != ip * ip * ip)
        throw TheoremViolation("Nm(w) != p^3 at p=" + std::to_string(p));
    if (cf.w.x % ip != 0 || cf.w.y % ip != 0)
        throw TheoremViolation("p does not divide both coordinates of w at p=" + std::to_string(p) +
                               " (NonDivisible)");
    QuadInt psi = M.div_int_exact(cf.w, ip);
    if (M.norm(psi) != ip)
        throw TheoremViolation("psi * conj(psi) != p at p=" + std::to_string(p) +
                               " (NormCheckFailed)");
    return HeckeValue{p, SplitKind::Split, psi};
}

HeckeValue extract_psi(const ImagQuadField& M, const InertFactorization& f) {
    (void)M;
    i64 p = (i64)f.p;
    if (f.t < -2 * p || f.t > 2 * p)
        throw TheoremViolation("inert |t| bound failed at p=" + std::to_string(f.p));
    // the (1 + pT^2) factor pins the inert value: psi(P) = -Nm(p)
    return HeckeValue{f.p, SplitKind::Inert, {-p, 0}};
}

bool conjugation_check(const ImagQuadField& M, const CubicFactor& c, const CubicFactor& cbar) {
    return cbar.u == M.conj(c.u) && cbar.v == M.conj(c.v) && cbar.w == M.conj(c.w);
}

bool conjugation_check(const ImagQuadField& M, const HeckeValue& at_p, const HeckeValue& at_pbar) {
    if (at_p.p != at_pbar.p) return false;
    return at_pbar.psi == M.conj(at_p.psi);
}

CharacterConsistencyReport character_consistency(const ImagQuadField& M,
                                                 const std::vector<HeckeValue>& split_values,
                                                 i64 n_max) {
    if (class_number(M.disc()).h != 1)
        throw Unsupported("character consistency requires class number 1");
    if ((i64)split_values.size() < 10)
        throw Unsupported("character consistency needs at least 10 split primes, got " +
                          std::to_string(split_values.size()));
    struct Entry {
        QuadInt gen, zeta;
        u64 p;
    };
    std::vector<Entry> entries;
    for (const auto& hv : split_values) {
        if (hv.kind != SplitKind::Split) throw Unsupported("non-split value passed");
        QuadInt g = M.canonical_associate(hv.psi);
        QuadInt zeta = M.div_exact(hv.psi, g);
        if (!M.is_unit(zeta)) throw Error("psi / normalized generator is not a unit");
        entries.push_back({g, zeta, hv.p});
    }
    auto residue = [](i64 v, i64 N) { return ((v % N) + N) % N; };
    CharacterConsistencyReport rep;
    for (i64 N = 1; N <= n_max; N++) {
        std::map<std::pair<i64, i64>, QuadInt> table;
        bool ok = true;
        for (const auto& e : entries) {
            std::pair<i64, i64> key = {residue(e.gen.x, N), residue(e.gen.y, N)};
            auto it = table.find(key);
            if (it == table.end()) table.emplace(key, e.zeta);
            else if (!(it->second == e.zeta)) { ok = false; break; }
        }
        if (ok) {
            rep.modulus = N;
            rep.consistent = true;
            rep.table = std::move(table);
            return rep;
        }
    }
    std::map<std::pair<i64, i64>, QuadInt> table;
    for (const auto& e : entries) {
        std::pair<i64, i64> key = {residue(e.gen.x, n_max), residue(e.gen.y, n_max)};
        auto it = table.find(key);
        if (it == table.end()) table.emplace(key, e.zeta);
        else if (!(it->second == e.zeta))
            rep.violations.push_back("p=" + std::to_string(e.p) + ": residue (" +
                                     std::to_string(key.first) + "," + std::to_string(key.second) +
                                     ") maps to two distinct units");
    }
    rep.modulus = 0;
    rep.consistent = false;
    rep.table = std::move(table);
    return rep;
}

}  // namespace im3
