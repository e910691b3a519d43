#include "im3/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <json.hpp>

namespace im3 {

using nlohmann::json;

static i64 now_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<SplitFactorization> split_cubic_factor_all(const LPolynomial& L,
                                                       const ImagQuadField& M) {
    try {
        return {split_cubic_factor(L, M)};
    } catch (const MultipleFactorsFound&) {
        // re-run the triple scan, keeping every verified pair
    } catch (const NoFactorFound&) {
        return {};
    }
    auto roots = evaluate_roots(L);
    std::vector<CubicFactor> verified;
    auto embed_round = [&](std::complex<double> z) -> std::optional<QuadInt> {
        auto [wre, wim] = M.embed({0, 1});
        double y = std::nearbyint(z.imag() / wim);
        double x = std::nearbyint(z.real() - (z.imag() / wim) * wre);
        if (std::abs(x) > 4.0e18 || std::abs(y) > 4.0e18) return std::nullopt;
        return QuadInt{(i64)x, (i64)y};
    };
    for (int mask = 0; mask < (1 << 6); mask++) {
        if (__builtin_popcount((unsigned)mask) != 3) continue;
        std::vector<std::complex<double>> sel;
        for (int i = 0; i < 6; i++)
            if (mask & (1 << i)) sel.push_back(roots[(size_t)i]);
        auto u = embed_round(sel[0] + sel[1] + sel[2]);
        auto v = embed_round(sel[0] * sel[1] + sel[0] * sel[2] + sel[1] * sel[2]);
        auto w = embed_round(sel[0] * sel[1] * sel[2]);
        if (!u || !v || !w) continue;
        CubicFactor cand{*u, *v, *w};
        if (!verify_factorization(M, L, cand)) continue;
        if (std::find(verified.begin(), verified.end(), cand) == verified.end())
            verified.push_back(cand);
    }
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
    // deterministic order: by (w.y, w.x) of the canonical member, descending
    std::sort(pairs.begin(), pairs.end(), [](const SplitFactorization& a, const SplitFactorization& b) {
        if (a.canonical.w.y != b.canonical.w.y) return a.canonical.w.y > b.canonical.w.y;
        return a.canonical.w.x > b.canonical.w.x;
    });
    return pairs;
}

PrimeRecord analyze_prime(const CurveSpec& spec, const ImagQuadField& M, u64 p, bool shortcut) {
    PrimeRecord r;
    r.p = p;
    i64 t0 = now_us();
    auto st = M.split_type(p);
    r.kind = st.kind;
    try {
        if (st.kind == SplitKind::Ramified) {
            PointCounts pc = count_triple(spec.model, p);
            r.n1 = pc.n1;
            r.n2 = pc.n2;
            r.n3 = pc.n3;
            r.L = lpoly_from_counts(pc);
            r.checks["ramified"] = "skip";
        } else if (st.kind == SplitKind::Inert) {
            if (shortcut) {
                auto [n1, n2] = count_pair(spec.model, p);
                r.n1 = n1;
                r.n2 = n2;
                r.L = shortcut_inert(p, n1, n2);  // throws S1NonZero on violation
                r.checks["s1_zero"] = "pass";
            } else {
                PointCounts pc = count_triple(spec.model, p);
                r.n1 = pc.n1;
                r.n2 = pc.n2;
                r.n3 = pc.n3;
                r.L = lpoly_from_counts(pc);
                r.checks["s1_zero"] = r.L->a1 == 0 ? "pass" : "fail";
            }
            InertFactorization f = check_inert(*r.L);  // a1 = a3 = 0, bound, exact product
            r.t = f.t;
            r.checks["inert_shape"] = "pass";
            r.checks["inert_bound"] = "pass";
            r.checks["inert_product"] = "pass";
            HeckeValue hv = extract_psi(M, f);
            r.psi = hv.psi;
            EllipticAp ap = ap_from_psi(M, hv);
            r.ap = ap.ap;
            r.checks["ap_inert_zero"] = ap.ap == 0 ? "pass" : "fail";
            r.checks["hasse"] = "pass";
        } else {
            PointCounts pc = count_triple(spec.model, p);
            r.n1 = pc.n1;
            r.n2 = pc.n2;
            r.n3 = pc.n3;
            r.L = lpoly_from_counts(pc);
            auto pairs = split_cubic_factor_all(*r.L, M);
            if (pairs.empty())
                throw NoFactorFound("p=" + std::to_string(p) + " for " + spec.model.name);
            // exact polynomial factorizations whose w is not divisible by p are
            // accidental (e.g. w = pi^3 on degenerate primes); the character
            // pathway only sees the Tate-twist-compatible pairs
            int spurious = 0;
            for (const auto& pr : pairs) {
                HeckeValue hv{p, SplitKind::Split, {0, 0}};
                try {
                    hv = extract_psi(M, pr.canonical, p);
                } catch (const TheoremViolation&) {
                    spurious++;
                    continue;
                }
                if (!conjugation_check(M, pr.canonical, pr.conjugate))
                    throw TheoremViolation("conjugation check failed at p=" + std::to_string(p));
                HeckeValue hvc = extract_psi(M, pr.conjugate, p);
                if (!conjugation_check(M, hv, hvc))
                    throw TheoremViolation("conjugate psi mismatch at p=" + std::to_string(p));
                if (std::find(r.psi_candidates.begin(), r.psi_candidates.end(), hv.psi) ==
                    r.psi_candidates.end())
                    r.psi_candidates.push_back(hv.psi);
            }
            if (r.psi_candidates.empty())
                throw TheoremViolation("no factor pair with p | w at split p=" + std::to_string(p) +
                                       " (NonDivisible)");
            r.degenerate = r.psi_candidates.size() > 1;
            if (spurious > 0) r.checks["spurious_factors"] = std::to_string(spurious);
            r.psi = r.psi_candidates.front();
            r.checks["factor"] = "pass";
            r.checks["psi_norm"] = "pass";
            r.checks["conjugation"] = "pass";
            if (r.degenerate) r.checks["degenerate"] = "flagged";
            HeckeValue hv{p, SplitKind::Split, *r.psi};
            EllipticAp ap = ap_from_psi(M, hv);
            r.ap = ap.ap;
            r.checks["hasse"] = "pass";
        }
    } catch (const TheoremViolation& e) {
        r.violations.push_back(e.what());
        r.checks["violation"] = "fail";
    } catch (const Error& e) {
        r.violations.push_back(std::string("pipeline error: ") + e.what());
        r.checks["violation"] = "fail";
    }
    r.us = now_us() - t0;
    return r;
}

int default_thread_count() {
    if (const char* env = std::getenv("IM3_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? (int)hc : 1;
}

RunResult run_curve(const CurveSpec& spec, const RunOptions& opt) {
    if (!spec.model.counting_supported())
        throw Unsupported("y^4 models support only the signature analyzer, not point counts");
    if (opt.primes_up_to >= (1ULL << 20))
        throw Unsupported("prime bound too large for 64-bit point counts");
    std::vector<u64> primes;
    for (u64 p = 2; p <= opt.primes_up_to; p++)
        if (is_prime(p) && !spec.model.is_bad_prime(p)) primes.push_back(p);

    ImagQuadField M(spec.d);
    RunResult rr;
    rr.records.resize(primes.size());
    int nt = opt.threads > 0 ? opt.threads : default_thread_count();
    nt = std::min<int>(nt, (int)primes.size() > 0 ? (int)primes.size() : 1);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    auto work = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= primes.size()) break;
            rr.records[i] = analyze_prime(spec, M, primes[i], opt.shortcut);
        }
    };
    for (int t = 1; t < nt; t++) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (const auto& r : rr.records) rr.violation_count += (i64)r.violations.size();
    return rr;
}

static const char* kind_str(SplitKind k) {
    switch (k) {
        case SplitKind::Split: return "split";
        case SplitKind::Inert: return "inert";
        default: return "ramified";
    }
}

std::string header_jsonl(const CurveSpec& spec, const RunOptions& opt) {
    json h;
    h["format"] = 1;
    h["curve"] = spec.model.name;
    h["d"] = spec.d;
    h["primes_up_to"] = opt.primes_up_to;
    h["shortcut"] = opt.shortcut;
    return h.dump();
}

std::string record_to_jsonl(const CurveSpec& spec, const PrimeRecord& r) {
    json j;
    j["p"] = r.p;
    j["split_type"] = kind_str(r.kind);
    j["n1"] = r.n1;
    j["n2"] = r.n2;
    if (r.n3) j["n3"] = *r.n3;
    if (r.L) {
        j["a1"] = r.L->a1;
        j["a2"] = r.L->a2;
        j["a3"] = r.L->a3;
    }
    if (r.t) j["t"] = *r.t;
    if (r.psi) j["psi"] = {r.psi->x, r.psi->y, spec.d};
    if (r.degenerate) {
        json cands = json::array();
        for (const auto& c : r.psi_candidates) cands.push_back({c.x, c.y, spec.d});
        j["psi_candidates"] = cands;
    }
    if (r.ap) j["ap"] = *r.ap;
    j["checks"] = r.checks;
    if (!r.violations.empty()) j["violations"] = r.violations;
    j["us"] = r.us;
    return j.dump();
}

std::string run_to_jsonl(const CurveSpec& spec, const RunOptions& opt, const RunResult& rr) {
    std::string out = header_jsonl(spec, opt) + "\n";
    for (const auto& r : rr.records) out += record_to_jsonl(spec, r) + "\n";
    return out;
}

ApData collect_aps(const RunResult& rr, const ImagQuadField& M) {
    ApData out;
    for (const auto& r : rr.records) {
        if (!r.ap || !r.violations.empty()) continue;
        if (r.kind == SplitKind::Ramified) continue;
        if (r.degenerate) {
            std::vector<i64> cands;
            for (const auto& psi : r.psi_candidates) cands.push_back(M.trace(psi));
            out.ambiguous.push_back({r.p, cands});
        } else {
            out.exact.push_back({r.p, *r.ap});
        }
    }
    return out;
}

std::vector<HeckeValue> collect_split_psis(const RunResult& rr, bool include_degenerate) {
    std::vector<HeckeValue> out;
    for (const auto& r : rr.records) {
        if (r.kind != SplitKind::Split || !r.psi || !r.violations.empty()) continue;
        if (r.degenerate && !include_degenerate) continue;
        out.push_back({r.p, SplitKind::Split, *r.psi});
    }
    return out;
}

BenchResult bench_curve(const CurveSpec& spec, u64 primes_up_to) {
    ImagQuadField M(spec.d);
    BenchResult out;
    i64 sum_full = 0, sum_short = 0;
    for (u64 p = 2; p <= primes_up_to; p++) {
        if (!is_prime(p) || spec.model.is_bad_prime(p)) continue;
        if (M.split_type(p).kind != SplitKind::Inert) continue;
        i64 t0 = now_us();
        PointCounts pc = count_triple(spec.model, p);
        LPolynomial full = lpoly_from_counts(pc);
        check_inert(full);
        i64 t1 = now_us();
        ShortcutResult fast = shortcut_pipeline(spec.model, M, p);
        if (!(full == fast.L))
            throw TheoremViolation("shortcut and full L-polynomials differ at p=" + std::to_string(p));
        out.rows.push_back({p, t1 - t0, fast.us});
        sum_full += t1 - t0;
        sum_short += fast.us;
    }
    out.aggregate_ratio = sum_short > 0 ? (double)sum_full / (double)sum_short : 0.0;
    return out;
}

std::string bench_to_csv(const BenchResult& b) {
    std::string out = "p,full_us,shortcut_us,ratio\n";
    for (const auto& r : b.rows) {
        double ratio = r.shortcut_us > 0 ? (double)r.full_us / (double)r.shortcut_us : 0.0;
        char buf[128];
        snprintf(buf, sizeof(buf), "%llu,%lld,%lld,%.2f\n", (unsigned long long)r.p,
                 (long long)r.full_us, (long long)r.shortcut_us, ratio);
        out += buf;
    }
    char buf[128];
    snprintf(buf, sizeof(buf), "aggregate,,,%.2f\n", b.aggregate_ratio);
    out += buf;
    return out;
}

}  // namespace im3
