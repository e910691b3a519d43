// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "im3/runner.hpp"

using namespace im3;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

static double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

static std::string g_data;
static int g_failures = 0;

static void report(int id, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " - " << detail
              << std::endl;
    if (!pass) g_failures++;
}

static CurveSpec load(const std::string& name) {
    return load_curve_spec(g_data + "/curves/" + name + ".json");
}

// ---- criterion 1: oracle equivalence over all fields with <= 10^4 elements
static void criterion1(const std::vector<CurveSpec>& specs) {
    auto t0 = Clock::now();
    struct Job {
        const CurveModel* c;
        u64 p;
        int k;
    };
    std::vector<Job> jobs;
    for (const auto& s : specs) {
        for (u64 p = 2; p <= 9973; p++) {
            if (!is_prime(p) || s.model.is_bad_prime(p)) continue;
            if (s.model.family == CurveFamily::Hyperelliptic && p == 2) continue;
            jobs.push_back({&s.model, p, 1});
            if (p <= 97) jobs.push_back({&s.model, p, 2});
            if (p <= 19) jobs.push_back({&s.model, p, 3});
        }
    }
    std::atomic<size_t> next{0};
    std::atomic<i64> mismatches{0};
    auto work = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const Job& j = jobs[i];
            ExtField F = ExtField::make(j.p, j.k);
            if (count_points(*j.c, F) != brute_force_oracle(*j.c, F)) mismatches++;
        }
    };
    int nt = default_thread_count();
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; t++) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    double el = secs_since(t0);
    bool pass = mismatches == 0 && el < 60.0;
    std::ostringstream d;
    d << jobs.size() << " fields, " << mismatches << " mismatches, " << el << " s (< 60 s required)";
    report(1, pass, d.str());
}

// ---- criteria 2, 3, 4, 6 share the full p <= 300 records
struct CurveRun {
    CurveSpec spec;
    RunResult rr;
};

static void criterion2(const std::vector<CurveRun>& runs, double shared_secs) {
    i64 inert_total = 0, bad = 0;
    for (const auto& cr : runs) {
        for (const auto& r : cr.rr.records) {
            if (r.kind != SplitKind::Inert) continue;
            inert_total++;
            bool ok = r.violations.empty() && r.n3.has_value() && r.L && r.L->a1 == 0 &&
                      r.L->a3 == 0 && r.t && std::llabs(*r.t) <= 2 * (i64)r.p;
            if (ok) {
                // re-verify the exact product identity from the record fields
                try {
                    check_inert(*r.L);
                } catch (const Error&) {
                    ok = false;
                }
            }
            if (!ok) bad++;
        }
    }
    std::ostringstream d;
    d << inert_total << " inert primes across 4 curves, " << bad << " violations; shared count time "
      << shared_secs << " s (target < 900 s)";
    report(2, inert_total > 0 && bad == 0 && shared_secs < 900.0, d.str());
}

static void criterion3(const std::vector<CurveRun>& runs) {
    i64 split_total = 0, bad = 0, degenerate = 0;
    for (const auto& cr : runs) {
        ImagQuadField M(cr.spec.d);
        for (const auto& r : cr.rr.records) {
            if (r.kind != SplitKind::Split) continue;
            split_total++;
            bool ok = r.violations.empty() && r.psi && !r.psi_candidates.empty();
            if (ok) {
                for (const auto& psi : r.psi_candidates) {
                    QuadInt w{(i64)r.p * psi.x, (i64)r.p * psi.y};
                    ok = ok && M.norm(w) == (i64)r.p * (i64)r.p * (i64)r.p;     // Nm(w) = p^3
                    ok = ok && w.x % (i64)r.p == 0 && w.y % (i64)r.p == 0;      // p | w
                    ok = ok && M.norm(psi) == (i64)r.p;                          // psi psibar = p
                }
                ok = ok && r.checks.count("conjugation") && r.checks.at("conjugation") == "pass";
            }
            if (r.degenerate) degenerate++;
            if (!ok) bad++;
        }
    }
    std::ostringstream d;
    d << split_total << " split primes, " << bad << " violations, " << degenerate
      << " degenerate primes flagged (every candidate pair verified; uniqueness waived there by "
         "the MultipleFactorsFound design decision)";
    report(3, split_total > 0 && bad == 0, d.str());
}

static void criterion4(const std::vector<CurveRun>& runs) {
    i64 checked = 0, bad = 0;
    for (const auto& cr : runs) {
        ImagQuadField M(cr.spec.d);
        for (const auto& r : cr.rr.records) {
            if (r.kind == SplitKind::Ramified || !r.ap) continue;
            checked++;
            if (r.kind == SplitKind::Inert && *r.ap != 0) bad++;
            if (r.kind == SplitKind::Split) {
                if ((i128)(*r.ap) * (*r.ap) > 4 * (i128)r.p) bad++;
                for (const auto& psi : r.psi_candidates)
                    if ((i128)M.trace(psi) * M.trace(psi) > 4 * (i128)r.p) bad++;
            }
        }
    }
    std::ostringstream d;
    d << checked << " primes checked (a_p = 0 inert, Hasse at split), " << bad << " violations";
    report(4, checked > 0 && bad == 0, d.str());
}

static const CurveRun* find_run(const std::vector<CurveRun>& runs, const std::string& name) {
    for (const auto& cr : runs)
        if (cr.spec.model.name == name) return &cr;
    return nullptr;
}

static bool survivor_reproduces(const CurveRun& cr, const WeierstrassCurve& E) {
    ImagQuadField M(cr.spec.d);
    for (const auto& r : cr.rr.records) {
        if (r.kind == SplitKind::Ramified || !r.ap) continue;
        if (!ec_good_prime(E, r.p)) continue;
        i64 a = ec_count(E, r.p).ap;
        if (r.degenerate) {
            bool any = false;
            for (const auto& psi : r.psi_candidates) any = any || M.trace(psi) == a;
            if (!any) return false;
        } else if (a != *r.ap) {
            return false;
        }
    }
    return true;
}

static void criterion5(const std::vector<CurveRun>& runs) {
    const bool write_golden = std::getenv("IM3_WRITE_GOLDEN") != nullptr;
    json golden;
    if (!write_golden) {
        std::ifstream in(g_data + "/golden/theorem11.json");
        if (!in) {
            report(5, false, "golden artifact data/golden/theorem11.json is missing");
            return;
        }
        in >> golden;
    }
    json written;
    bool pass = true;
    std::ostringstream d;
    for (const std::string name : {"d1", "d3", "d2", "d7"}) {
        const CurveRun* cr = find_run(runs, name);
        if (!cr) { pass = false; continue; }
        ImagQuadField M(cr->spec.d);
        ApData aps = collect_aps(cr->rr, M);
        // matching search (required nonempty for d1/d3; outcome recorded for d2/d7)
        std::vector<WeierstrassCurve> kept;
        if (aps.exact.size() >= 20) {
            auto survivors = find_matching_curve(aps.exact, 200, 300);
            for (const auto& E : survivors) {
                bool ok = true;
                for (const auto& [p, cs] : aps.ambiguous) {
                    if (!ec_good_prime(E, p)) continue;
                    i64 a = ec_count(E, p).ap;
                    if (std::find(cs.begin(), cs.end(), a) == cs.end()) { ok = false; break; }
                }
                if (ok) kept.push_back(E);
            }
        }
        json jsurv = json::array();
        for (const auto& E : kept) jsurv.push_back({E.A, E.B});

        // when the stated box is empty for a matching-required curve, also run
        // an extended search so the existence statement itself is still
        // exercised and recorded (the criterion verdict keeps the stated box)
        std::vector<WeierstrassCurve> kept_ext;
        const i64 kExtendedBound = 4000;
        if ((name == "d1" || name == "d3") && kept.empty() && aps.exact.size() >= 20) {
            auto survivors = find_matching_curve(aps.exact, kExtendedBound, 300);
            for (const auto& E : survivors) {
                bool ok = true;
                for (const auto& [p, cs] : aps.ambiguous) {
                    if (!ec_good_prime(E, p)) continue;
                    i64 a = ec_count(E, p).ap;
                    if (std::find(cs.begin(), cs.end(), a) == cs.end()) { ok = false; break; }
                }
                if (ok) kept_ext.push_back(E);
            }
        }
        json jext = json::array();
        for (const auto& E : kept_ext) jext.push_back({E.A, E.B});

        // character consistency
        auto psis = collect_split_psis(cr->rr);
        CharacterConsistencyReport rep;
        bool char_ok = false;
        i64 modulus = 0;
        if ((i64)psis.size() >= 10) {
            rep = character_consistency(M, psis, 1024);
            char_ok = rep.consistent && rep.modulus <= 1024;
            modulus = rep.modulus;
        }

        bool match_golden, modulus_golden;
        if (write_golden) {
            written[name]["survivors"] = jsurv;
            written[name]["character_modulus"] = modulus;
            if (!kept_ext.empty()) {
                written[name]["survivors_extended"] = jext;
                written[name]["extended_bound"] = kExtendedBound;
            }
            match_golden = modulus_golden = true;
        } else {
            match_golden = golden.contains(name) && golden[name]["survivors"] == jsurv;
            modulus_golden = golden.contains(name) && golden[name]["character_modulus"] == modulus;
            if (!kept_ext.empty())
                match_golden = match_golden && golden[name].contains("survivors_extended") &&
                               golden[name]["survivors_extended"] == jext;
        }

        bool reproduced = true;
        for (const auto& E : kept) reproduced = reproduced && survivor_reproduces(*cr, E);
        bool reproduced_ext = true;
        for (const auto& E : kept_ext) reproduced_ext = reproduced_ext && survivor_reproduces(*cr, E);

        bool this_ok;
        if (name == "d1" || name == "d3")
            this_ok = !kept.empty() && reproduced && match_golden;
        else
            this_ok = char_ok && match_golden && modulus_golden;
        pass = pass && this_ok;
        d << name << ": survivors=" << kept.size() << " charN=" << modulus;
        if (!kept_ext.empty())
            d << " [stated box empty; extended bound " << kExtendedBound << " finds "
              << kept_ext.size() << " survivor(s) (" << (reproduced_ext ? "reproduce" : "MISMATCH")
              << " every a_p)]";
        d << (this_ok ? " ok; " : " FAIL; ");
    }
    if (write_golden) {
        std::ofstream out(g_data + "/golden/theorem11.json");
        out << written.dump(2) << "\n";
        d << "[golden written]";
    }
    report(5, pass, d.str());
}

static void criterion6(const std::vector<CurveRun>& runs) {
    i64 checked = 0, bad = 0;
    for (const auto& cr : runs) {
        for (const auto& r : cr.rr.records) {
            if (r.kind != SplitKind::Inert || !r.L) continue;
            checked++;
            try {
                LPolynomial s = shortcut_inert(r.p, r.n1, r.n2);
                if (!(s == *r.L)) bad++;
            } catch (const Error&) {
                bad++;
            }
        }
    }
    BenchResult b = bench_curve(find_run(runs, "d1")->spec, 150);
    std::ostringstream d;
    d << checked << " inert primes shortcut==full with " << bad
      << " mismatches; bench aggregate speedup x" << b.aggregate_ratio << " (> 1.3 required)";
    report(6, checked > 0 && bad == 0 && b.aggregate_ratio > 1.3, d.str());
}

static void criterion7() {
    bool pass = true;
    std::ostringstream d;
    try {
        CurveSpec e29 = load("ex29");
        SignatureReport r = act(*e29.automorphism, e29.model);
        bool ok = r.unital && r.signature && r.signature->first == 2 && r.signature->second == 1 &&
                  r.eigenvalues[0] == RootOfUnity::make(1, 4) &&
                  r.eigenvalues[1] == RootOfUnity::make(3, 4) &&
                  r.eigenvalues[2] == RootOfUnity::make(1, 4);
        pass = pass && ok;
        d << "ex29 (i,-i,i)/(2,1)/unital " << (ok ? "ok" : "FAIL") << "; ";

        CurveSpec e24 = load("ex24");
        SignatureReport r24 = act(*e24.automorphism, e24.model);
        pass = pass && !r24.unital;
        d << "ex24 non-unital " << (!r24.unital ? "ok" : "FAIL") << "; ";

        CurveSpec e25 = load("ex25");
        SignatureReport r25 = act(*e25.automorphism, e25.model);
        pass = pass && !r25.unital;
        d << "ex25 non-unital " << (!r25.unital ? "ok" : "FAIL");
    } catch (const Error& e) {
        pass = false;
        d << "exception: " << e.what();
    }
    report(7, pass, d.str());
}

static void criterion8() {
    auto t0 = Clock::now();
    bool pass = true;
    for (i64 D : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) pass = pass && class_number(D).h == 1;
    auto discs = class_number_one_discs(200);
    pass = pass && discs.size() == 9;
    // Corollary: each Table-1 field has class number 1 (K = Q forces h <= 1)
    for (i64 d : {1, 2, 3, 7}) pass = pass && class_number(ImagQuadField(d).disc()).h == 1;
    double el = secs_since(t0);
    pass = pass && el < 1.0;
    std::ostringstream dd;
    dd << "nine h=1 fields, enumeration exact, Table-1 fields h=1, " << el << " s (< 1 s required)";
    report(8, pass, dd.str());
}

static void criterion9(const std::vector<CurveRun>& runs) {
    bool pass = true;
    std::ostringstream d;
    // (a) wrong-field spec: theorem violations and nonzero exit
    const char* bin = std::getenv("IM3_CLI_BIN");
    if (bin) {
        std::string cmd = std::string(bin) + " run " + g_data +
                          "/curves/negative_d5_on_d1.json --primes-up-to 60 > acceptance_neg.tmp 2>&1";
        int rc = std::system(cmd.c_str());
        bool ok = WEXITSTATUS(rc) != 0;
        pass = pass && ok;
        d << "wrong-field spec nonzero exit " << (ok ? "ok" : "FAIL") << "; ";
    } else {
        pass = false;
        d << "IM3_CLI_BIN unset; ";
    }
    // (b) unit-twisted factor fails conjugation_check
    {
        ImagQuadField M(1);
        auto sf = split_cubic_factor({5, 0, 0, -10}, M);
        CubicFactor twisted = sf.conjugate;
        twisted.w = M.mul(twisted.w, QuadInt{0, 1});
        bool ok = !conjugation_check(M, sf.canonical, twisted);
        pass = pass && ok;
        d << "unit twist rejected " << (ok ? "ok" : "FAIL") << "; ";
    }
    // (c) randomized traces match no curve
    {
        std::mt19937_64 rng(97);
        std::vector<EllipticAp> aps;
        for (u64 p = 5; p <= 200; p++) {
            if (!is_prime(p)) continue;
            if (p % 4 == 3) aps.push_back({p, 0});
            else {
                i64 b = (i64)std::sqrt(2.0 * (double)p);
                aps.push_back({p, (i64)(rng() % (u64)(2 * b + 1)) - b});
            }
        }
        bool ok = find_matching_curve(aps, 25, 200).empty();
        pass = pass && ok;
        d << "random traces unmatched " << (ok ? "ok" : "FAIL");
    }
    report(9, pass, d.str());
    (void)runs;
}

int main() {
    const char* data = std::getenv("IM3_DATA_DIR");
    g_data = data ? data : "data";
    auto t0 = Clock::now();

    std::vector<CurveSpec> specs = {load("d1"), load("d2"), load("d3"), load("d7")};

    criterion1(specs);
    criterion8();
    criterion7();

    auto tshared = Clock::now();
    std::vector<CurveRun> runs;
    for (const auto& s : specs) {
        RunOptions opt;
        opt.primes_up_to = 300;
        runs.push_back({s, run_curve(s, opt)});
    }
    double shared_secs = secs_since(tshared);

    if (std::getenv("IM3_WRITE_GOLDEN")) {
        for (const auto& cr : runs) {
            RunOptions opt;
            opt.primes_up_to = 300;
            std::ofstream out(g_data + "/golden/" + cr.spec.model.name + "_p300.jsonl");
            out << run_to_jsonl(cr.spec, opt, cr.rr);
        }
    }

    criterion2(runs, shared_secs);
    criterion3(runs);
    criterion4(runs);
    criterion5(runs);
    criterion6(runs);
    criterion9(runs);

    std::cout << "acceptance total: " << (g_failures == 0 ? "PASS" : "FAIL") << " ("
              << secs_since(t0) << " s)" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
