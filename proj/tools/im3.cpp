#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "im3/runner.hpp"

using namespace im3;
using nlohmann::json;

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static int cmd_run(const std::string& spec_path, u64 primes_up_to, const std::string& shortcut,
                   const std::string& out_path) {
    CurveSpec spec = load_curve_spec(spec_path);
    RunOptions opt;
    opt.primes_up_to = primes_up_to;
    opt.shortcut = shortcut == "on";
    RunResult rr = run_curve(spec, opt);
    std::string text = run_to_jsonl(spec, opt, rr);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    json summary;
    summary["curve"] = spec.model.name;
    summary["records"] = rr.records.size();
    summary["violations"] = rr.violation_count;
    std::cerr << summary.dump() << "\n";
    return rr.violation_count == 0 ? 0 : 1;
}

static int cmd_verify(const std::string& spec_path, const std::string& golden_path) {
    CurveSpec spec = load_curve_spec(spec_path);
    std::string golden = slurp(golden_path);
    // regenerate with the parameters of the golden header
    json h = json::parse(golden.substr(0, golden.find('\n')));
    RunOptions opt;
    opt.primes_up_to = h.at("primes_up_to").get<u64>();
    opt.shortcut = h.value("shortcut", false);
    RunResult rr = run_curve(spec, opt);
    std::string got = run_to_jsonl(spec, opt, rr);
    VerifyResult v = compare_record_streams(got, golden);
    std::cout << (v.identical ? "identical" : v.report) << "\n";
    return v.identical ? 0 : 1;
}

static int cmd_bench(const std::string& spec_path, u64 primes_up_to) {
    CurveSpec spec = load_curve_spec(spec_path);
    BenchResult b = bench_curve(spec, primes_up_to);
    if (b.rows.empty()) std::cerr << "warning: no inert good primes up to the bound\n";
    std::cout << bench_to_csv(b);
    return 0;
}

static int cmd_signature(const std::string& spec_path) {
    CurveSpec spec = load_curve_spec(spec_path);
    if (!spec.automorphism) {
        std::cerr << "error: spec has no automorphism field\n";
        return 1;
    }
    SignatureReport rep = act(*spec.automorphism, spec.model);
    std::cout << "eigenvalues: " << rep.eigenvalues[0].str() << ", " << rep.eigenvalues[1].str()
              << ", " << rep.eigenvalues[2].str() << "\n";
    if (rep.signature)
        std::cout << "signature: (" << rep.signature->first << "," << rep.signature->second
                  << ")\n";
    else
        std::cout << "signature: undefined\n";
    std::cout << "unital: " << (rep.unital ? "true" : "false") << "\n";
    std::cout << "generated algebra: " << rep.generated_algebra << "\n";
    return 0;
}

static int cmd_classnum(i64 disc, bool enumerate_h1, i64 bound) {
    if (enumerate_h1) {
        auto discs = class_number_one_discs(bound);
        for (i64 D : discs) std::cout << D << ",1\n";
        std::cout << "total," << discs.size() << "\n";
        return 0;
    }
    auto r = class_number(disc);
    std::cout << "D," << r.D << "\nh," << r.h << "\n";
    for (const auto& f : r.forms)
        std::cout << "form," << f.a << "," << f.b << "," << f.c << "\n";
    return 0;
}

static int cmd_match_ec(const std::string& spec_path, i64 coeff_bound, u64 prime_bound,
                        const std::string& candidates_path) {
    CurveSpec spec = load_curve_spec(spec_path);
    RunOptions opt;
    opt.primes_up_to = prime_bound;
    RunResult rr = run_curve(spec, opt);
    if (rr.violation_count > 0) {
        std::cerr << "error: pipeline reported theorem violations; matching aborted\n";
        return 1;
    }
    ImagQuadField M(spec.d);
    ApData aps = collect_aps(rr, M);
    std::optional<std::vector<WeierstrassCurve>> cands;
    if (!candidates_path.empty()) {
        std::vector<WeierstrassCurve> v;
        std::istringstream in(slurp(candidates_path));
        i64 A, B;
        while (in >> A >> B) v.push_back({A, B});
        cands = v;
    }
    auto survivors = find_matching_curve(aps.exact, coeff_bound, prime_bound, cands);
    // degenerate primes: keep only survivors matching one of the candidate traces
    std::vector<WeierstrassCurve> kept;
    for (const auto& E : survivors) {
        bool ok = true;
        for (const auto& [p, cs] : aps.ambiguous) {
            if (!ec_good_prime(E, p)) continue;
            i64 a = ec_count(E, p).ap;
            if (std::find(cs.begin(), cs.end(), a) == cs.end()) { ok = false; break; }
        }
        if (ok) kept.push_back(E);
    }
    if (kept.empty()) {
        std::cout << "no matching curve within the bounds\n";
        return 0;
    }
    for (const auto& E : kept) std::cout << E.A << " " << E.B << "\n";
    return 0;
}

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for abelian threefolds with imaginary multiplication"};
    app.require_subcommand(1);

    std::string spec_path, out_path, golden_path, candidates_path, shortcut = "off";
    u64 primes_up_to = 300;
    i64 disc = 0, coeff_bound = 200, bound = 200;
    u64 prime_bound = 300;
    bool enumerate_h1 = false;

    auto* run = app.add_subcommand("run", "verify every identity prime by prime");
    run->add_option("spec", spec_path)->required();
    run->add_option("--primes-up-to", primes_up_to);
    run->add_option("--shortcut", shortcut)->check(CLI::IsMember({"on", "off"}));
    run->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "compare a regenerated run against a golden file");
    verify->add_option("spec", spec_path)->required();
    verify->add_option("golden", golden_path)->required();

    auto* bench = app.add_subcommand("bench", "time the full path against the inert shortcut");
    bench->add_option("spec", spec_path)->required();
    bench->add_option("--primes-up-to", primes_up_to);

    auto* sig = app.add_subcommand("signature", "differential signature of the automorphism");
    sig->add_option("spec", spec_path)->required();

    auto* cls = app.add_subcommand("classnum", "class numbers via reduced forms");
    auto* dopt = cls->add_option("--disc", disc);
    cls->add_flag("--enumerate-h1", enumerate_h1);
    cls->add_option("--bound", bound);

    auto* match = app.add_subcommand("match-ec", "search for the associated elliptic curve");
    match->add_option("spec", spec_path)->required();
    match->add_option("--coeff-bound", coeff_bound);
    match->add_option("--prime-bound", prime_bound);
    match->add_option("--candidates", candidates_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(spec_path, primes_up_to, shortcut, out_path);
        if (verify->parsed()) return cmd_verify(spec_path, golden_path);
        if (bench->parsed()) return cmd_bench(spec_path, primes_up_to);
        if (sig->parsed()) return cmd_signature(spec_path);
        if (cls->parsed()) {
            if (!enumerate_h1 && dopt->count() == 0) {
                std::cerr << "error: give --disc D or --enumerate-h1 --bound B\n";
                return 1;
            }
            return cmd_classnum(disc, enumerate_h1, bound);
        }
        if (match->parsed())
            return cmd_match_ec(spec_path, coeff_bound, prime_bound, candidates_path);
    } catch (const Error& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
