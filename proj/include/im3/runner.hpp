#pragma once

#include <map>

#include "im3/ecmatch.hpp"
#include "im3/spec_io.hpp"

namespace im3 {

// Everything the pipeline established about one good prime. Self-validating:
// every verdict in `checks` is recomputable from the other fields.
struct PrimeRecord {
    u64 p = 0;
    SplitKind kind = SplitKind::Inert;
    i64 n1 = 0, n2 = 0;
    std::optional<i64> n3;  // absent on the shortcut path
    std::optional<LPolynomial> L;
    std::optional<i64> t;                  // inert: t_p = p - b
    std::optional<QuadInt> psi;            // split: canonical; inert: -p
    std::vector<QuadInt> psi_candidates;   // degenerate split primes: every verified value
    bool degenerate = false;
    std::optional<i64> ap;
    std::map<std::string, std::string> checks;  // name -> pass/fail/skip
    std::vector<std::string> violations;
    i64 us = 0;
};

struct RunOptions {
    u64 primes_up_to = 300;
    bool shortcut = false;
    int threads = 0;  // 0: IM3_THREADS or hardware concurrency
};

struct RunResult {
    std::vector<PrimeRecord> records;
    i64 violation_count = 0;
};

// All verified conjugate factor pairs of L over O_M (normally exactly one;
// several on degenerate primes).
std::vector<SplitFactorization> split_cubic_factor_all(const LPolynomial& L,
                                                       const ImagQuadField& M);

PrimeRecord analyze_prime(const CurveSpec& spec, const ImagQuadField& M, u64 p, bool shortcut);

// Records for every good prime <= primes_up_to, ascending, computed by a
// bounded worker pool.
RunResult run_curve(const CurveSpec& spec, const RunOptions& opt);

int default_thread_count();

std::string header_jsonl(const CurveSpec& spec, const RunOptions& opt);
std::string record_to_jsonl(const CurveSpec& spec, const PrimeRecord& r);
std::string run_to_jsonl(const CurveSpec& spec, const RunOptions& opt, const RunResult& rr);

// Exact trace constraints (unambiguous primes) and candidate sets
// (degenerate primes) for the matching search.
struct ApData {
    std::vector<EllipticAp> exact;
    std::vector<std::pair<u64, std::vector<i64>>> ambiguous;
};
ApData collect_aps(const RunResult& rr, const ImagQuadField& M);
std::vector<HeckeValue> collect_split_psis(const RunResult& rr, bool include_degenerate = false);

struct BenchRow {
    u64 p;
    i64 full_us, shortcut_us;
};
struct BenchResult {
    std::vector<BenchRow> rows;
    double aggregate_ratio = 0.0;  // sum(full) / sum(shortcut)
};

// Times the full N1..N3 path against the N1,N2 shortcut at every inert good
// prime and verifies exact agreement of the L-polynomials.
BenchResult bench_curve(const CurveSpec& spec, u64 primes_up_to);
std::string bench_to_csv(const BenchResult& b);

}  // namespace im3
