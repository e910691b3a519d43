#pragma once

#include <optional>
#include <string>

#include "im3/curves.hpp"
#include "im3/diffsig.hpp"
#include "im3/quadfield.hpp"

namespace im3 {

// A parsed curve spec file: the model, the field M = Q(sqrt(-d)) it is
// expected to multiply by, and an optional monomial automorphism.
struct CurveSpec {
    CurveModel model;
    i64 d;
    std::optional<MonomialAutomorphism> automorphism;
};

// Parses the versioned JSON curve spec document (format: 1).
CurveSpec parse_curve_spec(const std::string& text);
CurveSpec load_curve_spec(const std::string& path);

// Canonical formatter; parse(format(s)) == s byte for byte.
std::string format_curve_spec(const CurveSpec& spec);

struct VerifyResult {
    bool identical;
    std::string report;  // first divergence, or a summary
};

// Compares two record streams (JSONL) field by field: the timing field is
// ignored and n3 is compared only when present on both sides.
VerifyResult compare_record_streams(const std::string& got, const std::string& golden);

}  // namespace im3
