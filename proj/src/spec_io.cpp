#include "im3/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace im3 {

using nlohmann::json;

CurveSpec parse_curve_spec(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("format") || j["format"] != 1)
        throw Unsupported("curve spec must declare format: 1");
    std::string name = j.at("name").get<std::string>();
    std::string model = j.at("model").get<std::string>();
    i64 d = j.at("d").get<i64>();
    std::vector<u64> bad = j.value("bad_primes", std::vector<u64>{});

    CurveSpec spec{CurveModel{}, d, std::nullopt};
    if (model == "hyperelliptic") {
        spec.model = make_hyperelliptic(name, j.at("coefficients").get<std::vector<i64>>(), bad);
    } else if (model == "superelliptic") {
        spec.model = make_superelliptic(name, j.at("m").get<int>(),
                                        j.at("coefficients").get<std::vector<i64>>(), bad);
    } else if (model == "plane_quartic") {
        auto v = j.at("coefficients").get<std::vector<i64>>();
        if (v.size() != 15)
            throw Unsupported("plane quartic needs exactly 15 coefficients, got " +
                              std::to_string(v.size()));
        std::array<i64, 15> a{};
        std::copy(v.begin(), v.end(), a.begin());
        spec.model = make_plane_quartic(name, a, bad);
    } else {
        throw Unsupported("unknown model: " + model);
    }
    if (j.contains("automorphism")) {
        auto zx = j["automorphism"].at("zeta_x").get<std::vector<int>>();
        auto zy = j["automorphism"].at("zeta_y").get<std::vector<int>>();
        if (zx.size() != 2 || zy.size() != 2)
            throw Unsupported("automorphism roots of unity are (numerator, order) pairs");
        spec.automorphism = MonomialAutomorphism{RootOfUnity::make(zx[0], zx[1]),
                                                 RootOfUnity::make(zy[0], zy[1])};
    }
    ImagQuadField M(d);  // validates d
    (void)M;
    return spec;
}

CurveSpec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open curve spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve_spec(ss.str());
}

std::string format_curve_spec(const CurveSpec& spec) {
    json j;
    j["format"] = 1;
    j["name"] = spec.model.name;
    j["d"] = spec.d;
    j["bad_primes"] = spec.model.bad_primes;
    switch (spec.model.family) {
        case CurveFamily::Hyperelliptic:
            j["model"] = "hyperelliptic";
            j["coefficients"] = spec.model.f;
            break;
        case CurveFamily::Superelliptic:
            j["model"] = "superelliptic";
            j["m"] = spec.model.m;
            j["coefficients"] = spec.model.f;
            break;
        case CurveFamily::PlaneQuartic:
            j["model"] = "plane_quartic";
            j["coefficients"] = std::vector<i64>(spec.model.quartic.begin(), spec.model.quartic.end());
            break;
    }
    if (spec.automorphism) {
        j["automorphism"]["zeta_x"] = {spec.automorphism->zeta_x.num, spec.automorphism->zeta_x.order};
        j["automorphism"]["zeta_y"] = {spec.automorphism->zeta_y.num, spec.automorphism->zeta_y.order};
    }
    return j.dump(2) + "\n";
}

VerifyResult compare_record_streams(const std::string& got, const std::string& golden) {
    auto next_line = [](const std::string& s, size_t& pos) -> std::optional<std::string> {
        while (pos < s.size()) {
            size_t e = s.find('\n', pos);
            if (e == std::string::npos) e = s.size();
            std::string line = s.substr(pos, e - pos);
            pos = e + 1;
            if (!line.empty()) return line;
        }
        return std::nullopt;
    };
    auto normalize = [](json j) {
        j.erase("us");
        return j;
    };
    size_t pg = 0, ph = 0;
    int lineno = 0;
    while (true) {
        auto a = next_line(got, pg);
        auto b = next_line(golden, ph);
        lineno++;
        if (!a && !b) return {true, "identical"};
        if (!a || !b)
            return {false, "length mismatch: one stream ends at line " + std::to_string(lineno)};
        json ja = normalize(json::parse(*a));
        json jb = normalize(json::parse(*b));
        // n3 is optional: compare only when both sides carry it
        if (!ja.contains("n3") || !jb.contains("n3")) {
            ja.erase("n3");
            jb.erase("n3");
        }
        if (ja != jb) {
            std::string where = ja.contains("p") ? " (p=" + ja["p"].dump() + ")" : "";
            return {false, "first divergence at line " + std::to_string(lineno) + where + ":\n  got    " +
                               ja.dump() + "\n  golden " + jb.dump()};
        }
    }
}

}  // namespace im3
