#include "im3/diffsig.hpp"

#include <numeric>

namespace im3 {

RootOfUnity RootOfUnity::make(int num, int order) {
    if (order < 1) throw Unsupported("root of unity needs positive order");
    num %= order;
    if (num < 0) num += order;
    int g = std::gcd(num, order);
    if (num == 0) return {0, 1};
    return {num / g, order / g};
}

RootOfUnity RootOfUnity::mul(const RootOfUnity& o) const {
    int l = std::lcm(order, o.order);
    return make(num * (l / order) + o.num * (l / o.order), l);
}

RootOfUnity RootOfUnity::pow(int k) const {
    long long n = (long long)num * k % order;
    return make((int)n, order);
}

std::string RootOfUnity::str() const {
    if (order == 1) return "1";
    if (order == 2) return "-1";
    if (order == 4) return num == 1 ? "i" : "-i";
    return "zeta_" + std::to_string(order) + "^" + std::to_string(num);
}

std::vector<Differential> differential_basis(const CurveModel& c) {
    if (c.family == CurveFamily::Hyperelliptic)
        return {{0, 1}, {1, 1}, {2, 1}};  // dx/y, x dx/y, x^2 dx/y
    if (c.family == CurveFamily::Superelliptic) {
        if (c.m == 3) return {{0, 1}, {0, 2}, {1, 2}};  // dx/y, dx/y^2, x dx/y^2
        if (c.m == 4) return {{0, 3}, {0, 2}, {1, 3}};  // dx/y^3, dx/y^2, x dx/y^3
    }
    throw Unsupported("no differential basis for this family");
}

SignatureReport act(const MonomialAutomorphism& a, const CurveModel& c) {
    if (c.family == CurveFamily::PlaneQuartic)
        throw Unsupported("no differential basis for this family");
    if (std::lcm(a.zeta_x.order, a.zeta_y.order) > 12)
        throw Unsupported("cyclotomic order above 12");

    // the equation y^m - f(x) must map to a scalar multiple of itself:
    // the scalar is zeta_y^m, and every monomial of f must scale the same way
    RootOfUnity scalar = a.zeta_y.pow(c.m);
    for (size_t k = 0; k < c.f.size(); k++) {
        if (c.f[k] == 0) continue;
        if (!(a.zeta_x.pow((int)k) == scalar))
            throw Unsupported("automorphism does not preserve the curve equation");
    }

    SignatureReport rep;
    auto basis = differential_basis(c);
    int rational = 0, upper = 0, lower = 0;
    int lcm_order = 1;
    for (size_t i = 0; i < 3; i++) {
        // pullback of x^i dx / y^j picks up zeta_x^{i+1} zeta_y^{-j}
        RootOfUnity ev = a.zeta_x.pow(basis[i].i + 1).mul(a.zeta_y.pow(-basis[i].j));
        rep.eigenvalues[i] = ev;
        lcm_order = std::lcm(lcm_order, ev.order);
        if (ev.is_rational()) rational++;
        else if (ev.upper_half()) upper++;
        else lower++;
    }

    auto phi = [](int n) {
        int r = 0;
        for (int t = 1; t <= n; t++)
            if (std::gcd(t, n) == 1) r++;
        return r;
    };

    if (lcm_order <= 2) {
        rep.unital = true;  // the identity embedding of Q
        rep.generated_algebra = "Q (no imaginary multiplication detected)";
        return rep;
    }
    rep.unital = rational == 0;
    if (phi(lcm_order) == 2) {
        rep.generated_algebra = lcm_order == 4 ? "Q(sqrt(-1))" : "Q(sqrt(-3))";
        if (rep.unital) {
            int rs = std::max(upper, lower), rb = std::min(upper, lower);
            rep.signature = std::make_pair(rs, rb);
            if (!(rs == 2 && rb == 1))
                throw TheoremViolation("unital quadratic action must have signature (2,1), got (" +
                                       std::to_string(rs) + "," + std::to_string(rb) + ")");
        }
    } else {
        rep.generated_algebra = "Q(zeta_" + std::to_string(lcm_order) + ") (non-quadratic)";
    }
    return rep;
}

}  // namespace im3
