#include "im3/quadfield.hpp"

#include <cmath>

namespace im3 {

static bool squarefree(i64 n) {
    for (i64 f = 2; f * f <= n; f++)
        if (n % (f * f) == 0) return false;
    return true;
}

static i64 checked_i64(i128 v, const char* what) {
    if (v > (i128)INT64_MAX / 2 || v < (i128)INT64_MIN / 2)
        throw Unsupported(std::string(what) + ": coordinate overflow");
    return (i64)v;
}

ImagQuadField::ImagQuadField(i64 d) : d_(d) {
    if (d <= 0) throw Unsupported("d must be positive (imaginary field)");
    if (!squarefree(d)) throw Unsupported("d must be squarefree");
    half_ = ((-d % 4) + 4) % 4 == 1;  // -d = 1 mod 4  <=>  d = 3 mod 4
    D_ = half_ ? -d : -4 * d;
}

i64 ImagQuadField::norm(const QuadInt& z) const {
    i128 n = (i128)z.x * z.x + (i128)z.x * z.y * omega_trace() + (i128)z.y * z.y * omega_norm();
    return checked_i64(n, "norm");
}

QuadInt ImagQuadField::mul(const QuadInt& a, const QuadInt& b) const {
    // (a.x + a.y w)(b.x + b.y w) with w^2 = Tr(w) w - Nm(w)
    i128 xy = (i128)a.y * b.y;
    i128 rx = (i128)a.x * b.x - xy * omega_norm();
    i128 ry = (i128)a.x * b.y + (i128)a.y * b.x + xy * omega_trace();
    return {checked_i64(rx, "mul"), checked_i64(ry, "mul")};
}

QuadInt ImagQuadField::div_int_exact(const QuadInt& z, i64 n) const {
    if (n == 0 || z.x % n != 0 || z.y % n != 0)
        throw NonIntegralCoefficient("quadratic integer not divisible by " + std::to_string(n));
    return {z.x / n, z.y / n};
}

QuadInt ImagQuadField::div_exact(const QuadInt& z, const QuadInt& w) const {
    i64 n = norm(w);
    if (n == 0) throw Error("division by zero in O_M");
    return div_int_exact(mul(z, conj(w)), n);
}

std::vector<QuadInt> ImagQuadField::units() const {
    if (D_ == -4) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (D_ == -3) return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    return {{1, 0}, {-1, 0}};
}

std::pair<double, double> ImagQuadField::embed(const QuadInt& z) const {
    double sq = std::sqrt((double)d_);
    if (half_) return {(double)z.x + 0.5 * (double)z.y, 0.5 * (double)z.y * sq};
    return {(double)z.x, (double)z.y * sq};
}

QuadInt ImagQuadField::canonical_associate(const QuadInt& z) const {
    if (z.x == 0 && z.y == 0) return z;
    // cone tests are exact in the coordinates:
    //   im >= 0   <=>  y >= 0
    //   d = 1 (quarter plane):  x > 0, y >= 0
    //   d = 3 (sixth plane):    y >= 0, x > 0   (arg in [0, pi/3))
    //   otherwise (half plane): y > 0, or y == 0 and x > 0
    QuadInt found{0, 0};
    int hits = 0;
    for (const auto& u : units()) {
        QuadInt c = mul(u, z);
        bool ok;
        if (D_ == -4 || D_ == -3)
            ok = c.y >= 0 && c.x > 0;
        else
            ok = c.y > 0 || (c.y == 0 && c.x > 0);
        if (ok) { found = c; hits++; }
    }
    if (hits != 1) throw Error("canonical associate not unique");
    return found;
}

SplitType ImagQuadField::split_type(u64 p) const {
    i64 ip = (i64)p;
    i64 Dm = ((D_ % ip) + ip) % ip;
    if (Dm == 0) return {SplitKind::Ramified, std::nullopt};
    bool split;
    if (p == 2) {
        split = ((D_ % 8) + 8) % 8 == 1;
    } else {
        PrimeField fp(p);
        split = fp.pow((u64)Dm, (p - 1) / 2) == 1;
    }
    if (!split) return {SplitKind::Inert, std::nullopt};
    // brute-force norm equation Nm(x + y w) = p over |y| <= sqrt(4p/|D|)
    i64 tr = omega_trace(), nm = omega_norm();
    i64 ybound = (i64)std::sqrt(4.0 * (double)p / (double)(-D_)) + 2;
    for (i64 y = -ybound; y <= ybound; y++) {
        // x^2 + tr*x*y + nm*y^2 - p = 0
        i64 b = tr * y;
        i128 c = (i128)nm * y * y - ip;
        i128 disc = (i128)b * b - 4 * c;
        if (disc < 0) continue;
        i64 s = (i64)std::llround(std::sqrt((double)disc));
        while ((i128)s * s > disc) s--;
        while ((i128)(s + 1) * (s + 1) <= disc) s++;
        if ((i128)s * s != disc) continue;
        for (i64 sgn : {1, -1}) {
            i64 num = -b + sgn * s;
            if (num % 2 != 0) continue;
            QuadInt cand{num / 2, y};
            if (norm(cand) == ip) return {SplitKind::Split, canonical_associate(cand)};
        }
    }
    return {SplitKind::Split, std::nullopt};  // non-principal prime (h > 1)
}

ClassNumberResult class_number(i64 D) {
    if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw Unsupported("not a negative discriminant: " + std::to_string(D));
    ClassNumberResult res{D, 0, {}};
    for (i64 a = 1; 3 * a * a <= -D; a++) {
        for (i64 b = -a + 1; b <= a; b++) {
            i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            res.forms.push_back({a, b, c});
        }
    }
    res.h = (i64)res.forms.size();
    return res;
}

bool is_fundamental_discriminant(i64 D) {
    if (D >= 0) return false;
    i64 m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree(-D);
    if (m4 != 0) return false;
    i64 m = D / 4;
    i64 mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && squarefree(-m);
}

std::vector<i64> class_number_one_discs(i64 bound) {
    std::vector<i64> out;
    for (i64 a = 3; a <= bound; a++) {
        i64 D = -a;
        if (!is_fundamental_discriminant(D)) continue;
        if (class_number(D).h == 1) out.push_back(D);
    }
    return out;
}

std::string to_string(const ImagQuadField& M, const QuadInt& z) {
    std::string w = M.half_integer_basis() ? "w" : ("sqrt(-" + std::to_string(M.d()) + ")");
    return std::to_string(z.x) + (z.y >= 0 ? "+" : "") + std::to_string(z.y) + "*" + w;
}

}  // namespace im3
