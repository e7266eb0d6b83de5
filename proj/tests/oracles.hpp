// Test-side oracles, independent of the library implementation paths they
// check: antiderivative closed forms, lattice-sum identities, and
// brute-force summation with integral remainder control.
#pragma once

#include <cmath>
#include <numbers>

namespace oracles {

inline constexpr double pi = std::numbers::pi;

// int_R (a^2 + eta^2)^{-1} deta = pi / a   (arctan antiderivative)
inline double integral_inv_quadratic(double a) { return pi / a; }

// int_R (a^2 + eta^2)^{-2} deta = pi / (2 a^3)
inline double integral_inv_quartic(double a) { return pi / (2.0 * a * a * a); }

// int_R (a^2 + eta^2)^{-3} deta = 3 pi / (8 a^5)
inline double integral_inv_sextic(double a) { return 3.0 * pi / (8.0 * std::pow(a, 5)); }

// sum_{m in Z} (s^2 + m^2)^{-1} = (pi / s) coth(pi s)
inline double lattice_sum_quadratic(double s) { return pi / (s * std::tanh(pi * s)); }

// sum_{m in Z} (s^2 + m^2)^{-2}
//   = pi coth(pi s) / (2 s^3) + (pi^2 / (2 s^2)) csch(pi s)^2
inline double lattice_sum_quartic(double s) {
    const double coth = 1.0 / std::tanh(pi * s);
    const double csch = 1.0 / std::sinh(pi * s);
    return pi * coth / (2.0 * s * s * s) + pi * pi * csch * csch / (2.0 * s * s);
}

// Brute-force partial sum sum_{|m| <= M} (s^2 + m^2)^{-p} plus enclosing
// integral bounds for the remainder; used once to validate the closed
// forms above.
struct BruteSum {
    double value;
    double remainder_low;
    double remainder_high;
};

inline BruteSum brute_lattice_sum(double s, int p, long M) {
    double sum = std::pow(s * s, -p);
    double carry = 0.0;  // compensated summation; the enclosure is tight
    for (long m = M; m >= 1; --m) {  // ascending magnitude of terms
        const double x = 2.0 * std::pow(s * s + static_cast<double>(m) * m, -p) - carry;
        const double t = sum + x;
        carry = (t - sum) - x;
        sum = t;
    }
    auto integral_from = [&](double t0) {
        // int_t0^inf (s^2 + t^2)^{-p} dt, p in {1, 2}
        if (p == 1) return (pi / 2 - std::atan(t0 / s)) / s;
        const double i1 = (pi / 2 - std::atan(t0 / s)) / s;
        return (i1 / s - t0 / (s * (s * s + t0 * t0))) / (2.0 * s);
    };
    return BruteSum{sum, 2.0 * integral_from(static_cast<double>(M) + 1.0),
                    2.0 * integral_from(static_cast<double>(M))};
}

// Bilateral Poisson-kernel energy <P e_n, P e_n>_X on the cut cylinder:
// 2 pi int_0^{2pi} cosh(n(y - pi))^2 / cosh(n pi)^2 dy
//   = 2 pi (pi + sinh(2 pi n) / (2 n)) / cosh(pi n)^2
inline double poisson_energy(int n) {
    const double c = std::cosh(pi * n);
    return 2.0 * pi * (pi + std::sinh(2.0 * pi * n) / (2.0 * n)) / (c * c);
}

// One-sided finite-difference normal derivatives of the separation-of-
// variables solution F_n(y) = cosh(n(y - pi)) / cosh(n pi); minus their
// sum across the cut is the DN multiplier.
inline double dn_finite_difference(int n, double h = 1e-5) {
    auto F = [n](double y) { return std::cosh(n * (y - pi)) / std::cosh(n * pi); };
    const double d0 = (-3.0 * F(0.0) + 4.0 * F(h) - F(2.0 * h)) / (2.0 * h);
    const double d1 =
        (3.0 * F(2.0 * pi) - 4.0 * F(2.0 * pi - h) + F(2.0 * pi - 2.0 * h)) / (2.0 * h);
    // interior normals: +d/dy at y = 0+, -d/dy at y = 2pi-
    return -(d0 - d1);
}

}  // namespace oracles
