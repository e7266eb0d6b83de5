#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "conormal/errors.hpp"
#include "conormal/quadrature.hpp"

namespace conormal {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Evaluator of a symbol on the cylinder chart: (z, y, zeta, eta) -> complex.
using SymbolEvaluator = std::function<cplx(double, double, double, double)>;
// Evaluator of a boundary symbol: (z, zeta) -> complex.
using BoundaryEvaluator = std::function<cplx(double, double)>;

// One term of a classical expansion.  `degree` is trusted metadata: the
// evaluator is positively homogeneous (or at least decays) of this degree
// in (zeta, eta).  Homogeneity is spot-checked by property tests, not
// proven.
struct HomogeneousComponent {
    double degree = 0.0;
    SymbolEvaluator eval;
};

// Smooth radial cutoff: 0 for r <= r0/2, 1 for r >= r0, quintic blend in
// between.  r0 == 0 disables the cutoff entirely (for symbols whose
// evaluators are smooth across xi = 0, e.g. resolvents).
inline double radial_cutoff(double r, double r0) {
    if (r0 <= 0.0) return 1.0;
    if (r <= 0.5 * r0) return 0.0;
    if (r >= r0) return 1.0;
    const double t = (r - 0.5 * r0) / (0.5 * r0);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// Classical symbol a(z, y; zeta, eta): an ordered list of components of
// degrees d, d-1, ..., plus the cutoff radius applied at evaluation time.
struct ClassicalSymbol {
    std::vector<HomogeneousComponent> components;
    double cutoff_radius = 1.0;
    bool z_dependent = false;
    std::string description;

    double degree() const { return components.front().degree; }
};

inline ClassicalSymbol make_classical_symbol(std::vector<HomogeneousComponent> components,
                                             double cutoff_radius = 1.0,
                                             bool z_dependent = false,
                                             std::string description = {}) {
    if (components.empty()) {
        throw std::invalid_argument("classical symbol needs at least one component");
    }
    for (std::size_t j = 1; j < components.size(); ++j) {
        const double step = components[j - 1].degree - components[j].degree;
        if (std::abs(step - 1.0) > 1e-9) {
            throw std::invalid_argument("component degrees must decrease by exactly 1");
        }
    }
    if (cutoff_radius < 0.0) {
        throw std::invalid_argument("cutoff radius must be >= 0");
    }
    return ClassicalSymbol{std::move(components), cutoff_radius, z_dependent,
                           std::move(description)};
}

inline cplx eval_symbol(const ClassicalSymbol& s, double z, double y, double zeta,
                        double eta) {
    const double chi = radial_cutoff(std::hypot(zeta, eta), s.cutoff_radius);
    if (chi == 0.0) return cplx(0.0);
    cplx sum(0.0);
    for (const auto& c : s.components) sum += c.eval(z, y, zeta, eta);
    return chi * sum;
}

struct BoundaryComponent {
    double degree = 0.0;
    BoundaryEvaluator eval;
};

// Symbol on the hypersurface, in (z, zeta).
struct BoundarySymbol {
    std::vector<BoundaryComponent> components;
    double degree = 0.0;
    double cutoff_radius = 1.0;
    bool z_dependent = false;
    std::string description;
};

inline cplx eval_boundary_symbol(const BoundarySymbol& b, double z, double zeta) {
    const double chi = radial_cutoff(std::abs(zeta), b.cutoff_radius);
    if (chi == 0.0) return cplx(0.0);
    cplx sum(0.0);
    for (const auto& c : b.components) sum += c.eval(z, zeta);
    return chi * sum;
}

// Componentwise integral over eta at y = 0: each component of degree d_j
// maps to a boundary component of degree d_j + 1.  Requires degree < -1.
inline BoundarySymbol integrate_eta(const ClassicalSymbol& s, double tol = 1e-10) {
    if (s.degree() >= -1.0) {
        throw DegreeTooHighError("integrate_eta requires symbol degree < -1, got degree " +
                                 std::to_string(s.degree()));
    }
    BoundarySymbol out;
    out.degree = s.degree() + 1.0;
    out.cutoff_radius = s.cutoff_radius;
    out.z_dependent = s.z_dependent;
    out.description = "integrate_eta(" + s.description + ")";
    for (const auto& c : s.components) {
        const double d = c.degree;
        SymbolEvaluator ev = c.eval;
        out.components.push_back(BoundaryComponent{
            d + 1.0, [ev, d, tol](double z, double zeta) -> cplx {
                QuadratureOptions opts;
                opts.rel_tol = tol;
                opts.scale = std::abs(zeta);
                return quadrature_with_tail(
                    [&](double eta) { return ev(z, 0.0, zeta, eta); }, d, opts);
            }});
    }
    return out;
}

// Predicted symbol of the trace-extension reduction: (1/2pi) times the
// eta integral of each component.
inline BoundarySymbol trace_symbol(const ClassicalSymbol& s, double tol = 1e-10) {
    BoundarySymbol b = integrate_eta(s, tol);
    for (auto& c : b.components) {
        BoundaryEvaluator ev = std::move(c.eval);
        c.eval = [ev](double z, double zeta) { return ev(z, zeta) / two_pi; };
    }
    b.description = "trace_symbol(" + s.description + ")";
    return b;
}

// Principal symbol of the Poisson conjugation P* A P:
//   b(z, zeta) = (2/pi) zeta^2 int a(z, 0; zeta, eta) / (zeta^2 + eta^2)^2 deta.
// Componentwise the integrand decays like degree d_j - 4, so degree < 3 is
// required; the output has degree d - 1.
inline BoundarySymbol poisson_conjugation_symbol(const ClassicalSymbol& a,
                                                 double tol = 1e-10) {
    if (a.degree() >= 3.0) {
        throw DegreeTooHighError(
            "poisson_conjugation_symbol requires symbol degree < 3, got degree " +
            std::to_string(a.degree()));
    }
    BoundarySymbol out;
    out.degree = a.degree() - 1.0;
    out.cutoff_radius = a.cutoff_radius;
    out.z_dependent = a.z_dependent;
    out.description = "poisson_conjugation_symbol(" + a.description + ")";
    for (const auto& c : a.components) {
        const double d = c.degree;
        SymbolEvaluator ev = c.eval;
        out.components.push_back(BoundaryComponent{
            d - 1.0, [ev, d, tol](double z, double zeta) -> cplx {
                QuadratureOptions opts;
                opts.rel_tol = tol;
                opts.scale = std::abs(zeta);
                const double z2 = zeta * zeta;
                const cplx integral = quadrature_with_tail(
                    [&](double eta) {
                        const double w = z2 + eta * eta;
                        return ev(z, 0.0, zeta, eta) / (w * w);
                    },
                    d - 4.0, opts);
                return (2.0 / pi) * z2 * integral;
            }});
    }
    return out;
}

inline ClassicalSymbol scale_symbol(const ClassicalSymbol& s, double factor) {
    ClassicalSymbol out = s;
    for (auto& c : out.components) {
        SymbolEvaluator ev = c.eval;
        c.eval = [ev, factor](double z, double y, double zeta, double eta) {
            return factor * ev(z, y, zeta, eta);
        };
    }
    out.description = std::to_string(factor) + "*(" + s.description + ")";
    return out;
}

// ---------------------------------------------------------------------------
// Presets.  Evaluators that are smooth across xi = 0 (constants,
// polynomials, resolvents) run with the cutoff disabled; pure negative
// powers keep the default cutoff radius 1, which on the integer frequency
// lattice only masks the origin mode.
// ---------------------------------------------------------------------------
namespace presets {

inline ClassicalSymbol one() {
    return make_classical_symbol(
        {{0.0, [](double, double, double, double) { return cplx(1.0); }}},
        /*cutoff_radius=*/0.0, /*z_dependent=*/false, "one");
}

// Principal symbol of the Laplacian, zeta^2 + eta^2.
inline ClassicalSymbol laplace() {
    return make_classical_symbol({{2.0,
                                   [](double, double, double zeta, double eta) {
                                       return cplx(zeta * zeta + eta * eta);
                                   }}},
                                 0.0, false, "laplace");
}

// (1 + zeta^2 + eta^2)^{-k}: a single degree -2k evaluator, smooth
// everywhere.
inline ClassicalSymbol resolvent(int k) {
    if (k < 1) throw std::invalid_argument("resolvent order must be >= 1");
    return make_classical_symbol(
        {{-2.0 * k,
          [k](double, double, double zeta, double eta) {
              return cplx(std::pow(1.0 + zeta * zeta + eta * eta, -k));
          }}},
        0.0, false, "resolvent(" + std::to_string(k) + ")");
}

inline ClassicalSymbol modulated_resolvent(int k) {
    if (k < 1) throw std::invalid_argument("resolvent order must be >= 1");
    return make_classical_symbol(
        {{-2.0 * k,
          [k](double z, double, double zeta, double eta) {
              return cplx((2.0 + std::cos(z)) *
                          std::pow(1.0 + zeta * zeta + eta * eta, -k));
          }}},
        0.0, true, "modulated-resolvent(" + std::to_string(k) + ")");
}

// Homogeneous expansion of (1 + zeta^2 + eta^2)^{-k}:
//   rho^{-2k} (1 + rho^{-2})^{-k} = sum_j binom(-k, j) rho^{-2k-2j}.
// Components of odd offset are zero fillers so degrees step by one.
// `terms` counts the nonzero components.
inline ClassicalSymbol resolvent_expansion(int k, int terms,
                                           bool modulated = false) {
    if (k < 1 || terms < 1) throw std::invalid_argument("bad expansion order");
    std::vector<HomogeneousComponent> comps;
    double binom = 1.0;  // binom(-k, j), starting at j = 0
    for (int j = 0; j < terms; ++j) {
        if (j > 0) binom *= static_cast<double>(-k - j + 1) / j;
        const double coef = binom;
        const double deg = -2.0 * k - 2.0 * j;
        comps.push_back(
            {deg, [coef, k, j, modulated](double z, double, double zeta, double eta) {
                 const double rho2 = zeta * zeta + eta * eta;
                 const double mod = modulated ? 2.0 + std::cos(z) : 1.0;
                 return cplx(mod * coef * std::pow(rho2, -k - j));
             }});
        if (j + 1 < terms) {
            comps.push_back(
                {deg - 1.0, [](double, double, double, double) { return cplx(0.0); }});
        }
    }
    std::string name = (modulated ? "modulated-resolvent-expansion(" : "resolvent-expansion(") +
                       std::to_string(k) + "," + std::to_string(terms) + ")";
    return make_classical_symbol(std::move(comps), /*cutoff_radius=*/1.0, modulated,
                                 std::move(name));
}

// Full resolvent written as its leading homogeneous expansion terms plus
// an explicit remainder component, so the components sum to the exact
// symbol.  Quantization then acts with the full resolvent while a
// prediction may keep the leading terms only.  The remainder is not
// homogeneous; its degree field records the decay slot it occupies.
inline ClassicalSymbol resolvent_with_remainder(int k, int leading_terms,
                                                bool modulated = false) {
    ClassicalSymbol head = resolvent_expansion(k, leading_terms, modulated);
    std::vector<HomogeneousComponent> head_comps = head.components;
    const double tail_degree = head_comps.back().degree - 1.0;
    head_comps.push_back(
        {tail_degree, [k, modulated, comps = head.components](double z, double y,
                                                              double zeta, double eta) {
             const double full = std::pow(1.0 + zeta * zeta + eta * eta, -k);
             const double mod = modulated ? 2.0 + std::cos(z) : 1.0;
             cplx leading(0.0);
             for (const auto& c : comps) leading += c.eval(z, y, zeta, eta);
             return cplx(mod * full) - leading;
         }});
    std::string name = (modulated ? "modulated-" : "");
    name += "resolvent(" + std::to_string(k) + ") split after " +
            std::to_string(leading_terms) + " terms";
    return make_classical_symbol(std::move(head_comps), /*cutoff_radius=*/1.0, modulated,
                                 std::move(name));
}

}  // namespace presets

}  // namespace conormal
