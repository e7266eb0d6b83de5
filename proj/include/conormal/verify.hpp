#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conormal/errors.hpp"
#include "conormal/symbols.hpp"
#include "conormal/torus.hpp"

namespace conormal {

enum class TheoremId { lemma_ext, thm1, thm2, thm3 };

inline std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::lemma_ext: return "lemma_ext";
        case TheoremId::thm1: return "thm1";
        case TheoremId::thm2: return "thm2";
        case TheoremId::thm3: return "thm3";
    }
    return "unknown";
}

struct NamedCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    TheoremId theorem_id = TheoremId::lemma_ext;
    std::vector<int> modes;
    std::vector<double> errors;
    std::vector<double> tolerances;  // per-mode; same length as errors
    bool slope_fitted = false;
    double fitted_slope = 0.0;
    double tolerance = 0.0;  // scalar driver tolerance (quadrature target)
    bool passed = false;
    // metadata
    int grid_nz = 0;
    int grid_ny = 0;
    std::string symbol_description;
    std::uint64_t seed = 0;
    std::vector<NamedCheck> named_checks;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    double quad_tol = 1e-10;
    std::uint64_t seed = 20260808ULL;
    int pairing_tests = 3;
    // Extended one-dimensional mode-sum settings for multiplier symbols in
    // the Poisson-conjugation check; the sum is grown by doubling until its
    // computed tail bound drops below sum_target_rel or the cap is hit.
    long max_sum_half_width = 1L << 20;
    double sum_target_rel = 1e-9;
    double slope_threshold = -1.0;
    // Number of leading components the theorem-1 prediction keeps; 0 keeps
    // all of them.  Quantization always acts with the full component sum,
    // so a truncated prediction exposes the order gap of the remainder.
    int prediction_components = 0;
};

// Least-squares slope of log(error) against log(n).  Zero errors cannot be
// fitted; callers report those modes as exact instead.
inline double convergence_slope(const std::vector<int>& ns, const std::vector<double>& errors) {
    if (ns.size() != errors.size() || ns.size() < 3) {
        throw DegenerateFitError("slope fit needs at least 3 (n, error) samples");
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] <= 0 || (i > 0 && ns[i] <= ns[i - 1])) {
            throw std::invalid_argument("modes must be positive and increasing");
        }
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
            throw DegenerateFitError("slope fit requires strictly positive finite errors");
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double x = std::log(static_cast<double>(ns[i]));
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Deterministic band-limited test data.  The uniform draw is built directly
// from the mt19937_64 stream so reports are reproducible across standard
// library implementations.
// ---------------------------------------------------------------------------

inline double uniform_pm1(std::mt19937_64& rng) {
    return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
}

inline CircleField random_band_limited_circle(int nz, int band, std::mt19937_64& rng) {
    CircleField f(nz);
    for (int n = -band; n <= band; ++n) {
        f.at(n) = cplx(uniform_pm1(rng), uniform_pm1(rng));
    }
    return f;
}

inline GridField random_band_limited_grid(const TorusGrid& g, int band_n, int band_m,
                                          std::mt19937_64& rng) {
    GridField F(g);
    for (int n = -band_n; n <= band_n; ++n) {
        for (int m = -band_m; m <= band_m; ++m) {
            F.at(n, m) = cplx(uniform_pm1(rng), uniform_pm1(rng));
        }
    }
    return F;
}

namespace detail {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline bool all_within(const std::vector<double>& errors, const std::vector<double>& tols) {
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] <= tols[i])) return false;
    }
    return true;
}

inline bool named_pass(const std::vector<NamedCheck>& checks) {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

// Fit the slope over the positive-error samples; marks the report exact
// when every error vanished.
inline void fit_slope(VerificationReport& rep) {
    std::vector<int> ns;
    std::vector<double> errs;
    for (std::size_t i = 0; i < rep.modes.size(); ++i) {
        if (rep.modes[i] >= 1 && rep.errors[i] > 0.0) {
            ns.push_back(rep.modes[i]);
            errs.push_back(rep.errors[i]);
        }
    }
    try {
        rep.fitted_slope = convergence_slope(ns, errs);
        rep.slope_fitted = true;
    } catch (const DegenerateFitError&) {
        rep.slope_fitted = false;
        rep.notes.push_back("slope fit degenerate (errors at or below machine precision)");
    } catch (const std::invalid_argument&) {
        rep.slope_fitted = false;
    }
}

// Envelope for the smoothing discrepancy between the mode sum and the
// frequency integral of an integrand decaying like |t|^d with
// singularities no closer to the real axis than |n|: the Poisson
// summation term is exp(-2 pi |n|) times a polynomial prefactor of
// order ceil(-d/2) - 1.
inline double smoothing_envelope(double decay_degree, int n) {
    const double nn = std::max(std::abs(n), 1);
    const int prefactor_order =
        std::max(0, static_cast<int>(std::ceil(-decay_degree / 2.0)) - 1);
    return 3.0 * std::pow(1.0 + two_pi * nn, prefactor_order) * std::exp(-two_pi * nn);
}

// Computed bound on (1/2pi) sum_{|m| > M} |a(0; n, m)| relative to |pred|,
// via the tail integral of |a| on both sides (the mode sum of a decreasing
// envelope is bounded by the integral from M).
inline double trace_tail_bound(const ClassicalSymbol& a, double z, int n, double cutoff,
                               double quad_tol) {
    QuadratureOptions opts;
    opts.rel_tol = quad_tol;
    const double d = a.degree();
    const double up = tail_integral(
                          [&](double t) {
                              return cplx(std::abs(eval_symbol(a, z, 0.0, n, t)));
                          },
                          cutoff, d, opts)
                          .real();
    const double down = tail_integral(
                            [&](double t) {
                                return cplx(std::abs(eval_symbol(a, z, 0.0, n, -t)));
                            },
                            cutoff, d, opts)
                            .real();
    return (up + down) / two_pi;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Harmonic-extension identity: Laplacian(harmonic_extension f) equals
// extend(DN f) coefficient for coefficient, and the dual pairing
// <F, Lap phi>_X = <DN f, trace phi>_Z holds for band-limited tests.
// ---------------------------------------------------------------------------
inline VerificationReport verify_lemma_ext(const CircleField& f, const TorusGrid& grid,
                                           const VerifyOptions& opts = {}) {
    VerificationReport rep;
    rep.theorem_id = TheoremId::lemma_ext;
    rep.grid_nz = grid.nz;
    rep.grid_ny = grid.ny;
    rep.seed = opts.seed;
    rep.tolerance = opts.quad_tol;
    rep.symbol_description = "harmonic extension identity";

    const GridField F = harmonic_extension(f, grid);
    const CircleField dnf = dirichlet_to_neumann(f);
    const GridField lhs = apply_laplacian(F);
    const GridField rhs = extend(dnf, grid);

    double resid2 = 0.0;
    for (std::size_t i = 0; i < lhs.coef.size(); ++i) {
        resid2 += std::norm(lhs.coef[i] - rhs.coef[i]);
    }
    const double fnorm = norm_z(f);
    const double coef_resid = two_pi * std::sqrt(resid2) / fnorm;
    rep.modes.push_back(0);
    rep.errors.push_back(coef_resid);
    rep.tolerances.push_back(1e-13);
    rep.notes.push_back("mode 0: coefficient residual |Lap(H f) - E(DN f)|_X / |f|_Z");

    std::mt19937_64 rng(opts.seed);
    for (int k = 1; k <= opts.pairing_tests; ++k) {
        const GridField phi =
            random_band_limited_grid(grid, grid.nz / 4, grid.ny / 4, rng);
        const cplx lhs_pair = inner_product_x(F, apply_laplacian(phi));
        const cplx rhs_pair = inner_product_z(dnf, trace(phi));
        const double resid =
            std::abs(lhs_pair - rhs_pair) / (fnorm * norm_x(phi));
        rep.modes.push_back(k);
        rep.errors.push_back(resid);
        rep.tolerances.push_back(1e-11);
    }
    rep.notes.push_back("modes 1..k: dual-pairing residual / (|f| |phi|), band-limited phi");

    rep.slope_fitted = false;
    rep.passed = detail::all_within(rep.errors, rep.tolerances);
    return rep;
}

// ---------------------------------------------------------------------------
// Trace-extension reduction.  For z-independent symbols, compares the
// empirical multiplier of T A E against the predicted boundary symbol mode
// by mode, with a computed truncation bound.  For z-dependent symbols,
// compares output functions; passing requires either every mode inside its
// bound (exact-trace predictions) or a fitted slope at or below the
// threshold (expansion predictions, where the remainder is one order
// lower).
// ---------------------------------------------------------------------------
inline VerificationReport verify_theorem1(const ClassicalSymbol& a,
                                          const std::vector<int>& n_list,
                                          const TorusGrid& grid,
                                          const VerifyOptions& opts = {}) {
    if (a.degree() >= -1.0) {
        throw DegreeTooHighError(
            "trace-extension reduction requires a symbol of degree < -1, got degree " +
            std::to_string(a.degree()));
    }
    VerificationReport rep;
    rep.theorem_id = TheoremId::thm1;
    rep.grid_nz = grid.nz;
    rep.grid_ny = grid.ny;
    rep.seed = opts.seed;
    rep.tolerance = opts.quad_tol;
    rep.symbol_description = a.description;

    ClassicalSymbol prediction_source = a;
    const bool truncated_prediction =
        opts.prediction_components > 0 &&
        opts.prediction_components < static_cast<int>(a.components.size());
    if (truncated_prediction) {
        prediction_source.components.resize(opts.prediction_components);
        rep.notes.push_back("prediction keeps the leading " +
                            std::to_string(opts.prediction_components) + " component(s)");
    }
    const BoundarySymbol predicted = trace_symbol(prediction_source, opts.quad_tol);
    const double edge = grid.ny / 2 - 1;

    for (int n : n_list) {
        const CircleField en = CircleField::mode(grid.nz, n);
        const GridField Een = extend(en, grid);
        const CircleField out = trace_apply_pdo(a, Een);
        const double exp_term = detail::smoothing_envelope(a.degree(), n);

        if (!a.z_dependent) {
            const cplx emp = out.at(n);
            const cplx pred = eval_boundary_symbol(predicted, 0.0, n);
            const double bound =
                detail::trace_tail_bound(a, 0.0, n, edge, opts.quad_tol) / std::abs(pred);
            rep.modes.push_back(n);
            rep.errors.push_back(std::abs(emp / pred - 1.0));
            rep.tolerances.push_back(exp_term + bound + 1e-12);
        } else {
            const CircleField pred = apply_pdo_circle(predicted, en);
            double diff2 = 0.0;
            for (std::size_t i = 0; i < out.coef.size(); ++i) {
                diff2 += std::norm(out.coef[i] - pred.coef[i]);
            }
            const double pred_norm = norm_z(pred);
            const double err = std::sqrt(two_pi * diff2) / pred_norm;
            // sup over grid rows of the pointwise truncation bound
            double sup_bound = 0.0;
            for (int k = 0; k < grid.nz; ++k) {
                const double z = two_pi * k / grid.nz;
                sup_bound = std::max(
                    sup_bound, detail::trace_tail_bound(a, z, n, edge, opts.quad_tol));
            }
            rep.modes.push_back(n);
            rep.errors.push_back(err);
            rep.tolerances.push_back(exp_term + std::sqrt(two_pi) * sup_bound / pred_norm +
                                     1e-12);
        }
    }

    if (rep.modes.empty()) {
        rep.passed = false;
        rep.notes.push_back("no modes evaluated");
        return rep;
    }
    detail::fit_slope(rep);
    // Exact-trace predictions sit inside the per-mode bounds; truncated
    // expansion predictions leave a remainder one symbol order lower, so
    // the fitted slope carries the verdict instead.
    const bool within = detail::all_within(rep.errors, rep.tolerances);
    const bool slope_ok = rep.slope_fitted && rep.fitted_slope <= opts.slope_threshold;
    rep.passed = within || slope_ok;
    rep.notes.push_back(within ? "per-mode truncation bounds satisfied"
                               : "pass requires fitted slope <= " +
                                     std::to_string(opts.slope_threshold));
    return rep;
}

// ---------------------------------------------------------------------------
// Bilateral Dirichlet-to-Neumann operator: principal-symbol ratio, kernel,
// inverse relation against B = T . quasi_inverse . E, symmetry.
// ---------------------------------------------------------------------------
inline VerificationReport verify_theorem2(const std::vector<int>& n_list,
                                          const TorusGrid& grid,
                                          const VerifyOptions& opts = {}) {
    VerificationReport rep;
    rep.theorem_id = TheoremId::thm2;
    rep.grid_nz = grid.nz;
    rep.grid_ny = grid.ny;
    rep.seed = opts.seed;
    rep.tolerance = opts.quad_tol;
    rep.symbol_description = "dirichlet-to-neumann";

    // (i) principal symbol ratio
    for (int n : n_list) {
        if (n == 0) continue;
        const double ratio = dn_eigenvalue(n) / (2.0 * std::abs(n));
        rep.modes.push_back(n);
        rep.errors.push_back(std::abs(ratio - 1.0));
        rep.tolerances.push_back(5.0 * std::exp(-two_pi * std::abs(n)) + 1e-12);
    }

    // (ii) kernel: the constant function maps to zero exactly
    {
        CircleField constant(grid.nz);
        constant.at(0) = cplx(1.0);
        const CircleField dn1 = dirichlet_to_neumann(constant);
        double maxabs = 0.0;
        for (const auto& c : dn1.coef) maxabs = std::max(maxabs, std::abs(c));
        rep.named_checks.push_back({"dn_kernel_constants", maxabs, 0.0, maxabs <= 0.0});
    }

    // (iii) inverse relation.  Exact lattice-sum B(n) = coth(pi n)/(2n).
    {
        double worst = 0.0;
        for (int n = 1; n <= 64; ++n) {
            const double b_exact = 1.0 / (2.0 * n * std::tanh(pi * n));
            worst = std::max(worst, std::abs(b_exact * dn_eigenvalue(n) - 1.0));
        }
        rep.named_checks.push_back({"b_dn_exact_lattice", worst, 1e-13, worst <= 1e-13});
    }
    // Grid-truncated B through the operator pipeline, against its computed
    // tail bound (2/pi) DN(n) int_{ny/2-1}^inf dt/(n^2+t^2).
    {
        const double edge = grid.ny / 2 - 1;
        double worst_ratio = 0.0;
        const int n_hi = std::min(64, grid.nz / 2 - 1);
        for (int n = 1; n <= n_hi; ++n) {
            const CircleField en = CircleField::mode(grid.nz, n);
            const CircleField Ben = trace(laplace_quasi_inverse(extend(en, grid)));
            const double err = std::abs(Ben.at(n) * dn_eigenvalue(n) - 1.0);
            const double bound = (2.0 / pi) * dn_eigenvalue(n) *
                                 (pi / 2 - std::atan(edge / n)) / n;
            worst_ratio = std::max(worst_ratio, err / bound);
        }
        rep.named_checks.push_back(
            {"b_dn_grid_within_tail_bound", worst_ratio, 1.0, worst_ratio <= 1.0});
    }

    // (iv) symmetry: even in n, hence self-adjoint on the real pairing
    {
        double worst = 0.0;
        for (int n = 1; n <= grid.nz / 2 - 1; ++n) {
            worst = std::max(worst, std::abs(dn_eigenvalue(n) - dn_eigenvalue(-n)));
        }
        rep.named_checks.push_back({"dn_even_in_n", worst, 0.0, worst <= 0.0});
    }

    detail::fit_slope(rep);
    rep.passed = detail::all_within(rep.errors, rep.tolerances) &&
                 detail::named_pass(rep.named_checks);
    return rep;
}

// ---------------------------------------------------------------------------
// Poisson conjugation.  For z-independent symbols the quadratic form is
// diagonal, mu_n = 2pi sum_m a(n, m) p_n(m)^2, and the m-sum is extended by
// doubling until its computed tail bound reaches the target (the grid
// height only sets the starting width; the sum is one-dimensional).
// ---------------------------------------------------------------------------
inline VerificationReport verify_theorem3(const ClassicalSymbol& a,
                                          const std::vector<int>& n_list,
                                          const TorusGrid& grid,
                                          const VerifyOptions& opts = {}) {
    if (a.degree() >= 3.0) {
        throw DegreeTooHighError(
            "poisson conjugation requires a symbol of degree < 3, got degree " +
            std::to_string(a.degree()));
    }
    VerificationReport rep;
    rep.theorem_id = TheoremId::thm3;
    rep.grid_nz = grid.nz;
    rep.grid_ny = grid.ny;
    rep.seed = opts.seed;
    rep.tolerance = opts.quad_tol;
    rep.symbol_description = a.description;

    const BoundarySymbol predicted = poisson_conjugation_symbol(a, opts.quad_tol);

    long widest = 0;
    for (int n : n_list) {
        if (n < 1) continue;
        const double exp_term = detail::smoothing_envelope(a.degree() - 4.0, n);

        if (!a.z_dependent) {
            const double base = dn_eigenvalue(n) / two_pi;  // p_n(m) = base/(n^2+m^2)
            auto term = [&](double m) {
                const double p = base / (n * static_cast<double>(n) + m * m);
                return eval_symbol(a, 0.0, 0.0, n, m) * (p * p);
            };
            detail::KahanSum re, im;
            auto add = [&](double m) {
                const cplx t = term(m);
                re.add(t.real());
                im.add(t.imag());
            };
            long M = grid.ny / 2 - 1;
            for (long m = -M; m <= M; ++m) add(static_cast<double>(m));

            QuadratureOptions qopts;
            qopts.rel_tol = opts.quad_tol;
            auto tail_bound = [&](long cut) {
                const double up = tail_integral(
                                      [&](double t) { return cplx(std::abs(term(t))); },
                                      static_cast<double>(cut), a.degree() - 4.0, qopts)
                                      .real();
                const double dn_side =
                    tail_integral([&](double t) { return cplx(std::abs(term(-t))); },
                                  static_cast<double>(cut), a.degree() - 4.0, qopts)
                        .real();
                return up + dn_side;
            };

            double bound_abs = tail_bound(M);
            while (bound_abs > opts.sum_target_rel * std::abs(cplx(re.sum, im.sum)) &&
                   2 * M <= opts.max_sum_half_width) {
                for (long m = M + 1; m <= 2 * M; ++m) {
                    add(static_cast<double>(m));
                    add(static_cast<double>(-m));
                }
                M *= 2;
                bound_abs = tail_bound(M);
            }
            widest = std::max(widest, M);

            const cplx mu = two_pi * cplx(re.sum, im.sum);
            const cplx pred = eval_boundary_symbol(predicted, 0.0, n);
            const double bound_rel = two_pi * bound_abs / std::abs(pred);
            rep.modes.push_back(n);
            rep.errors.push_back(std::abs(mu / pred - 1.0));
            rep.tolerances.push_back(exp_term + bound_rel + 1e-12);
        } else {
            const CircleField en = CircleField::mode(grid.nz, n);
            const CircleField out = poisson_adjoint(apply_pdo(a, poisson(en, grid)));
            const CircleField pred = apply_pdo_circle(predicted, en);
            double diff2 = 0.0;
            for (std::size_t i = 0; i < out.coef.size(); ++i) {
                diff2 += std::norm(out.coef[i] - pred.coef[i]);
            }
            rep.modes.push_back(n);
            rep.errors.push_back(std::sqrt(two_pi * diff2) / norm_z(pred));
            rep.tolerances.push_back(0.0);  // z-dependent pass is slope-based
        }
    }

    if (rep.modes.empty()) {
        rep.passed = false;
        rep.notes.push_back("no modes evaluated (the conjugation check needs n >= 1)");
        return rep;
    }
    detail::fit_slope(rep);
    if (!a.z_dependent) {
        const bool within = detail::all_within(rep.errors, rep.tolerances);
        const bool slope_ok = rep.slope_fitted && rep.fitted_slope <= opts.slope_threshold;
        rep.passed = within || slope_ok;
        rep.notes.push_back("diagonal m-sum extended to half-width " +
                            std::to_string(widest));
    } else {
        rep.passed = rep.slope_fitted && rep.fitted_slope <= opts.slope_threshold;
        rep.notes.push_back("z-dependent symbol: pass via fitted slope against threshold " +
                            std::to_string(opts.slope_threshold));
    }
    return rep;
}

// One-off normalization audit for the Poisson-conjugation quadratic form:
// the spectral value of <P e_n, P e_n>_X against a direct physical-space
// trapezoid quadrature of the separation-of-variables solution, and the
// closed form 2pi (pi + sinh(2 pi n)/(2n)) / cosh(pi n)^2.
struct PoissonNormCheck {
    double spectral = 0.0;
    double physical = 0.0;
    double closed_form = 0.0;
};

inline PoissonNormCheck poisson_norm_validation(int n, const TorusGrid& grid,
                                                int quad_points = 512) {
    PoissonNormCheck out;
    const CircleField en = CircleField::mode(grid.nz, n);
    const GridField Pe = poisson(en, grid);
    out.spectral = std::abs(inner_product_x(Pe, Pe));

    const double h = two_pi / quad_points;
    const double c = std::cosh(pi * n);
    double sum = 0.0;
    for (int l = 0; l < quad_points; ++l) {
        const double y = h * l;
        const double v = std::cosh(n * (y - pi)) / c;
        sum += v * v;
    }
    out.physical = two_pi * (h * sum);  // z-integral of |e^{inz}|^2 is 2pi

    out.closed_form =
        two_pi * (pi + std::sinh(2.0 * pi * n) / (2.0 * n)) / (c * c);
    return out;
}

}  // namespace conormal
