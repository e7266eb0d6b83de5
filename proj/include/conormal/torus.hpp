#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conormal/symbols.hpp"

namespace conormal {

// Flat 2-torus (R/2piZ)^2 with coordinates x = (z, y) and the circle
// Z = {y = 0}.  Fields are stored as Fourier coefficients with the
// synthesis convention u(z, y) = sum c(n, m) e^{i(nz + my)} over
// n in [-nz/2, nz/2), m in [-ny/2, ny/2).
struct TorusGrid {
    int nz = 256;
    int ny = 256;

    TorusGrid() = default;
    TorusGrid(int nz_, int ny_) : nz(nz_), ny(ny_) {
        if (nz < 8 || ny < 8 || nz % 2 != 0 || ny % 2 != 0) {
            throw std::invalid_argument("grid sizes must be even and >= 8");
        }
    }

    int n_min() const { return -nz / 2; }
    int n_max() const { return nz / 2 - 1; }
    int m_min() const { return -ny / 2; }
    int m_max() const { return ny / 2 - 1; }
};

struct GridField {
    TorusGrid grid;
    std::vector<cplx> coef;  // index (n + nz/2) * ny + (m + ny/2)

    explicit GridField(const TorusGrid& g) : grid(g), coef(static_cast<std::size_t>(g.nz) * g.ny) {}

    cplx& at(int n, int m) { return coef[index(n, m)]; }
    const cplx& at(int n, int m) const { return coef[index(n, m)]; }

    std::size_t index(int n, int m) const {
        if (n < grid.n_min() || n > grid.n_max() || m < grid.m_min() || m > grid.m_max()) {
            throw std::out_of_range("frequency (" + std::to_string(n) + "," +
                                    std::to_string(m) + ") outside the grid");
        }
        return static_cast<std::size_t>(n + grid.nz / 2) * grid.ny + (m + grid.ny / 2);
    }

    static GridField mode(const TorusGrid& g, int n, int m, cplx amplitude = cplx(1.0)) {
        GridField f(g);
        f.at(n, m) = amplitude;
        return f;
    }
};

struct CircleField {
    int nz = 256;
    std::vector<cplx> coef;  // index n + nz/2

    explicit CircleField(int nz_) : nz(nz_), coef(static_cast<std::size_t>(nz_)) {
        if (nz < 8 || nz % 2 != 0) {
            throw std::invalid_argument("circle grid size must be even and >= 8");
        }
    }

    cplx& at(int n) { return coef[index(n)]; }
    const cplx& at(int n) const { return coef[index(n)]; }

    std::size_t index(int n) const {
        if (n < -nz / 2 || n > nz / 2 - 1) {
            throw std::out_of_range("frequency " + std::to_string(n) + " outside the grid");
        }
        return static_cast<std::size_t>(n + nz / 2);
    }

    int n_min() const { return -nz / 2; }
    int n_max() const { return nz / 2 - 1; }

    static CircleField mode(int nz, int n, cplx amplitude = cplx(1.0)) {
        CircleField f(nz);
        f.at(n) = amplitude;
        return f;
    }
};

// Diagonal operator on the circle: n -> lambda(n).
struct FourierMultiplierZ {
    std::function<cplx(int)> lambda;
    std::string description;
};

// ---------------------------------------------------------------------------
// Core operators.  All are exact identities on Fourier coefficients; the
// only approximation in the model is the frequency truncation of the grid.
// ---------------------------------------------------------------------------

// E f = f delta(y = 0): since delta(y = 0) = (1/2pi) sum_m e^{imy}, each
// retained row m gets f(n) / 2pi.
inline GridField extend(const CircleField& f, const TorusGrid& grid) {
    if (f.nz != grid.nz) {
        throw std::invalid_argument("circle field size does not match the grid");
    }
    GridField out(grid);
    for (int n = grid.n_min(); n <= grid.n_max(); ++n) {
        const cplx row = f.at(n) / two_pi;
        for (int m = grid.m_min(); m <= grid.m_max(); ++m) out.at(n, m) = row;
    }
    return out;
}

// T F = F|_{y=0}: column sums of the coefficients.  Only meaningful for
// fields whose coefficients decay in m; applying it to extend() output
// returns the truncation-dependent value ny * f(n) / 2pi.
inline CircleField trace(const GridField& F) {
    CircleField out(F.grid.nz);
    for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
        cplx sum(0.0);
        for (int m = F.grid.m_min(); m <= F.grid.m_max(); ++m) sum += F.at(n, m);
        out.at(n) = sum;
    }
    return out;
}

// Quasi-inverse of the (geometers') Laplacian: divide by n^2 + m^2 away
// from the zero mode, kill the zero mode.
inline GridField laplace_quasi_inverse(const GridField& F) {
    GridField out(F.grid);
    for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
        for (int m = F.grid.m_min(); m <= F.grid.m_max(); ++m) {
            if (n == 0 && m == 0) continue;
            out.at(n, m) = F.at(n, m) / static_cast<double>(n * n + m * m);
        }
    }
    return out;
}

inline GridField apply_laplacian(const GridField& F) {
    GridField out(F.grid);
    for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
        for (int m = F.grid.m_min(); m <= F.grid.m_max(); ++m) {
            out.at(n, m) = static_cast<double>(n * n + m * m) * F.at(n, m);
        }
    }
    return out;
}

// Multiplier of the bilateral Dirichlet-to-Neumann operator:
// 2 |n| tanh(pi |n|), zero on constants.  Obtained by summing the interior
// normal derivatives of cosh(n(y - pi)) / cosh(n pi) from both sides of
// the cut at y = 0 and negating.
inline double dn_eigenvalue(int n) {
    if (n == 0) return 0.0;
    const double a = std::abs(static_cast<double>(n));
    return 2.0 * a * std::tanh(pi * a);
}

inline CircleField dirichlet_to_neumann(const CircleField& f) {
    CircleField out(f.nz);
    for (int n = f.n_min(); n <= f.n_max(); ++n) out.at(n) = dn_eigenvalue(n) * f.at(n);
    return out;
}

// Harmonic extension with matching traces from both sides of the cut
// cylinder: mode n solves F_n(y) = f(n) cosh(n(y - pi)) / cosh(n pi),
// whose Fourier coefficients in y are |n| tanh(pi |n|) / (pi (n^2 + m^2)).
// Constants extend to constants.  The coefficient arithmetic deliberately
// follows the factorization route (DN, then 1/2pi, then 1/(n^2+m^2)) so
// that poisson() and laplace_quasi_inverse(extend(dirichlet_to_neumann()))
// agree bit for bit on mean-zero data.
inline GridField harmonic_extension(const CircleField& f, const TorusGrid& grid) {
    if (f.nz != grid.nz) {
        throw std::invalid_argument("circle field size does not match the grid");
    }
    GridField out(grid);
    for (int n = grid.n_min(); n <= grid.n_max(); ++n) {
        if (n == 0) {
            out.at(0, 0) = f.at(0);
            continue;
        }
        const cplx row = (dn_eigenvalue(n) * f.at(n)) / two_pi;
        for (int m = grid.m_min(); m <= grid.m_max(); ++m) {
            out.at(n, m) = row / static_cast<double>(n * n + m * m);
        }
    }
    return out;
}

// The Poisson operator of this model is the harmonic extension itself;
// the factorization quasi_inverse . extend . DN agrees with it exactly on
// mean-zero modes and differs only in the zero-mode convention.
inline GridField poisson(const CircleField& f, const TorusGrid& grid) {
    return harmonic_extension(f, grid);
}

// Adjoint of poisson() with respect to the X and Z pairings:
// (P* G)(n) = 2pi sum_m G(n, m) p_n(m) with p_n(m) the (real) harmonic
// extension coefficients.
inline CircleField poisson_adjoint(const GridField& G) {
    CircleField out(G.grid.nz);
    for (int n = G.grid.n_min(); n <= G.grid.n_max(); ++n) {
        if (n == 0) {
            out.at(0) = two_pi * G.at(0, 0);
            continue;
        }
        const double base = dn_eigenvalue(n) / two_pi;
        cplx sum(0.0);
        for (int m = G.grid.m_min(); m <= G.grid.m_max(); ++m) {
            sum += G.at(n, m) * (base / static_cast<double>(n * n + m * m));
        }
        out.at(n) = two_pi * sum;
    }
    return out;
}

inline CircleField apply_multiplier(const FourierMultiplierZ& op, const CircleField& f) {
    CircleField out(f.nz);
    for (int n = f.n_min(); n <= f.n_max(); ++n) out.at(n) = op.lambda(n) * f.at(n);
    return out;
}

// ---------------------------------------------------------------------------
// Quantization on the grid.  Direct summation; cost is O(modes) per output
// point, fine at desk scale.
// ---------------------------------------------------------------------------

namespace detail {

// N-th roots of unity; e^{i 2 pi j q / N} is looked up at (j q) mod N so
// periodicity is exact.
inline std::vector<cplx> unit_roots(int N) {
    std::vector<cplx> w(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) w[j] = std::polar(1.0, two_pi * j / N);
    return w;
}

inline const cplx& root_at(const std::vector<cplx>& w, long long j) {
    const long long N = static_cast<long long>(w.size());
    return w[static_cast<std::size_t>(((j % N) + N) % N)];
}

}  // namespace detail

// Direct DFT synthesis, staged per dimension: O(nz ny (nz + ny)).
inline std::vector<cplx> grid_values(const GridField& F) {
    const int nz = F.grid.nz, ny = F.grid.ny;
    const std::vector<cplx> wy = detail::unit_roots(ny);
    const std::vector<cplx> wz = detail::unit_roots(nz);

    // partial(n, l) = sum_m c(n, m) e^{i m y_l}
    std::vector<cplx> partial(static_cast<std::size_t>(nz) * ny);
    for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
        const std::size_t row = static_cast<std::size_t>(n + nz / 2) * ny;
        for (int l = 0; l < ny; ++l) {
            cplx sum(0.0);
            for (int m = F.grid.m_min(); m <= F.grid.m_max(); ++m) {
                sum += F.at(n, m) * detail::root_at(wy, static_cast<long long>(m) * l);
            }
            partial[row + l] = sum;
        }
    }

    std::vector<cplx> vals(static_cast<std::size_t>(nz) * ny);
    for (int k = 0; k < nz; ++k) {
        for (int l = 0; l < ny; ++l) {
            cplx sum(0.0);
            for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
                sum += partial[static_cast<std::size_t>(n + nz / 2) * ny + l] *
                       detail::root_at(wz, static_cast<long long>(n) * k);
            }
            vals[static_cast<std::size_t>(k) * ny + l] = sum;
        }
    }
    return vals;
}

// Direct DFT analysis, staged like grid_values.
inline GridField field_from_values(const std::vector<cplx>& vals, const TorusGrid& grid) {
    if (vals.size() != static_cast<std::size_t>(grid.nz) * grid.ny) {
        throw std::invalid_argument("value array does not match the grid");
    }
    const int nz = grid.nz, ny = grid.ny;
    const std::vector<cplx> wy = detail::unit_roots(ny);
    const std::vector<cplx> wz = detail::unit_roots(nz);

    // partial(k, m) = sum_l v(k, l) e^{-i m y_l}
    std::vector<cplx> partial(static_cast<std::size_t>(nz) * ny);
    for (int k = 0; k < nz; ++k) {
        const std::size_t row = static_cast<std::size_t>(k) * ny;
        for (int m = grid.m_min(); m <= grid.m_max(); ++m) {
            cplx sum(0.0);
            for (int l = 0; l < ny; ++l) {
                sum += vals[row + l] * detail::root_at(wy, -static_cast<long long>(m) * l);
            }
            partial[row + (m + ny / 2)] = sum;
        }
    }

    GridField out(grid);
    const double norm = 1.0 / (static_cast<double>(nz) * ny);
    for (int n = grid.n_min(); n <= grid.n_max(); ++n) {
        for (int m = grid.m_min(); m <= grid.m_max(); ++m) {
            cplx sum(0.0);
            for (int k = 0; k < nz; ++k) {
                sum += partial[static_cast<std::size_t>(k) * ny + (m + ny / 2)] *
                       detail::root_at(wz, -static_cast<long long>(n) * k);
            }
            out.at(n, m) = sum * norm;
        }
    }
    return out;
}

inline std::vector<cplx> circle_values(const CircleField& f) {
    std::vector<cplx> vals(static_cast<std::size_t>(f.nz));
    for (int k = 0; k < f.nz; ++k) {
        const double z = two_pi * k / f.nz;
        cplx sum(0.0);
        for (int n = f.n_min(); n <= f.n_max(); ++n) {
            if (f.at(n) == cplx(0.0)) continue;
            sum += f.at(n) * std::polar(1.0, n * z);
        }
        vals[k] = sum;
    }
    return vals;
}

inline CircleField circle_from_values(const std::vector<cplx>& vals, int nz) {
    if (vals.size() != static_cast<std::size_t>(nz)) {
        throw std::invalid_argument("value array does not match the circle grid");
    }
    CircleField out(nz);
    for (int n = out.n_min(); n <= out.n_max(); ++n) {
        cplx sum(0.0);
        for (int k = 0; k < nz; ++k) {
            sum += vals[k] * std::polar(1.0, -n * two_pi * k / nz);
        }
        out.at(n) = sum / static_cast<double>(nz);
    }
    return out;
}

// Kohn-Nirenberg quantization on X:
//   (A u)(z_k, y_l) = sum_{n,m} e^{i(n z_k + m y_l)} a(z_k, y_l; n, m) u(n, m),
// transformed back to coefficients.
template <class Eval>
    requires std::invocable<Eval&, double, double, double, double>
GridField apply_pdo(Eval&& a, const GridField& u) {
    const TorusGrid& g = u.grid;
    std::vector<cplx> vals(static_cast<std::size_t>(g.nz) * g.ny);
    for (int k = 0; k < g.nz; ++k) {
        const double z = two_pi * k / g.nz;
        for (int l = 0; l < g.ny; ++l) {
            const double y = two_pi * l / g.ny;
            cplx sum(0.0);
            for (int n = g.n_min(); n <= g.n_max(); ++n) {
                for (int m = g.m_min(); m <= g.m_max(); ++m) {
                    const cplx& c = u.at(n, m);
                    if (c == cplx(0.0)) continue;
                    sum += c * a(z, y, static_cast<double>(n), static_cast<double>(m)) *
                           std::polar(1.0, n * z + m * y);
                }
            }
            vals[static_cast<std::size_t>(k) * g.ny + l] = sum;
        }
    }
    return field_from_values(vals, g);
}

inline GridField apply_pdo(const ClassicalSymbol& a, const GridField& u) {
    return apply_pdo(
        [&a](double z, double y, double zeta, double eta) {
            return eval_symbol(a, z, y, zeta, eta);
        },
        u);
}

// T . A for a quantized symbol: evaluates A u on the row y = 0 only and
// returns the resulting circle field.  Cost O(nz * modes) instead of the
// full grid sweep.
template <class Eval>
    requires std::invocable<Eval&, double, double, double, double>
CircleField trace_apply_pdo(Eval&& a, const GridField& u) {
    const TorusGrid& g = u.grid;
    std::vector<cplx> row(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        const double z = two_pi * k / g.nz;
        cplx sum(0.0);
        for (int n = g.n_min(); n <= g.n_max(); ++n) {
            for (int m = g.m_min(); m <= g.m_max(); ++m) {
                const cplx& c = u.at(n, m);
                if (c == cplx(0.0)) continue;
                sum += c * a(z, 0.0, static_cast<double>(n), static_cast<double>(m)) *
                       std::polar(1.0, n * z);
            }
        }
        row[k] = sum;
    }
    return circle_from_values(row, g.nz);
}

inline CircleField trace_apply_pdo(const ClassicalSymbol& a, const GridField& u) {
    return trace_apply_pdo(
        [&a](double z, double y, double zeta, double eta) {
            return eval_symbol(a, z, y, zeta, eta);
        },
        u);
}

// Kohn-Nirenberg quantization on Z: (B f)(z_k) = sum_n e^{i n z_k} b(z_k; n) f(n).
template <class Eval>
    requires std::invocable<Eval&, double, double>
CircleField apply_pdo_circle(Eval&& b, const CircleField& f) {
    std::vector<cplx> vals(static_cast<std::size_t>(f.nz));
    for (int k = 0; k < f.nz; ++k) {
        const double z = two_pi * k / f.nz;
        cplx sum(0.0);
        for (int n = f.n_min(); n <= f.n_max(); ++n) {
            if (f.at(n) == cplx(0.0)) continue;
            sum += f.at(n) * b(z, static_cast<double>(n)) * std::polar(1.0, n * z);
        }
        vals[k] = sum;
    }
    return circle_from_values(vals, f.nz);
}

inline CircleField apply_pdo_circle(const BoundarySymbol& b, const CircleField& f) {
    return apply_pdo_circle(
        [&b](double z, double zeta) { return eval_boundary_symbol(b, z, zeta); }, f);
}

// ---------------------------------------------------------------------------
// Pairings.  <F, G>_X = (2pi)^2 sum c_F conj(c_G); <f, g>_Z = 2pi sum f conj(g).
// ---------------------------------------------------------------------------

inline cplx inner_product_x(const GridField& F, const GridField& G) {
    if (F.grid.nz != G.grid.nz || F.grid.ny != G.grid.ny) {
        throw std::invalid_argument("grid mismatch in inner product");
    }
    cplx sum(0.0);
    for (std::size_t i = 0; i < F.coef.size(); ++i) sum += F.coef[i] * std::conj(G.coef[i]);
    return two_pi * two_pi * sum;
}

inline cplx inner_product_z(const CircleField& f, const CircleField& g) {
    if (f.nz != g.nz) throw std::invalid_argument("grid mismatch in inner product");
    cplx sum(0.0);
    for (std::size_t i = 0; i < f.coef.size(); ++i) sum += f.coef[i] * std::conj(g.coef[i]);
    return two_pi * sum;
}

inline double norm_x(const GridField& F) { return std::sqrt(std::abs(inner_product_x(F, F))); }
inline double norm_z(const CircleField& f) { return std::sqrt(std::abs(inner_product_z(f, f))); }

// Q_A(F) = <A F, F>_X for any operator A on grid fields.
template <class Op>
cplx quadratic_form(Op&& A, const GridField& F) {
    return inner_product_x(A(F), F);
}

}  // namespace conormal
