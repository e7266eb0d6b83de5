// Command-line front end: theorem verification runs, DN spectrum dumps,
// and boundary-symbol tables, with CSV/JSON output.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conormal/report_io.hpp"
#include "conormal/symbol_spec.hpp"
#include "conormal/symbols.hpp"
#include "conormal/torus.hpp"
#include "conormal/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string grid = "256x256";
    int nmax = 20;
    double tol = 1e-10;
    std::string symbol;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 20260808ULL;
};

conormal::TorusGrid parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("grid must be NZxNY, e.g. 256x256");
    }
    const int nz = std::stoi(s.substr(0, x));
    const int ny = std::stoi(s.substr(x + 1));
    return conormal::TorusGrid(nz, ny);
}

// Stream to --out or stdout.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

conormal::ParsedSymbol load_symbol(const std::string& spec) {
    conormal::ParsedSymbol parsed = conormal::parse_symbol_spec(spec);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    return parsed;
}

int emit_report(const conormal::VerificationReport& rep, const RunConfig& cfg) {
    OutputSink sink(cfg.out);
    if (cfg.format == "csv") {
        conormal::write_csv(rep, sink.stream());
    } else {
        conormal::write_json(rep, sink.stream());
    }
    return rep.passed ? kExitPass : kExitFail;
}

int run_verify(const std::string& theorem, const RunConfig& cfg) {
    const conormal::TorusGrid grid = parse_grid(cfg.grid);
    if (cfg.nmax < 1 || cfg.nmax >= grid.nz / 2) {
        std::cerr << "error: nmax must satisfy 1 <= nmax < NZ/2 (modes live on the grid)\n";
        return kExitUsage;
    }
    conormal::VerifyOptions opts;
    opts.quad_tol = cfg.tol;
    opts.seed = cfg.seed;

    if (theorem == "lemma-ext") {
        std::mt19937_64 rng(cfg.seed);
        const conormal::CircleField f = conormal::random_band_limited_circle(
            grid.nz, std::min(grid.nz / 4, 16), rng);
        return emit_report(conormal::verify_lemma_ext(f, grid, opts), cfg);
    }
    if (theorem == "thm2") {
        std::vector<int> ns;
        for (int n = 3; n <= cfg.nmax; ++n) ns.push_back(n);
        if (ns.empty()) {
            std::cerr << "error: thm2 needs nmax >= 3\n";
            return kExitUsage;
        }
        return emit_report(conormal::verify_theorem2(ns, grid, opts), cfg);
    }

    const std::string default_symbol = theorem == "thm1" ? "resolvent(1)" : "one";
    const conormal::ParsedSymbol parsed =
        load_symbol(cfg.symbol.empty() ? default_symbol : cfg.symbol);

    if (theorem == "thm1") {
        if (parsed.symbol.degree() >= -1.0) {
            std::cerr << "error: the trace-extension reduction applies to symbols of "
                         "degree < -1; '"
                      << parsed.symbol.description << "' has degree "
                      << parsed.symbol.degree() << "\n";
            return kExitUsage;
        }
        std::vector<int> ns;
        for (int n = 1; n <= cfg.nmax; ++n) ns.push_back(n);
        return emit_report(conormal::verify_theorem1(parsed.symbol, ns, grid, opts), cfg);
    }
    if (theorem == "thm3") {
        if (parsed.symbol.degree() >= 3.0) {
            std::cerr << "error: the Poisson conjugation applies to symbols of degree < 3; '"
                      << parsed.symbol.description << "' has degree "
                      << parsed.symbol.degree() << "\n";
            return kExitUsage;
        }
        std::vector<int> ns;
        for (int n = std::min(3, cfg.nmax); n <= cfg.nmax; ++n) ns.push_back(n);
        return emit_report(conormal::verify_theorem3(parsed.symbol, ns, grid, opts), cfg);
    }
    std::cerr << "error: unknown theorem '" << theorem << "'\n";
    return kExitUsage;
}

int run_dn_spectrum(const RunConfig& cfg) {
    OutputSink sink(cfg.out);
    std::ostream& os = sink.stream();
    os << "n,dn,principal,ratio_minus_1\n";
    for (int n = -cfg.nmax; n <= cfg.nmax; ++n) {
        const double dn = conormal::dn_eigenvalue(n);
        const double principal = 2.0 * std::abs(n);
        const double ratio =
            n == 0 ? std::numeric_limits<double>::quiet_NaN() : dn / principal - 1.0;
        os << n << "," << conormal::format_double(dn) << ","
           << conormal::format_double(principal) << "," << conormal::format_double(ratio)
           << "\n";
    }
    return kExitPass;
}

// Tabulates a predicted boundary symbol on (z, zeta): zeta = 1..nmax,
// z over the grid row when the symbol depends on z, else z = 0 only.
int run_symbol_table(const RunConfig& cfg, bool poisson_conjugation) {
    const conormal::TorusGrid grid = parse_grid(cfg.grid);
    const conormal::ParsedSymbol parsed =
        load_symbol(cfg.symbol.empty() ? (poisson_conjugation ? "one" : "resolvent(1)")
                                       : cfg.symbol);
    if (poisson_conjugation && parsed.symbol.degree() >= 3.0) {
        std::cerr << "error: the Poisson conjugation applies to symbols of degree < 3; '"
                  << parsed.symbol.description << "' has degree " << parsed.symbol.degree()
                  << "\n";
        return kExitUsage;
    }
    if (!poisson_conjugation && parsed.symbol.degree() >= -1.0) {
        std::cerr << "error: the trace-extension reduction applies to symbols of degree "
                     "< -1; '"
                  << parsed.symbol.description << "' has degree " << parsed.symbol.degree()
                  << "\n";
        return kExitUsage;
    }
    const conormal::BoundarySymbol b =
        poisson_conjugation ? conormal::poisson_conjugation_symbol(parsed.symbol, cfg.tol)
                            : conormal::trace_symbol(parsed.symbol, cfg.tol);

    std::vector<double> z_points;
    if (parsed.symbol.z_dependent) {
        for (int k = 0; k < grid.nz; ++k) z_points.push_back(conormal::two_pi * k / grid.nz);
    } else {
        z_points.push_back(0.0);
    }

    OutputSink sink(cfg.out);
    std::ostream& os = sink.stream();
    os << "z,zeta,re,im\n";
    for (int zeta = 1; zeta <= cfg.nmax; ++zeta) {
        for (double z : z_points) {
            const conormal::cplx v =
                conormal::eval_boundary_symbol(b, z, static_cast<double>(zeta));
            os << conormal::format_double(z) << "," << zeta << ","
               << conormal::format_double(v.real()) << ","
               << conormal::format_double(v.imag()) << "\n";
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for trace-extension symbol calculus on the flat torus"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string theorem;

    app.set_config("--config", "", "read defaults from an INI file; flags win");

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--grid", cfg.grid, "grid sizes as NZxNY")->capture_default_str();
        cmd->add_option("--nmax", cfg.nmax, "largest mode / zeta value")
            ->capture_default_str();
        cmd->add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
        cmd->add_option("--symbol", cfg.symbol,
                        "symbol preset or expression (see README for the mini-language)");
        cmd->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", cfg.out, "output path (default: stdout)");
        cmd->add_option("--seed", cfg.seed, "seed for random test fields")
            ->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand("verify", "run a theorem verification report");
    verify->add_option("theorem", theorem, "one of lemma-ext, thm1, thm2, thm3")
        ->required()
        ->check(CLI::IsMember({"lemma-ext", "thm1", "thm2", "thm3"}));
    add_common(verify);

    CLI::App* dn = app.add_subcommand("dn-spectrum",
                                      "tabulate the DN multiplier against 2|n|");
    add_common(dn);

    CLI::App* st = app.add_subcommand("symbol-trace",
                                      "tabulate the predicted trace-reduction symbol");
    add_common(st);

    CLI::App* pc = app.add_subcommand("pconj",
                                      "tabulate the predicted Poisson-conjugation symbol");
    add_common(pc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(theorem, cfg);
        if (dn->parsed()) return run_dn_spectrum(cfg);
        if (st->parsed()) return run_symbol_table(cfg, false);
        if (pc->parsed()) return run_symbol_table(cfg, true);
    } catch (const conormal::DegreeTooHighError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
