#pragma once

#include <cstdio>
#include <ctime>
#include <ostream>
#include <string>

#include <json.hpp>

#include "conormal/torus.hpp"
#include "conormal/verify.hpp"

namespace conormal {

// Fixed shortest-round-trip formatting, '.' decimal, locale-free.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["schema"] = 1;
    j["theorem_id"] = to_string(rep.theorem_id);
    j["modes"] = rep.modes;
    j["errors"] = rep.errors;
    if (rep.slope_fitted) {
        j["fitted_slope"] = rep.fitted_slope;
    } else {
        j["fitted_slope"] = nullptr;
    }
    j["tolerance"] = rep.tolerance;
    j["passed"] = rep.passed;

    nlohmann::json meta;
    meta["grid"] = {rep.grid_nz, rep.grid_ny};
    meta["symbol"] = rep.symbol_description;
    meta["seed"] = rep.seed;
    meta["tolerances"] = rep.tolerances;
    meta["notes"] = rep.notes;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.named_checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    meta["named_checks"] = checks;
    j["metadata"] = meta;
    return j;
}

// The timestamp is informational only; consumers comparing reports strip
// the generated_at field.
inline void write_json(const VerificationReport& rep, std::ostream& os,
                       bool with_timestamp = true) {
    nlohmann::json j = to_json(rep);
    if (with_timestamp) {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    os << j.dump(2) << "\n";
}

inline void write_csv(const VerificationReport& rep, std::ostream& os) {
    os << "mode,error,tolerance,passed\n";
    for (std::size_t i = 0; i < rep.modes.size(); ++i) {
        const bool ok = rep.errors[i] <= rep.tolerances[i];
        os << rep.modes[i] << "," << format_double(rep.errors[i]) << ","
           << format_double(rep.tolerances[i]) << "," << (ok ? 1 : 0) << "\n";
    }
    for (const auto& c : rep.named_checks) {
        os << c.name << "," << format_double(c.value) << "," << format_double(c.tolerance)
           << "," << (c.passed ? 1 : 0) << "\n";
    }
}

inline void write_csv(const GridField& F, std::ostream& os) {
    os << "n,m,re,im\n";
    for (int n = F.grid.n_min(); n <= F.grid.n_max(); ++n) {
        for (int m = F.grid.m_min(); m <= F.grid.m_max(); ++m) {
            const cplx& c = F.at(n, m);
            os << n << "," << m << "," << format_double(c.real()) << ","
               << format_double(c.imag()) << "\n";
        }
    }
}

inline void write_csv(const CircleField& f, std::ostream& os) {
    os << "n,re,im\n";
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        const cplx& c = f.at(n);
        os << n << "," << format_double(c.real()) << "," << format_double(c.imag())
           << "\n";
    }
}

}  // namespace conormal
