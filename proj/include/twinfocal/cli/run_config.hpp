#pragma once

#include "twinfocal/coincidence.hpp"
#include "twinfocal/scansim.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twinfocal::cli {

// Crystal description as written in a config file. Index functions are
// polynomials: n_o(w) = sum n_o[k] w^k, n_e(w, psi) = sum n_e[k] w^k +
// sum n_e_psi[k] psi^(k+1). A single coefficient is a constant index.
struct DispersionSpec {
    std::vector<double> n_o;
    std::vector<double> n_e;
    std::vector<double> n_e_psi;
    double psi = 0.0;
    double theta_e = 0.0;
    double theta_o = 0.0;
    double L = 0.0;

    DispersionModel model() const;
    bool operator==(const DispersionSpec&) const = default;
};

struct OutputSpec {
    std::string csv_path;
    std::string svg_path;
    int precision = 9;

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    MicroscopeConfig microscope;
    SampleTransmittance sample = Delta{};
    std::optional<DispersionSpec> dispersion;
    std::optional<double> t12;  // s; defaults to the window midpoint when a crystal is given
    QuadratureSpec quadrature;
    ScanPlan scan{LinePlan{{1.0, 0.0}, 0.0, 401}, Instrument::TwinPhoton};
    OutputSpec output;

    // Window for the coincidence gate; open when no crystal is configured.
    TimingWindow timing() const;

    bool operator==(const RunConfig&) const = default;
};

// Built-in configuration used when no --config is given: the reference
// parameter set with a Delta sample and a line scan over +-2 R_airy.
RunConfig default_run_config();

// Parses "section.key = value [unit]" lines; '#' starts a comment. Lengths
// take nm, um, mm, cm or m; angles deg or rad; times fs, ps, ns or s.
// Throws ConfigError naming the key and line.
RunConfig parse_run_config(std::string_view text, const std::string& source = "config");
RunConfig load_run_config(const std::string& path);

// Canonical text form (SI units, round-trip exact doubles).
std::string serialize(const RunConfig& cfg);

// "1mm,8mm,12mm" -> metres. Empty string -> empty list.
std::vector<double> parse_length_list(std::string_view text);

// "widefield", "confocal" or "twin".
Instrument parse_instrument(std::string_view text);

// "351 nm", "0.5um", "2 cm" -> metres.
double parse_length(std::string_view text);

}  // namespace twinfocal::cli
