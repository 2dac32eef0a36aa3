#pragma once

#include "twinfocal/cli/csv.hpp"
#include "twinfocal/cli/run_config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace twinfocal::cli {

// Labeled key=value report of the pump-focus quantities, PSF widths and
// width reductions. threshold > 0 adds the two-point resolution limits.
std::vector<std::string> params_report(const RunConfig& rc, double threshold);

struct WaistResult {
    double w0;
    double fwhm_twin;
    double reduction_pct;  // against the confocal FWHM
};

struct CompareResult {
    Table table;  // y_m, confocal, twin_<w0> ...
    double fwhm_confocal;
    std::vector<WaistResult> waists;
};

// Confocal and twin profiles on the signed coordinates of the scan line of
// rc, one twin curve per pump waist.
CompareResult compare(const RunConfig& rc, const std::vector<double>& waists);

// w0_m, r0_m, fwhm_twin_m, reduction_pct for steps waists spaced evenly on
// [w0_min, w0_max].
Table sweep(const RunConfig& rc, double w0_min, double w0_max, std::size_t steps);

// Line: y_m, rate. Grid: metadata preamble and an ny-row matrix.
Table scan_table(const ScanImage& image);

// Entry point of the twinfocal tool. Returns the process exit status:
// 0 success, 2 configuration error, 3 numerical error, 4 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twinfocal::cli
