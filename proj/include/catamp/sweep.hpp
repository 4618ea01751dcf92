#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace catamp {

inline constexpr const char* kVersion = "1.0.0";

/// Inclusive linear range start..stop sampled at `steps` points
/// (steps = 1 -> just start).
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> values() const;
    /// Parse "start:stop:steps" or a bare number.
    static Range parse(const std::string& s);
};

struct SweepConfig {
    std::string experiment;
    std::map<std::string, Range> axes;    // in axis order for the experiment
    std::map<std::string, double> fixed;  // scalar parameters
    std::string seed = "squeezed-photon"; // iterate seed / input mode selector
    std::string parity = "odd";           // input parity where applicable
    int k = 8;
    int grid = 64;
    std::string out;                      // output path ("" -> stdout)
    std::string format = "csv";           // csv | json
    int jobs = 0;                         // 0 -> hardware concurrency
    bool quiet = false;
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // preformatted cells
    int n_underflow = 0;
};

/// Execute the configured experiment. Throws on invalid configs
/// (std::invalid_argument) and propagates numeric failures.
SweepTable run_sweep(const SweepConfig& cfg);

/// Format a double with 17 significant digits (lossless round-trip).
std::string format_num(double v);

/// Write data + manifest. CSV: data file plus a sibling
/// <out>.manifest.json; JSON: single document with inline manifest.
/// Writes are atomic (temp file + rename). Empty cfg.out -> stdout.
void write_outputs(const SweepConfig& cfg, const SweepTable& table,
                   double wall_seconds);

}  // namespace catamp
