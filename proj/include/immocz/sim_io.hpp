#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "immocz/simulator.hpp"

namespace immocz {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(Scheme scheme);
std::string to_string(Detector detector);
Scheme parse_scheme(const std::string& token);
Detector parse_detector(const std::string& token);

/// Flat key=value sweep configuration ('#' starts a comment). Keys: scheme,
/// detector, N, K, L_ch, R, ebn0_points, trials_per_point, master_seed,
/// workers, channel_normalization, ebn0_convention. trials_per_point takes a
/// single count or one count per Eb/N0 point.
SimConfig parse_sim_config(std::istream& in, const std::string& source_name);
SimConfig load_sim_config(const std::string& path);

/// Built-in parameter sets for the standard BER comparisons. Each preset
/// expands to four sweeps: IM-MOCZ and the MOCZ baseline, each under both
/// detectors, on a -5..43 dB grid in 3 dB steps with the per-range default
/// trial counts.
std::vector<std::string> preset_names();
std::vector<SimConfig> preset_runs(const std::string& name, std::uint64_t master_seed,
                                   int workers);

/// Default trial count for one Eb/N0 point (more trials at high Eb/N0 where
/// errors are rare).
std::int64_t default_trials_for(double ebn0_db);

std::string csv_header();
std::string csv_rows(const BerCurve& curve);

/// Writes content to path via a temporary file plus rename, so readers never
/// observe a truncated file.
void write_file_atomic(const std::string& path, const std::string& content);

/// Companion matplotlib script that renders BER-vs-Eb/N0 curves from the CSV.
std::string plot_script_for(const std::string& csv_path);

/// Received-signal text format: one sample per line, "re im" whitespace
/// separated. Throws IoError naming the first offending line.
ComplexVector read_signal_file(const std::string& path, int expected_length);

/// Codebook dump: one line per zero,
/// "book_index,sector,role,re,im" with 16 significant digits.
std::string format_codebook_dump(const CodebookSet& set);

}  // namespace immocz
