// Artifact plumbing shared by the experiment runner and the tests: decimal
// round-trip formatting, curve specification files, lattice dumps, the
// experiment configuration echoed into every output, JSON-lines sample
// records, distribution files (one JSON header line followed by sorted
// decimal values, one per line), and CSV histograms.
//
// Everything here is deterministic text: a value written by format_decimal
// parses back to the identical double, so re-running a command from the
// config echo embedded in its own output reproduces the bytes.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ovals/common.hpp"
#include "ovals/counting.hpp"
#include "ovals/geometry.hpp"
#include "ovals/lattice.hpp"
#include "ovals/siegel.hpp"
#include "ovals/stats.hpp"

namespace ovals {

using json = nlohmann::ordered_json;

// --- decimal strings -------------------------------------------------------

// shortest fixed formatting that round-trips (exact to the bit on re-parse)
std::string format_decimal(double x);
// strict parse of a full decimal token; throws std::domain_error on junk
double parse_decimal(const std::string& s);

// --- curve specification files ---------------------------------------------

// {"preset": ..., "coeffs": [c0, a1, b1, ...], "grid_resolution": n} with
// coefficients as decimal strings, cos/sin interleaved after c0
json curve_spec_json(const OvalCurve& curve);
OvalCurve curve_from_spec(const json& spec);
void save_curve_spec(const std::string& path, const OvalCurve& curve);
OvalCurve load_curve_spec(const std::string& path);
// accepts "disk", "ellipse(a,b)", or a spec-file path
OvalCurve resolve_curve(const std::string& arg);

// --- lattice dumps ---------------------------------------------------------

// four decimal-string entries, row-major, one per line
void save_lattice(const std::string& path, const UnimodularLattice& L);
UnimodularLattice load_lattice(const std::string& path);

// --- experiment configuration ----------------------------------------------

// one bag of knobs for every subcommand; echoed verbatim into each artifact
struct ExperimentConfig {
  std::string curve = "disk";     // preset name or spec-file path
  std::vector<double> t_grid;     // ascending dilation grid
  std::vector<double> A_grid;     // cutoff(s); zipped with t when same length
  int m_max = 256;                // multiplicity-series truncation
  double tolerance = 0.0;         // > 0: derive m_max from the curve instead
  Vec2 alpha = Vec2::Zero();      // translation of the oval
  std::uint64_t n_lattice = 1000;
  std::uint64_t n_theta = 1;
  std::uint64_t seed = 1;
  double min_norm = 0.0;          // resample lattices while |L|_1 < min_norm
  int workers = 1;
  std::string out_dir = ".";
  std::string fixed_lattice;      // dump path; empty = Haar sampling

  void validate() const;          // throws std::domain_error
};

json config_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);

// --- JSON-lines sample records ---------------------------------------------

// {seed, t, alpha, count, error, normalized, approximants{}}
std::string error_sample_record(std::uint64_t seed, const ErrorSample& s);

struct GapSample {
  std::uint64_t seed = 0;
  double A = 0;
  int m_max = 0;
  double t = 0;
  double delta = 0;             // |normalized error - S_A'|
  double s_A_prime = 0;
  double normalized_error = 0;
};
// {seed, A, m_max, t, delta, s_A_prime, normalized_error}
std::string gap_sample_record(const GapSample& s);

// all JSON objects in a file, one per line; blank lines skipped
std::vector<json> read_jsonl(const std::string& path);
// convenience: numeric field values from every record that carries it
std::vector<double> read_jsonl_field(const std::string& path, const std::string& field);

// --- reports ---------------------------------------------------------------

// {formula, mode, n, predicted, estimate, std_error, z, verdict}
json siegel_report_json(const SiegelReport& r);

// --- distribution files ----------------------------------------------------

// one-line JSON header, then the sorted values, one decimal per line
void write_distribution(const std::string& path, const json& header,
                        const std::vector<double>& sorted_values);
std::pair<json, std::vector<double>> read_distribution(const std::string& path);

// --- histogram CSV ---------------------------------------------------------

// "bin_left,bin_right,count,cum_fraction" header plus one row per bin
void write_histogram_csv(const std::string& path, const std::vector<HistogramRow>& rows);

// --- small file helpers ----------------------------------------------------

void ensure_dir(const std::string& dir);
std::string path_join(const std::string& dir, const std::string& name);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace ovals
