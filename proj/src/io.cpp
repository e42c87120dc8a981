#include "ovals/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ovals {

// ---------------------------------------------------------------------------
// decimal strings
// ---------------------------------------------------------------------------

std::string format_decimal(double x) {
  // shortest %.Ng form whose re-parse is bit-identical; 17 always works
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

double parse_decimal(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double x = std::strtod(begin, &end);
  while (end != begin && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || *end != '\0')
    throw std::domain_error("not a decimal number: '" + s + "'");
  return x;
}

// a numeric JSON field that may be a number or a decimal string
static double json_number(const json& j) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  return j.get<double>();
}

// ---------------------------------------------------------------------------
// curve specification files
// ---------------------------------------------------------------------------

json curve_spec_json(const OvalCurve& curve) {
  json coeffs = json::array();
  coeffs.push_back(format_decimal(curve.c0()));
  const auto& ca = curve.cos_coeffs();
  const auto& cb = curve.sin_coeffs();
  const std::size_t deg = std::max(ca.size(), cb.size());
  for (std::size_t n = 0; n < deg; ++n) {
    coeffs.push_back(format_decimal(n < ca.size() ? ca[n] : 0.0));
    coeffs.push_back(format_decimal(n < cb.size() ? cb[n] : 0.0));
  }
  json spec;
  spec["preset"] = curve.preset();
  spec["coeffs"] = coeffs;
  spec["grid_resolution"] = curve.grid_resolution();
  return spec;
}

OvalCurve curve_from_spec(const json& spec) {
  if (!spec.contains("coeffs") || !spec["coeffs"].is_array() || spec["coeffs"].empty())
    throw std::domain_error("curve spec: 'coeffs' must be a non-empty array");
  const json& coeffs = spec["coeffs"];
  const double c0 = json_number(coeffs[0]);
  std::vector<double> ca, cb;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    const double v = json_number(coeffs[i]);
    if (i % 2 == 1)
      ca.push_back(v);
    else
      cb.push_back(v);
  }
  cb.resize(ca.size(), 0.0);
  const int grid = spec.value("grid_resolution", 2048);
  OvalCurve curve(c0, ca, cb, grid);
  if (spec.contains("preset")) curve.set_preset(spec["preset"].get<std::string>());
  return curve;
}

void save_curve_spec(const std::string& path, const OvalCurve& curve) {
  write_text(path, curve_spec_json(curve).dump(2) + "\n");
}

OvalCurve load_curve_spec(const std::string& path) {
  return curve_from_spec(json::parse(read_text(path)));
}

OvalCurve resolve_curve(const std::string& arg) {
  if (arg == "disk") return OvalCurve::disk();
  if (arg.rfind("ellipse(", 0) == 0) {
    double a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(arg.c_str(), "ellipse(%lf,%lf%c", &a, &b, &tail) != 3 || tail != ')')
      throw std::domain_error("curve: expected ellipse(a,b), got '" + arg + "'");
    return OvalCurve::ellipse(a, b);
  }
  if (std::filesystem::exists(arg)) return load_curve_spec(arg);
  throw std::domain_error("curve: not a preset and no such file: '" + arg + "'");
}

// ---------------------------------------------------------------------------
// lattice dumps
// ---------------------------------------------------------------------------

void save_lattice(const std::string& path, const UnimodularLattice& L) {
  std::string text;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) text += format_decimal(L.basis(r, c)) + "\n";
  write_text(path, text);
}

UnimodularLattice load_lattice(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string tok;
  double e[4];
  for (double& v : e) {
    if (!(in >> tok)) throw std::domain_error("lattice dump " + path + ": expected 4 entries");
    v = parse_decimal(tok);
  }
  if (in >> tok) throw std::domain_error("lattice dump " + path + ": trailing data");
  Mat2 B;
  B << e[0], e[1], e[2], e[3];
  return lattice_from_basis(B);
}

// ---------------------------------------------------------------------------
// experiment configuration
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (curve.empty()) throw std::domain_error("config: curve must be set");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0)) throw std::domain_error("config: t values must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw std::domain_error("config: t grid must be strictly ascending");
  }
  for (double A : A_grid)
    if (!(A > 0)) throw std::domain_error("config: A must be positive");
  if (m_max < 1) throw std::domain_error("config: m_max must be >= 1");
  if (tolerance < 0) throw std::domain_error("config: tolerance must be >= 0");
  if (n_theta < 1) throw std::domain_error("config: n_theta must be >= 1");
  if (workers < 1) throw std::domain_error("config: workers must be >= 1");
  if (min_norm < 0 || min_norm > 1.05)
    throw std::domain_error("config: min_norm must lie in [0, 1.05]");
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["curve"] = cfg.curve;
  json ts = json::array();
  for (double t : cfg.t_grid) ts.push_back(format_decimal(t));
  j["t"] = ts;
  json as = json::array();
  for (double A : cfg.A_grid) as.push_back(format_decimal(A));
  j["A"] = as;
  j["m_max"] = cfg.m_max;
  j["tolerance"] = format_decimal(cfg.tolerance);
  j["alpha"] = json::array({format_decimal(cfg.alpha.x()), format_decimal(cfg.alpha.y())});
  j["n_lattice"] = cfg.n_lattice;
  j["n_theta"] = cfg.n_theta;
  j["seed"] = cfg.seed;
  j["min_norm"] = format_decimal(cfg.min_norm);
  j["workers"] = cfg.workers;
  j["out"] = cfg.out_dir;
  j["fixed_lattice"] = cfg.fixed_lattice;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.curve = j.value("curve", cfg.curve);
  cfg.t_grid.clear();
  if (j.contains("t"))
    for (const auto& v : j["t"]) cfg.t_grid.push_back(json_number(v));
  cfg.A_grid.clear();
  if (j.contains("A"))
    for (const auto& v : j["A"]) cfg.A_grid.push_back(json_number(v));
  cfg.m_max = j.value("m_max", cfg.m_max);
  if (j.contains("tolerance")) cfg.tolerance = json_number(j["tolerance"]);
  if (j.contains("alpha"))
    cfg.alpha = Vec2(json_number(j["alpha"][0]), json_number(j["alpha"][1]));
  cfg.n_lattice = j.value("n_lattice", cfg.n_lattice);
  cfg.n_theta = j.value("n_theta", cfg.n_theta);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("min_norm")) cfg.min_norm = json_number(j["min_norm"]);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.out_dir = j.value("out", cfg.out_dir);
  cfg.fixed_lattice = j.value("fixed_lattice", cfg.fixed_lattice);
  return cfg;
}

// ---------------------------------------------------------------------------
// JSON-lines records
// ---------------------------------------------------------------------------

std::string error_sample_record(std::uint64_t seed, const ErrorSample& s) {
  json j;
  j["seed"] = seed;
  j["t"] = format_decimal(s.t);
  j["alpha"] = json::array({format_decimal(s.alpha.x()), format_decimal(s.alpha.y())});
  j["count"] = s.count;
  j["error"] = format_decimal(s.error);
  j["normalized"] = format_decimal(s.normalized);
  json approx = json::object();
  for (const auto& [name, value] : s.approximants) approx[name] = format_decimal(value);
  j["approximants"] = std::move(approx);
  return j.dump();
}

std::string gap_sample_record(const GapSample& s) {
  json j;
  j["seed"] = s.seed;
  j["A"] = format_decimal(s.A);
  j["m_max"] = s.m_max;
  j["t"] = format_decimal(s.t);
  j["delta"] = format_decimal(s.delta);
  j["s_A_prime"] = format_decimal(s.s_A_prime);
  j["normalized_error"] = format_decimal(s.normalized_error);
  return j.dump();
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open " + path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(json::parse(line));
  }
  return out;
}

std::vector<double> read_jsonl_field(const std::string& path, const std::string& field) {
  std::vector<double> out;
  for (const json& rec : read_jsonl(path)) {
    if (!rec.is_object() || !rec.contains(field)) continue;
    const json& v = rec[field];
    if (v.is_number() || v.is_string()) out.push_back(json_number(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

json siegel_report_json(const SiegelReport& r) {
  json j;
  j["formula"] = r.formula;
  j["mode"] = r.mode;
  j["n"] = r.n;
  j["predicted"] = format_decimal(r.predicted);
  j["estimate"] = format_decimal(r.estimate);
  j["std_error"] = format_decimal(r.std_error);
  j["z"] = format_decimal(r.z);
  j["verdict"] = r.verdict;
  return j;
}

// ---------------------------------------------------------------------------
// distribution files and histograms
// ---------------------------------------------------------------------------

void write_distribution(const std::string& path, const json& header,
                        const std::vector<double>& sorted_values) {
  std::ofstream out(path);
  if (!out) throw std::domain_error("cannot write " + path);
  out << header.dump() << "\n";
  for (double v : sorted_values) out << format_decimal(v) << "\n";
}

std::pair<json, std::vector<double>> read_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::domain_error(path + ": missing header line");
  json header = json::parse(line);
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    values.push_back(parse_decimal(line));
  }
  return {std::move(header), std::move(values)};
}

void write_histogram_csv(const std::string& path, const std::vector<HistogramRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::domain_error("cannot write " + path);
  out << "bin_left,bin_right,count,cum_fraction\n";
  for (const HistogramRow& r : rows)
    out << format_decimal(r.left) << "," << format_decimal(r.right) << "," << r.count << ","
        << format_decimal(r.cum_fraction) << "\n";
}

// ---------------------------------------------------------------------------
// small file helpers
// ---------------------------------------------------------------------------

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::domain_error("cannot create directory " + dir + ": " + ec.message());
}

std::string path_join(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::domain_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ovals
