#include "mphase/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mphase/config.hpp"
#include "mphase/detector.hpp"
#include "mphase/dimest.hpp"
#include "mphase/geometry.hpp"
#include "mphase/raster.hpp"
#include "mphase/report.hpp"
#include "mphase/verify.hpp"
#include "mphase/vicsek.hpp"

namespace mphase::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using KeyValues = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Small parsers

std::vector<Index> parse_alpha_spec(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_int("alpha", text)};
  const int lo = parse_int("alpha", text.substr(0, dots));
  const int hi = parse_int("alpha", text.substr(dots + 2));
  if (lo > hi) throw PreconditionError("alpha sweep " + text + " is empty");
  std::vector<Index> out;
  for (int a = lo; a <= hi; ++a) out.push_back(a);
  return out;
}

std::vector<std::pair<Index, Index>> parse_ranges(const std::string& text) {
  std::vector<std::pair<Index, Index>> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0)
      throw PreconditionError("range '" + item + "' is not first-last");
    out.emplace_back(parse_int("ranges", item.substr(0, dash)),
                     parse_int("ranges", item.substr(dash + 1)));
  }
  if (out.empty()) throw PreconditionError("--ranges is empty");
  return out;
}

void check_ranges(const std::vector<std::pair<Index, Index>>& ranges, Index rows) {
  auto name = [](const std::pair<Index, Index>& r) {
    return std::to_string(r.first) + "-" + std::to_string(r.second);
  };
  if (ranges.empty()) throw PreconditionError("no ranges given");
  for (const auto& r : ranges) {
    if (r.first > r.second) throw PreconditionError("range " + name(r) + " is empty");
    if (r.first < 1 || r.second > rows)
      throw PreconditionError("range " + name(r) + " lies outside [1, " + std::to_string(rows) + "]");
  }
  auto sorted = ranges;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first <= sorted[i - 1].second)
      throw PreconditionError("ranges " + name(sorted[i - 1]) + " and " + name(sorted[i]) +
                              " overlap");
}

namespace {

bool wildcard_match(const char* pattern, const char* text) {
  if (*pattern == '\0') return *text == '\0';
  if (*pattern == '*')
    return wildcard_match(pattern + 1, text) || (*text != '\0' && wildcard_match(pattern, text + 1));
  if (*text == '\0') return false;
  return (*pattern == '?' || *pattern == *text) && wildcard_match(pattern + 1, text + 1);
}

}  // namespace

std::vector<fs::path> resolve_inputs(const std::string& spec) {
  std::vector<fs::path> out;
  const fs::path path(spec);
  const std::string name = path.filename().string();
  if (name.find_first_of("*?") != std::string::npos) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir)) throw DataError("no such directory: " + dir.string());
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && wildcard_match(name.c_str(), entry.path().filename().string().c_str()))
        out.push_back(entry.path());
    if (out.empty()) throw DataError("no files match " + spec);
  } else if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") out.push_back(entry.path());
    if (out.empty()) throw DataError("no .pgm files in " + spec);
  } else {
    if (!fs::is_regular_file(path)) throw DataError("no such file: " + spec);
    out.push_back(path);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

namespace {

// ---------------------------------------------------------------------------
// Requests and output bookkeeping
//
// Every command is first resolved into a request (command, seed, config with all defaults
// filled in, input files with digests). The request is what the manifest stores, and
// `execute` is the only code path that produces outputs, for fresh runs and replays alike.

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file " + path);
  try {
    return parse_key_values(in);
  } catch (const PreconditionError& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

Json key_values_to_json(const KeyValues& values) {
  Json out = Json::object();
  for (const auto& [k, v] : values) out[k] = v;
  return out;
}

KeyValues key_values_from_json(const Json& doc) {
  KeyValues out;
  for (const auto& [k, v] : doc.items()) out[k] = v.get<std::string>();
  return out;
}

Json input_entry(const fs::path& path) {
  Json entry;
  entry["path"] = fs::absolute(path).lexically_normal().string();
  entry["fnv1a64"] = file_digest(path);
  return entry;
}

std::vector<fs::path> input_paths(const Json& request) {
  std::vector<fs::path> out;
  for (const auto& entry : request["inputs"]) out.emplace_back(entry["path"].get<std::string>());
  return out;
}

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  void write(const std::string& relative, const std::function<void(std::ostream&)>& body) {
    const fs::path path = root_ / relative;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    body(out);
    out.flush();
    if (!out) throw DataError("failed writing " + path.string());
    written_.push_back(relative);
  }

  const fs::path& root() const { return root_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

std::string range_name(Index first, Index last) {
  return std::to_string(first) + "-" + std::to_string(last);
}

FrameMatrix load_frames(const Json& request) {
  const auto paths = input_paths(request);
  if (request["config"]["input_kind"] == "fmat") return read_fmat(paths.at(0));
  std::vector<Frame> frames;
  frames.reserve(paths.size());
  for (const auto& p : paths) frames.push_back(read_pgm(p));
  return frames_to_matrix(frames);
}

Json input_for_matrix(const std::string& spec, Json& config) {
  const auto paths = resolve_inputs(spec);
  const bool pgm = paths.size() > 1 || paths[0].extension() == ".pgm";
  config["input_kind"] = pgm ? "pgm" : "fmat";
  Json inputs = Json::array();
  for (const auto& p : paths) inputs.push_back(input_entry(p));
  return inputs;
}

// ---------------------------------------------------------------------------
// Execution

void execute_simulate(const Json& request, OutputDir& dir, std::ostream& out) {
  const SwarmConfig config = swarm_config_from_key_values(key_values_from_json(request["config"]));
  const SwarmTrajectory trajectory = simulate(config);
  dir.write("trajectory.csv", [&](std::ostream& s) { write_trajectory_csv(s, trajectory); });
  dir.write("swarm.cfg", [&](std::ostream& s) { write_key_values(s, to_key_values(config)); });
  out << "simulated " << trajectory.steps() << " steps of " << trajectory.particles()
      << " particles (seed " << config.seed << ")\n";
}

void execute_rasterize(const Json& request, OutputDir& dir, std::ostream& out) {
  const RasterConfig config = raster_config_from_key_values(key_values_from_json(request["config"]));
  std::ifstream in(input_paths(request).at(0));
  if (!in) throw DataError("cannot open trajectory " + input_paths(request)[0].string());
  const SwarmTrajectory trajectory = read_trajectory_csv(in, config.box_side);
  const std::vector<Frame> frames = render_frames(trajectory, config);
  for (std::size_t n = 0; n < frames.size(); ++n)
    dir.write("frames/" + frame_filename(static_cast<Index>(n + 1)),
              [&](std::ostream& s) { write_pgm(s, frames[n]); });
  const FrameMatrix data = frames_to_matrix(frames);
  dir.write("frames.fmat", [&](std::ostream& s) { write_fmat(s, data); });
  out << "rendered " << data.rows() << " frames of " << config.image_side << "x"
      << config.image_side << " pixels\n";
}

Eigen::VectorXd frame_axis(Index first, Index count) {
  return Eigen::VectorXd::LinSpaced(count, static_cast<double>(first),
                                    static_cast<double>(first + count - 1));
}

void execute_detect(const Json& request, OutputDir& dir, std::ostream& out) {
  const Json& config = request["config"];
  const FrameMatrix data = load_frames(request);
  const auto alphas = config["alpha"].get<std::vector<Index>>();
  const bool sweep = alphas.size() > 1;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    DetectOptions options;
    options.alpha = alphas[i];
    options.k = config["k"].get<Index>();
    options.suppression_window = config["suppression_window"][i].get<Index>();
    options.spectra.center = config["center"].get<bool>();
    const Detection result = detect(data, options);

    const std::string prefix = sweep ? "alpha_" + std::to_string(options.alpha) + "/" : "";
    Json report = to_json(result.report);
    report["frames"] = data.rows();
    dir.write(prefix + "report.json", [&](std::ostream& s) { s << report.dump(2) << '\n'; });
    dir.write(prefix + "ratio.csv", [&](std::ostream& s) { write_ratio_csv(s, result.ratios); });
    dir.write(prefix + "sumseries.csv", [&](std::ostream& s) { write_sum_csv(s, result.sums); });
    dir.write(prefix + "top20.csv", [&](std::ostream& s) { write_top_csv(s, result.report); });
    if (config["svg"].get<bool>()) {
      const auto& ratios = result.ratios.ratios;
      dir.write(prefix + "ratio.svg", [&](std::ostream& s) {
        write_line_plot_svg(s, frame_axis(1, ratios.size()), ratios,
                            "singular value ratio, alpha = " + std::to_string(options.alpha),
                            "frame", "sigma_alpha / sigma_1");
      });
      const auto& sums = result.sums.values;
      dir.write(prefix + "sumseries.svg", [&](std::ostream& s) {
        write_line_plot_svg(s, frame_axis(result.sums.first, sums.size()), sums,
                            "moving sum, alpha = " + std::to_string(options.alpha), "frame",
                            "windowed sum of |ratio difference|");
      });
    }
    out << "alpha=" << options.alpha << " selected:";
    for (const Candidate& c : result.report.selected)
      out << ' ' << c.frame << " (" << format_number(c.magnitude) << ')';
    if (result.report.short_selection) out << " [fewer than k]";
    out << '\n';
  }
}

void execute_dimest(const Json& request, OutputDir& dir, std::ostream& out) {
  const Json& config = request["config"];
  const FrameMatrix data = load_frames(request);
  const auto ranges = config["ranges"].get<std::vector<std::pair<Index, Index>>>();
  check_ranges(ranges, data.rows());
  const Index alpha = config["alpha"].get<Index>();
  ResidualOptions options;
  options.max_dimension = config["dmax"].get<Index>();
  options.elbow_tolerance = config["tau"].get<double>();

  Json summary;
  summary["alpha"] = alpha;
  summary["dmax"] = options.max_dimension;
  summary["tau"] = options.elbow_tolerance;
  summary["ranges"] = Json::array();
  for (const auto& [first, last] : ranges) {
    const GeodesicResult geo = geodesic_distances(data, first, last, alpha);
    const ResidualCurve curve = residual_curve(geo.distances, options);
    const std::string name = range_name(first, last);
    dir.write("residual_" + name + ".csv", [&](std::ostream& s) { write_residual_csv(s, curve); });
    Json entry;
    entry["first"] = first;
    entry["last"] = last;
    entry["elbow"] = curve.elbow;
    entry["disconnected"] = geo.disconnected;
    entry["dropped"] = geo.dropped;
    entry["retained"] = static_cast<Index>(geo.rows.size());
    summary["ranges"].push_back(entry);
    out << "range " << name << ": elbow " << curve.elbow;
    if (geo.disconnected) out << " (graph disconnected, " << geo.dropped << " rows dropped)";
    out << '\n';
  }
  dir.write("summary.json", [&](std::ostream& s) { s << summary.dump(2) << '\n'; });
}

// Sombrero rows ordered crown, locus, brim, so each sub-cloud is one contiguous range.
Json write_sombrero(const Json& config, OutputDir& dir) {
  const PointCloud cloud = generate_sombrero(config["points"].get<int>(), config["seed"].get<std::uint64_t>());
  PointCloud ordered;
  ordered.points.resize(cloud.size(), 3);
  Json ranges;
  Index row = 0;
  for (PointLabel label : {PointLabel::crown, PointLabel::locus, PointLabel::brim}) {
    const FrameMatrix part = cloud.select(label);
    ordered.points.middleRows(row, part.rows()) = part;
    ordered.labels.insert(ordered.labels.end(), static_cast<std::size_t>(part.rows()), label);
    ranges[to_string(label)] = {row + 1, row + part.rows()};
    row += part.rows();
  }
  dir.write("sombrero.csv", [&](std::ostream& s) { write_point_cloud_csv(s, ordered); });
  dir.write("sombrero.fmat", [&](std::ostream& s) { write_fmat(s, ordered.points); });
  return ranges;
}

void execute_verify(const Json& request, OutputDir* dir, std::ostream& out) {
  const Json& config = request["config"];
  const std::string suite = config["suite"];
  std::vector<VerificationReport> reports;
  if (suite == "theorem" || suite == "all") reports.push_back(verify_theorem());
  if (suite == "shape" || suite == "all") reports.push_back(verify_shape());
  if (suite == "sombrero" || suite == "all")
    reports.push_back(verify_sombrero(config["points"].get<int>(), config["seed"].get<std::uint64_t>()));

  Json doc;
  doc["suites"] = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    print(out, r);
    doc["suites"].push_back(to_json(r));
    passed = passed && r.passed();
  }
  if (dir) {
    if (suite == "sombrero" || suite == "all") doc["sombrero_ranges"] = write_sombrero(config, *dir);
    dir->write("verify.json", [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  }
  if (!passed) throw DataError("verification suite '" + suite + "' failed");
}

Json execute(const Json& request, const std::optional<fs::path>& out_dir, std::ostream& out) {
  const std::string command = request["command"];
  std::optional<OutputDir> dir;
  if (out_dir) dir.emplace(*out_dir);

  // A failing verify still leaves its report and manifest behind.
  std::exception_ptr failure;
  try {
    if (command == "simulate")
      execute_simulate(request, *dir, out);
    else if (command == "rasterize")
      execute_rasterize(request, *dir, out);
    else if (command == "detect")
      execute_detect(request, *dir, out);
    else if (command == "dimest")
      execute_dimest(request, *dir, out);
    else if (command == "verify")
      execute_verify(request, dir ? &*dir : nullptr, out);
    else
      throw DataError("manifest names unknown command '" + command + "'");
  } catch (const DataError&) {
    if (command != "verify") throw;
    failure = std::current_exception();
  }

  Json manifest;
  if (dir) {
    manifest = request;
    manifest["tool_version"] = kToolVersion;
    manifest["output_dir"] = fs::absolute(dir->root()).lexically_normal().string();
    manifest["outputs"] = Json::array();
    for (const std::string& rel : dir->written()) {
      Json entry;
      entry["path"] = rel;
      entry["fnv1a64"] = file_digest(dir->root() / rel);
      manifest["outputs"].push_back(entry);
    }
    dir->write("manifest.json", [&](std::ostream& s) { s << manifest.dump(2) << '\n'; });
  }
  if (failure) std::rethrow_exception(failure);
  return manifest;
}

Json make_request(const std::string& command, Json seed, Json config, Json inputs) {
  Json request;
  request["command"] = command;
  request["tool_version"] = kToolVersion;
  request["seed"] = std::move(seed);
  request["config"] = std::move(config);
  request["inputs"] = std::move(inputs);
  return request;
}

// ---------------------------------------------------------------------------
// Command-line resolution

struct Flags {
  std::string config, out, trajectory, swarm_config, input, alpha, ranges, manifest;
  std::string suite = "all";
  Index k = 3;
  std::optional<Index> suppression;
  bool center = false, svg = false;
  Index dimest_alpha = 4, dmax = 10;
  double tau = 0.05;
  int points = 2000;
  std::uint64_t seed = 7;
};

Json request_simulate(const Flags& f) {
  Json inputs = Json::array();
  KeyValues values;
  if (!f.config.empty()) {
    values = read_config_file(f.config);
    inputs.push_back(input_entry(f.config));
  }
  const SwarmConfig config = swarm_config_from_key_values(values);
  return make_request("simulate", config.seed, key_values_to_json(to_key_values(config)), inputs);
}

// Box side recorded with the trajectory: an explicit swarm config first, then the
// manifest written next to the trajectory by `simulate`.
std::optional<double> swarm_box_side(const Flags& f) {
  if (!f.swarm_config.empty())
    return swarm_config_from_key_values(read_config_file(f.swarm_config)).box_side;
  const fs::path sibling = fs::path(f.trajectory).parent_path() / "manifest.json";
  if (!fs::is_regular_file(sibling)) return std::nullopt;
  std::ifstream in(sibling);
  const Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded() || doc.value("command", "") != "simulate") return std::nullopt;
  return parse_double("box_side", doc["config"].value("box_side", "5"));
}

Json request_rasterize(const Flags& f) {
  Json inputs = Json::array();
  if (!fs::is_regular_file(f.trajectory)) throw DataError("no such trajectory file: " + f.trajectory);
  inputs.push_back(input_entry(f.trajectory));
  KeyValues values;
  if (!f.config.empty()) {
    values = read_config_file(f.config);
    inputs.push_back(input_entry(f.config));
  }
  const auto swarm_side = swarm_box_side(f);
  if (swarm_side && !values.count("box_side")) values["box_side"] = format_double(*swarm_side);
  const RasterConfig config = raster_config_from_key_values(values);
  if (swarm_side && *swarm_side != config.box_side)
    throw PreconditionError("box_side mismatch: raster config has L = " + format_double(config.box_side) +
                            " but the trajectory was simulated with L = " + format_double(*swarm_side));
  return make_request("rasterize", nullptr, key_values_to_json(to_key_values(config)), inputs);
}

Json request_detect(const Flags& f) {
  Json config;
  const auto alphas = parse_alpha_spec(f.alpha);
  for (Index a : alphas)
    if (a < 2) throw PreconditionError("alpha must be at least 2 (got " + std::to_string(a) + ")");
  if (f.k < 1) throw PreconditionError("--k must be at least 1");
  if (f.suppression && *f.suppression < 0) throw PreconditionError("--suppression must be >= 0");
  config["alpha"] = alphas;
  config["k"] = f.k;
  config["suppression_window"] = Json::array();
  for (Index a : alphas) config["suppression_window"].push_back(f.suppression.value_or(a));
  config["center"] = f.center;
  config["svg"] = f.svg;
  Json inputs = input_for_matrix(f.input, config);
  return make_request("detect", nullptr, config, inputs);
}

Json request_dimest(const Flags& f) {
  Json config;
  if (f.dimest_alpha < 1) throw PreconditionError("--alpha must be positive");
  if (f.dmax < 1) throw PreconditionError("--dmax must be positive");
  if (!(f.tau > 0.0)) throw PreconditionError("--tau must be positive");
  Json inputs = input_for_matrix(f.input, config);
  Json request = make_request("dimest", nullptr, config, inputs);
  const Index rows = load_frames(request).rows();
  const auto ranges = f.ranges.empty() ? std::vector<std::pair<Index, Index>>{{1, rows}}
                                       : parse_ranges(f.ranges);
  check_ranges(ranges, rows);
  request["config"]["ranges"] = ranges;
  request["config"]["alpha"] = f.dimest_alpha;
  request["config"]["dmax"] = f.dmax;
  request["config"]["tau"] = f.tau;
  return request;
}

Json request_verify(const Flags& f) {
  if (f.points < 10) throw PreconditionError("--points must be at least 10");
  Json config;
  config["suite"] = f.suite;
  config["points"] = f.points;
  config["seed"] = f.seed;
  return make_request("verify", f.seed, config, Json::array());
}

int replay(const Flags& f, std::ostream& out) {
  std::ifstream in(f.manifest);
  if (!in) throw DataError("cannot open manifest " + f.manifest);
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(f.manifest + ": " + e.what());
  }
  for (const auto& entry : manifest.at("inputs")) {
    const std::string path = entry.at("path");
    if (file_digest(path) != entry.at("fnv1a64").get<std::string>())
      throw DataError("input " + path + " changed since the manifest was written");
  }
  const Json request = make_request(manifest.at("command"), manifest.at("seed"),
                                    manifest.at("config"), manifest.at("inputs"));
  const Json fresh = execute(request, fs::path(f.out), out);
  if (fresh["outputs"] != manifest.at("outputs"))
    throw DataError("replay outputs differ from " + f.manifest);
  out << "replay: " << fresh["outputs"].size() << " outputs identical to the manifest\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase transition detection from local singular value ratios", "mphase"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "Run the Vicsek swarm simulation");
  sim->add_option("--config", f.config, "Swarm config file (key = value)");
  sim->add_option("--out", f.out, "Output directory")->required();

  auto* ras = app.add_subcommand("rasterize", "Render a trajectory to PGM frames and an FMAT matrix");
  ras->add_option("--trajectory", f.trajectory, "Trajectory CSV")->required();
  ras->add_option("--config", f.config, "Raster config file (key = value)");
  ras->add_option("--swarm-config", f.swarm_config, "Swarm config used for the trajectory");
  ras->add_option("--out", f.out, "Output directory")->required();

  auto* det = app.add_subcommand("detect", "Detect phase transitions in a frame sequence");
  det->add_option("--input", f.input, "FMAT file, PGM directory or PGM glob")->required();
  det->add_option("--alpha", f.alpha, "Neighbourhood size, or a sweep a..b")->required();
  det->add_option("--k", f.k, "Number of transitions to select")->capture_default_str();
  det->add_option("--suppression", f.suppression, "Suppression window in frames (default alpha)");
  det->add_flag("--center", f.center, "Center neighbourhoods before the SVD");
  det->add_flag("--svg", f.svg, "Also write SVG line plots");
  det->add_option("--out", f.out, "Output directory")->required();

  auto* dim = app.add_subcommand("dimest", "Residual-variance dimensionality per frame range");
  dim->add_option("--input", f.input, "FMAT file, PGM directory or PGM glob")->required();
  dim->add_option("--ranges", f.ranges, "Frame ranges first-last[,first-last...] (default all)");
  dim->add_option("--alpha", f.dimest_alpha, "Nearest neighbours per point")->capture_default_str();
  dim->add_option("--dmax", f.dmax, "Largest embedding dimension")->capture_default_str();
  dim->add_option("--tau", f.tau, "Elbow threshold on the scaled residual drop")->capture_default_str();
  dim->add_option("--out", f.out, "Output directory")->required();

  auto* ver = app.add_subcommand("verify", "Run a geometry verification suite");
  ver->add_option("--suite", f.suite, "theorem, shape, sombrero or all")
      ->check(CLI::IsMember({"theorem", "shape", "sombrero", "all"}))
      ->capture_default_str();
  ver->add_option("--points", f.points, "Sombrero sample size")->capture_default_str();
  ver->add_option("--seed", f.seed, "Sombrero seed")->capture_default_str();
  ver->add_option("--out", f.out, "Output directory for the report and sombrero data");

  auto* rep = app.add_subcommand("replay", "Re-run a command from its manifest");
  rep->add_option("--manifest", f.manifest, "manifest.json of an earlier run")->required();
  rep->add_option("--out", f.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (rep->parsed()) return replay(f, out);
    Json request;
    if (sim->parsed())
      request = request_simulate(f);
    else if (ras->parsed())
      request = request_rasterize(f);
    else if (det->parsed())
      request = request_detect(f);
    else if (dim->parsed())
      request = request_dimest(f);
    else
      request = request_verify(f);
    std::optional<fs::path> out_dir;
    if (!f.out.empty()) out_dir = fs::path(f.out);
    execute(request, out_dir, out);
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace mphase::cli
