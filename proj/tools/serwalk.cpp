// serwalk: generate walks, run rearrangements, verify limit-set claims, plot traces.
//
// Exit codes: 0 pass, 1 property failure or runtime error, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "serwalk/analysis.hpp"
#include "serwalk/balance.hpp"
#include "serwalk/generators.hpp"
#include "serwalk/geometry.hpp"
#include "serwalk/io.hpp"
#include "serwalk/rearrange.hpp"
#include "serwalk/seqspace.hpp"

using namespace serwalk;

namespace {

struct Config {
  std::string generator;
  std::string verifier;
  int phases = 3;
  int stages = 5;
  int k = 2;
  int kmax = 2;
  int block = 1;
  double epsilon = 1.0;
  double resolution = 0.1;
  double window = 0.3;
  double gap = 0.5;
  double bound = -1.0;
  double tol = 0.01;
  double tail = 0.5;
  double pitch = 0.05;
  double radius = 1.0;
  double hop_gap = 0.1;
  std::uint64_t growth = 0;
  std::size_t min_hits = 2;
  std::string abscissae;
  std::size_t cantor = 0;
  std::string radii = "2,3,4";
  std::string shape = "circle";
  std::string point = "0.5,-0.25";
  std::string profile = "dyadic";
  std::string norm = "euclidean";
  std::string emit = "walk";
  std::string input;
  std::string target;
  std::string out;
  std::string report;
  std::string format;
  std::uint64_t seed = 0;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed number list '" + s + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty number list");
  return out;
}

NormKind parse_norm(const std::string& s) {
  if (s == "sup") return NormKind::sup;
  if (s == "euclidean") return NormKind::euclidean;
  throw InvalidArgument("norm must be sup or euclidean");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trace_text(const Walk& w, const std::string& format) {
  std::ostringstream os;
  const bool json = format == "json" || (format.empty() && w.is_sparse());
  if (!json && format != "csv" && !format.empty()) throw InvalidArgument("trace format must be csv or json");
  if (json)
    write_jsonl(w, os);
  else
    write_csv(w, os);
  return os.str();
}

void write_manifest(const Config& c, const std::string& command, const Walk* w) {
  if (c.out.empty() || c.out == "-") return;
  nlohmann::ordered_json m;
  m["command"] = command;
  if (!c.generator.empty()) m["generator"] = c.generator;
  m["phases"] = c.phases;
  m["stages"] = c.stages;
  m["seed"] = c.seed;
  m["output"] = c.out;
  if (w) {
    m["sums"] = w->size();
    m["phase_ends"] = w->phase_ends();
    m["dimension"] = w->is_sparse() ? std::string("c0") : std::to_string(w->dim());
  }
  write_text(c.out + ".manifest.json", m.dump(1) + "\n");
}

std::vector<PointSample> vertical_components(const std::vector<double>& radii, double pitch) {
  const double top = radii.back() + 0.5;
  std::vector<PointSample> comps;
  for (double x : {-0.5, 0.5})
    comps.emplace_back(segment_points(Point::real({x, 0.0}), Point::real({x, top}), pitch));
  return comps;
}

// ---------------------------------------------------------------------------

int cmd_generate(const Config& c) {
  Walk w;
  const std::string& g = c.generator;
  if (g == "two-lines") {
    w = gen_two_lines(c.phases);
  } else if (g == "halflines") {
    std::vector<double> xs;
    if (!c.abscissae.empty())
      xs = parse_list(c.abscissae);
    else
      xs = cantor_left_endpoints(c.cantor ? c.cantor : static_cast<std::size_t>(std::max(c.phases, 0) + 1));
    w = gen_halflines(xs, c.phases);
  } else if (g == "chainable") {
    if (c.phases < 1) throw InvalidArgument("phases must be ≥ 1");
    w = build_chainable_walk(golden_order(circle_by_pitch(c.radius, c.pitch)), c.phases);
  } else if (g == "unbounded") {
    const auto radii = parse_list(c.radii);
    w = build_unbounded_components_walk(vertical_components(radii, c.pitch), radii, c.phases);
  } else if (g == "c0-two-point") {
    w = gen_c0_two_point(c.phases);
  } else if (g == "c0-singleton") {
    w = gen_c0_singleton_divergent(c.phases);
  } else if (g == "no-rp") {
    if (c.emit == "instance") {
      const auto ys = no_rp_block(c.block);
      write_text(c.out, instance_json(ys, NormKind::sup));
      write_manifest(c, "generate", nullptr);
      return 0;
    }
    if (c.emit != "walk") throw InvalidArgument("--emit must be walk or instance");
    const NoRpSeries s = gen_no_rp_series(c.kmax);
    w = Walk::sparse();
    w.set_origin(SparseVec(), true);
    for (const auto& e : s.series.partial_sums()) w.push_back(e);
  } else {
    throw InvalidArgument("unknown generator '" + g + "'");
  }
  spdlog::info("generated {} sums in {} phases", w.size(), w.phase_count());
  write_text(c.out, trace_text(w, c.format));
  write_manifest(c, "generate", &w);
  return 0;
}

PointSample target_sample(const Config& c) {
  if (!c.target.empty()) return read_sample(c.target);
  if (c.shape == "circle") return PointSample(circle_by_pitch(c.radius, c.pitch));
  if (c.shape == "segment") return PointSample(segment_points(Point::real({0.0, 0.0}), Point::real({1.0, 0.0}), c.pitch));
  if (c.shape == "point") {
    const auto p = parse_list(c.point);
    return PointSample(std::vector<Point>{Point::real(p)});
  }
  throw InvalidArgument("shape must be circle, segment or point");
}

int cmd_rearrange(const Config& c) {
  const PointSample target = target_sample(c);
  const std::size_t dim = target.point(0).dim();
  FullRangeSeries::Profile profile;
  if (c.profile == "dyadic")
    profile = FullRangeSeries::Profile::dyadic_blocks;
  else if (c.profile == "harmonic")
    profile = FullRangeSeries::Profile::harmonic;
  else
    throw InvalidArgument("profile must be dyadic or harmonic");
  std::uint64_t growth = c.growth;
  if (growth == 0) growth = target.size() == 1 ? 2 : 4;
  const FullRangeSeries series(dim, profile, UINT64_MAX, growth);

  RearrangeOptions opts;
  opts.kind = parse_norm(c.norm);
  opts.hop_gap = c.hop_gap;
  opts.seed = c.seed;
  const RearrangeResult r = rearrange_to_limit_set(series, target, c.stages, opts);
  spdlog::info("rearranged {} terms over {} steps", r.tau.size(), r.records.size());

  std::string verdict;
  if (target.size() == 1 && r.walk.size() >= 100) {
    const auto v = singleton_convergence_check(r.walk, stage_epsilon(static_cast<std::size_t>(c.stages)), opts.kind);
    verdict = to_string(v.kind);
  }
  const std::string base = c.out.empty() ? std::string("rearrange") : c.out;
  if (!c.out.empty()) write_text(c.out, trace_text(r.walk, c.format));
  {
    std::ostringstream os;
    for (auto n : r.tau.images()) os << n << "\n";
    write_text(base + ".tau.txt", os.str());
  }
  write_text(c.report.empty() ? base + ".report.json" : c.report,
             rearrange_report_json(r, verdict.empty() ? "" : "convergence", verdict));
  write_manifest(c, "rearrange", &r.walk);
  return r.invariants_ok ? 0 : 1;
}

int cmd_verify(const Config& c) {
  const std::string& v = c.verifier;
  const NormKind kind = parse_norm(c.norm);

  if (v == "vector-family") {
    const VectorFamily fam = c.input.empty() ? gen_vector_family(c.k) : family_from_json(read_text(c.input));
    const FamilyReport r = check_vector_family(fam);
    nlohmann::ordered_json j;
    j["k"] = fam.k;
    j["dim"] = fam.dim;
    j["permutations"] = r.permutations;
    j["unit_norms"] = r.unit_norms;
    j["sums_to_zero"] = r.sums_to_zero;
    j["prefix_bound"] = r.prefix_bound;
    j["min_prefix_norm"] = r.min_prefix_norm;
    const bool pass = r.unit_norms && r.sums_to_zero && r.prefix_bound;
    j["verdict"] = pass ? "pass" : "fail";
    write_text(c.out, j.dump(1) + "\n");
    return pass ? 0 : 1;
  }
  if (v == "rp-instance") {
    if (c.input.empty()) throw InvalidArgument("rp-instance needs --input");
    NormKind ikind = NormKind::sup;
    const auto terms = instance_from_json(read_text(c.input), &ikind);
    std::uint64_t lo = UINT64_MAX, hi = 0;
    for (const auto& t : terms)
      for (const auto& [i, x] : t.entries()) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    if (hi == 0) lo = hi = 1;
    BalanceOptions bo;
    bo.kind = ikind;
    bo.seed = c.seed;
    const auto order =
        find_balanced_permutation(densify(terms, lo, hi), c.epsilon, BalanceStrategy::ladder, bo);
    nlohmann::ordered_json j;
    j["terms"] = terms.size();
    j["epsilon"] = c.epsilon;
    if (order) {
      j["verdict"] = "pass";
      j["permutation"] = *order;
    } else {
      j["verdict"] = "fail";
      j["witness"] = "no balanced permutation";
    }
    write_text(c.out, j.dump(1) + "\n");
    if (!order) spdlog::error("no balanced permutation below {}", c.epsilon);
    return order ? 0 : 1;
  }

  if (c.input.empty()) throw InvalidArgument(v + " needs --input");
  const Walk w = read_trace(c.input);

  if (v == "estimate" || v == "dichotomy") {
    const LimitEstimate est = estimate_limit_set(w, c.window, c.resolution, c.min_hits, kind);
    EstimateVerdicts verdicts;
    int code = est.points.empty() ? 1 : 0;
    if (v == "dichotomy") {
      if (est.points.empty()) throw Error("empty estimate");
      const double bound = c.bound > 0.0 ? c.bound : observed_bound(w, est);
      const DichotomyReport d = verify_dichotomy(est, c.gap, bound);
      verdicts.entries.emplace_back("dichotomy", to_string(d.verdict));
      verdicts.entries.emplace_back("components", std::to_string(d.components.size()));
      code = d.verdict == DichotomyVerdict::violation ? 1 : 0;
    }
    write_text(c.out, estimate_report_json(est, verdicts));
    return code;
  }
  if (v == "singleton") {
    const SingletonVerdict s = singleton_convergence_check(w, c.tol, kind, c.window);
    nlohmann::ordered_json j;
    j["verdict"] = to_string(s.kind);
    if (s.point) j["point"] = nlohmann::ordered_json::parse(element_json(*s.point));
    j["tail_max_distance"] = s.tail_max_distance;
    write_text(c.out, j.dump(1) + "\n");
    return s.kind == SingletonVerdictKind::diverges_with_singleton ? 1 : 0;
  }
  if (v == "cauchy") {
    const CauchyReport r = cauchy_diagnostic(w, c.tail, kind);
    nlohmann::ordered_json j;
    j["max_gap"] = r.max_gap;
    j["gap_pairs"] = r.gap_pairs;
    write_text(c.out, j.dump(1) + "\n");
    return 0;
  }
  throw InvalidArgument("unknown verifier '" + v + "'");
}

int cmd_plot(const Config& c) {
  if (c.input.empty()) throw InvalidArgument("plot needs --input");
  const Walk w = read_trace(c.input);
  write_text(c.out, render_svg(w));
  return 0;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("serwalk");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("SERWALK_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Config c;
  CLI::App app{"Rearranged series, their walks and limit sets"};
  app.require_subcommand(1);

  auto common = [&c](CLI::App* s) {
    s->add_option("--out", c.out, "Output file (stdout when absent)");
    s->add_option("--format", c.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    s->add_option("--seed", c.seed, "Seed for randomized searches");
    s->add_option("--norm", c.norm, "euclidean or sup");
  };

  auto* gen = app.add_subcommand("generate", "Write a walk trace");
  gen->add_option("generator", c.generator,
                  "two-lines | halflines | chainable | unbounded | c0-two-point | c0-singleton | no-rp")
      ->required();
  gen->add_option("--phases", c.phases, "Number of phases");
  gen->add_option("--abscissae", c.abscissae, "Comma-separated half-line abscissae");
  gen->add_option("--cantor", c.cantor, "Use this many Cantor left endpoints as abscissae");
  gen->add_option("--pitch", c.pitch, "Sample pitch");
  gen->add_option("--radius", c.radius, "Circle radius");
  gen->add_option("--radii", c.radii, "Sphere radii for the unbounded generator");
  gen->add_option("--kmax", c.kmax, "Blocks of the no-rp series");
  gen->add_option("--block", c.block, "Block written by --emit instance");
  gen->add_option("--emit", c.emit, "walk or instance (no-rp only)");
  common(gen);

  auto* rea = app.add_subcommand("rearrange", "Rearrange a full-sum-range series onto a target set");
  rea->add_option("--target", c.target, "Target sample (.json or .csv)");
  rea->add_option("--shape", c.shape, "circle | segment | point when no target file is given");
  rea->add_option("--radius", c.radius, "Circle radius");
  rea->add_option("--pitch", c.pitch, "Sample pitch");
  rea->add_option("--point", c.point, "Point target coordinates");
  rea->add_option("--stages", c.stages, "Number of levels");
  rea->add_option("--profile", c.profile, "dyadic or harmonic terms");
  rea->add_option("--gap", c.hop_gap, "Largest sample hop; 0 requires eta-chainable targets");
  rea->add_option("--report", c.report, "Stage report path");
  rea->add_option("--growth", c.growth, "Block growth of the dyadic profile (0: 2 for point targets, else 4)");
  common(rea);

  auto* ver = app.add_subcommand("verify", "Check a property of a trace or family");
  ver->add_option("verifier", c.verifier, "estimate | dichotomy | singleton | cauchy | vector-family | rp-instance")
      ->required();
  ver->add_option("--input", c.input, "Trace, family or instance file");
  ver->add_option("--window", c.window, "Window fraction");
  ver->add_option("--resolution", c.resolution, "Grid pitch");
  ver->add_option("--min-hits", c.min_hits, "Hits needed to keep a cell");
  ver->add_option("--gap", c.gap, "Component gap");
  ver->add_option("--bound", c.bound, "Escape radius (observed when absent)");
  ver->add_option("--tol", c.tol, "Singleton tolerance");
  ver->add_option("--tail", c.tail, "Cauchy tail fraction");
  ver->add_option("--epsilon", c.epsilon, "Balancing bound");
  ver->add_option("--k", c.k, "Vector family size");
  common(ver);

  auto* plot = app.add_subcommand("plot", "Render a 2-D trace as SVG");
  plot->add_option("--input", c.input, "Trace file")->required();
  common(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(c);
    if (rea->parsed()) return cmd_rearrange(c);
    if (ver->parsed()) return cmd_verify(c);
    if (plot->parsed()) return cmd_plot(c);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RpCertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
