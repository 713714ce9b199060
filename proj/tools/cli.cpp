#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "egr/coloring.hpp"
#include "egr/error.hpp"
#include "egr/json_io.hpp"
#include "egr/palette.hpp"
#include "egr/perturbation.hpp"
#include "egr/rectangle.hpp"
#include "egr/tetra.hpp"
#include "egr/triangle.hpp"

namespace egr::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultBudget = 300;

const std::vector<std::string> kConstructNames{"five-point", "chain",     "regular-simplex", "path",
                                               "product",    "grid",      "hinge",           "dense-quad",
                                               "link",       "x1",        "anchor-gadget",   "contract",
                                               "case-b"};

const std::vector<std::string> kParamKeys{"a", "b",    "c",     "eps",   "n",  "x",  "y",    "t",
                                          "s", "d",    "k",     "m",     "side", "phi", "angle", "dim",
                                          "kb", "kd",  "edge",  "shift", "rho", "delta", "spec"};

class Params {
 public:
  explicit Params(std::map<std::string, CLI::Option*> opts) : opts_(std::move(opts)) {}

  bool has(const std::string& key) const { return opts_.at(key)->count() > 0; }

  void require(const std::string& name, std::initializer_list<const char*> keys) const {
    for (const char* k : keys) {
      if (!has(k)) fail(ErrorKind::InvalidArgument, "construct " + name + " needs --" + k);
    }
  }

  double num(const std::string& key) const {
    const std::string raw = str(key);
    try {
      std::size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size() || !std::isfinite(v)) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "--" + key + " expects a number, got \"" + raw + "\"");
    }
  }
  double num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

  int integer(const std::string& key) const {
    const double v = num(key);
    if (v != std::floor(v) || std::fabs(v) > 1e9) fail(ErrorKind::InvalidArgument, "--" + key + " expects an integer");
    return static_cast<int>(v);
  }
  int integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

  std::string str(const std::string& key) const { return opts_.at(key)->as<std::string>(); }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument, "--" + key + " expects comma-separated numbers");
      }
    }
    return out;
  }

 private:
  std::map<std::string, CLI::Option*> opts_;
};

struct Artifact {
  Configuration cfg;
  std::optional<LinkedConfig> linked;
  std::optional<SimplexSpec> spec;  // every "tetra" copy must match it in order
};

SimplexSpec spec_or_regular(const Params& p, int k) {
  if (p.has("spec")) return spec_from_json(read_file(p.str("spec")));
  return SimplexSpec::regular(k, p.num("side", 1.0));
}

Artifact construct_named(const std::string& name, const Params& p, std::uint64_t seed) {
  Artifact art;
  BuildParams build;
  build.seed = seed;
  if (name == "five-point") {
    p.require(name, {"a", "b", "c", "eps"});
    const double a = p.num("a"), b = p.num("b"), c = p.num("c");
    const FivePointGadget g = build_five_point(a, b, c, p.num("eps"));
    if (five_point_residual(g, a, b, c) > 1e-9) fail(ErrorKind::InvariantFailure, "five-point residual too large");
    art.cfg = to_configuration(g);
  } else if (name == "chain") {
    p.require(name, {"s", "d"});
    const double s = p.num("s"), angle = p.num("angle", std::numbers::pi / 2);
    const int dim = p.integer("dim", 3);
    if (dim < 3) fail(ErrorKind::InvalidArgument, "--dim must be at least 3");
    const Point u = unit_vector(dim, 0) * s;
    const Point v = (unit_vector(dim, 0) * std::cos(angle) + unit_vector(dim, 1) * std::sin(angle)) * s;
    art.cfg = to_configuration(chain_on_sphere(Point(static_cast<std::size_t>(dim)), s, u, v, p.num("d")));
  } else if (name == "regular-simplex") {
    p.require(name, {"n", "x"});
    art.cfg = regular_simplex(p.integer("n"), p.num("x"));
  } else if (name == "path") {
    p.require(name, {"t", "x", "y"});
    art.cfg = to_configuration(path_config(p.integer("t"), p.num("x"), p.num("y")));
  } else if (name == "product") {
    if (p.has("s")) {
      p.require(name, {"s", "a", "b"});
      art.cfg = aux1_configuration(p.integer("s"), p.num("a"), p.num("b"));
    } else {
      p.require(name, {"n", "a", "t", "x", "y"});
      const Configuration left = regular_simplex(p.integer("n"), p.num("a"));
      const Configuration right = to_configuration(path_config(p.integer("t"), p.num("x"), p.num("y")));
      art.cfg = product_config(left, right).product;
    }
  } else if (name == "grid") {
    p.require(name, {"m", "eps"});
    const SimplexSpec spec = spec_or_regular(p, p.integer("k", 3));
    const std::vector<int> m(spec.k() - 1, p.integer("m"));
    art.cfg = build_perturbation_grid(spec, m, p.num("eps")).B;
  } else if (name == "contract") {
    p.require(name, {"eps"});
    const SimplexSpec spec = spec_or_regular(p, p.integer("k", 4));
    const double eps = p.num("eps");
    const ContractionResult res = contract_simplex(spec, eps);
    const std::vector<Point> base = embed_from_distances(res.contracted);
    const std::vector<Point> lifted = orthogonal_lift(base, eps);
    const std::size_t dim = lifted.front().dim();
    IndexTuple c, l;
    for (std::size_t i = 0; i < base.size(); ++i) c.push_back(art.cfg.add(base[i].padded(dim), "v" + std::to_string(i)));
    for (std::size_t i = 0; i < lifted.size(); ++i) l.push_back(art.cfg.add(lifted[i], "y" + std::to_string(i)));
    art.cfg.copies["contracted"] = {c};
    art.cfg.copies["lifted"] = {l};
    art.cfg.notes.push_back("eps = " + std::to_string(eps) + ", eps_max = " + std::to_string(res.eps_max));
    if (!ordered_congruent(lifted, spec)) fail(ErrorKind::InvariantFailure, "lifted simplex does not match the input");
  } else if (name == "case-b") {
    p.require(name, {"a", "b", "c", "eps", "rho", "delta"});
    art.cfg = to_configuration(case_b_certificate(p.num("a"), p.num("b"), p.num("c"), p.num("eps"), p.num("rho"),
                                                  p.num("delta")));
  } else {
    // tetrahedron builders
    const TetraProfile profile = tetra_profile(spec_or_regular(p, 4));
    art.spec = profile.spec;
    if (name == "hinge") {
      p.require(name, {"phi"});
      const HingePair h = glue_two_copies(profile, p.num("phi"));
      const int a = art.cfg.add(h.a, "a"), b = art.cfg.add(h.b, "b"), c = art.cfg.add(h.c, "c"),
                d = art.cfg.add(h.d, "d"), a2 = art.cfg.add(h.a_prime, "a'");
      art.cfg.copies["tetra"] = {{a, b, c, d}, {a2, b, c, d}};
    } else if (name == "dense-quad") {
      const DenseQuadruple q = dense_quadruple(profile, seed);
      art.cfg.add(q.z, "z");
      for (int i = 0; i < 3; ++i) art.cfg.add(q.y[i], "y" + std::to_string(i + 1));
      for (int i = 0; i < 3; ++i) art.cfg.add(q.x[i], "x" + std::to_string(i + 1));
      art.cfg.copies["tetra"] = CopyList(q.copies.begin(), q.copies.end());
    } else if (name == "link") {
      const HingeFrame f = canonical_frame(profile.spec);
      std::vector<double> shift = p.has("shift") ? p.list("shift") : std::vector<double>{0.3, 0.2, 0.1, 0.4};
      if (static_cast<int>(shift.size()) > build.ambient_dim) fail(ErrorKind::DimensionMismatch, "--shift is too long");
      shift.resize(build.ambient_dim, 0.0);
      HingeFrame g;
      for (int i = 0; i < 4; ++i) g[i] = f[i].padded(build.ambient_dim) + Point(shift);
      art.linked = build_link(profile, f, g, p.integer("kb", 0), p.integer("kd", 0), build);
    } else if (name == "x1") {
      art.linked = build_x1(profile, canonical_frame(profile.spec), build);
    } else if (name == "anchor-gadget") {
      std::pair<int, int> edge;
      if (p.has("edge")) {
        const std::vector<double> e = p.list("edge");
        if (e.size() != 2) fail(ErrorKind::InvalidArgument, "--edge expects two vertex indices");
        edge = {static_cast<int>(e[0]), static_cast<int>(e[1])};
      } else {
        std::vector<int> face;
        for (int i = 0; i < 4; ++i) {
          if (i != profile.hmax_apex) face.push_back(i);
        }
        edge = {face[0], face[1]};
      }
      art.linked = build_anchor_gadget(profile, edge, p.integer("k", 1), build);
    } else {
      fail(ErrorKind::InvalidArgument, "unknown construction \"" + name + "\"");
    }
    if (art.linked) art.cfg = art.linked->cfg;
  }

  validate(art.cfg);
  if (art.linked) verify_linked(*art.linked, *art.spec);
  if (art.spec && art.cfg.copies.count("tetra")) {
    for (const IndexTuple& t : art.cfg.copies.at("tetra")) {
      if (!ordered_congruent(art.cfg.select(t), *art.spec)) {
        fail(ErrorKind::InvariantFailure, "a tetra copy is not congruent to the spec");
      }
    }
  }
  return art;
}

double default_budget() {
  const char* env = std::getenv("EGL_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  try {
    std::size_t used = 0;
    const double v = std::stod(env, &used);
    if (used == std::string(env).size() && v > 0 && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, std::string("EGL_BUDGET must be a positive number of seconds, got \"") + env + "\"");
}

SimplexSpec spec_of_copy(const Configuration& cfg, const std::string& name) {
  const auto it = cfg.copies.find(name);
  if (it == cfg.copies.end() || it->second.empty()) {
    fail(ErrorKind::InvalidArgument, "configuration has no copies named \"" + name + "\"");
  }
  return SimplexSpec::from_points(cfg.select(it->second.front()));
}

void report_artifact(const std::string& text, std::ostream& out) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Parse, "artifact is not a JSON object");
  if (j.contains("verdict")) {
    out << "result: " << j.at("verdict").get<std::string>() << "\n";
    if (j.contains("witness")) out << "  witness colors " << j.at("witness").size() << " points\n";
    if (j.contains("stats")) {
      out << "  nodes " << j.at("stats").value("nodes", 0L) << ", seconds " << j.at("stats").value("seconds", 0.0)
          << "\n";
    }
    if (j.contains("message")) out << "  " << j.at("message").get<std::string>() << "\n";
  } else if (j.contains("config") && j.contains("mono")) {
    const ColoringProblem p = problem_from_json(text);
    out << "problem: " << p.cfg.size() << " points, r = " << p.r << ", " << p.mono.size() << " mono targets, "
        << p.rainbow.size() << " rainbow targets\n";
    const int clique = mono_clique_bound(p);
    out << "  largest clique of mono pairs: " << clique << (clique > p.r ? " (forces the verdict)" : "") << "\n";
  } else if (j.contains("points")) {
    const Configuration cfg = config_from_json(text);
    out << "configuration: " << cfg.size() << " points in E^" << cfg.dim() << "\n";
    for (const auto& [name, list] : cfg.copies) out << "  copies " << name << ": " << list.size() << "\n";
    if (j.contains("adjacency")) out << "  adjacency records: " << adjacency_from_json(text).size() << "\n";
    for (const std::string& note : cfg.notes) out << "  note: " << note << "\n";
  } else if (j.contains("sq_dist")) {
    const SimplexSpec spec = spec_from_json(text);
    out << "simplex: " << spec.k() << " vertices, nondegenerate " << (is_nondegenerate(spec) ? "yes" : "no") << "\n";
    if (is_nondegenerate(spec)) out << "  eps_max " << eps_max(spec) << "\n";
  } else if (j.contains("palettes")) {
    const PaletteFile f = palettes_from_json(text);
    const SdrResult sdr = has_sdr(f.palettes);
    out << "palettes: " << f.palettes.size() << " over r = " << f.r << ", SDR "
        << (sdr.representatives ? "exists" : "does not exist") << "\n";
    const bool quad = f.palettes.size() == 4 &&
                      std::all_of(f.palettes.begin(), f.palettes.end(), [](const Palette& q) { return q.size() >= 2; });
    if (quad) {
      const Quad q{f.palettes[0], f.palettes[1], f.palettes[2], f.palettes[3]};
      out << "  class " << quad_kind_name(classify_quadruple(q).kind) << "\n";
    }
  } else if (j.contains("kind")) {
    out << "scan " << j.at("kind").get<std::string>() << ":\n";
    for (const auto& [key, value] : j.items()) {
      if (key != "kind") out << "  " << key << " " << value.dump() << "\n";
    }
  } else if (j.contains("copies")) {
    out << "copy list: " << j.at("copies").size() << " copies\n";
  } else {
    fail(ErrorKind::Parse, "unrecognized artifact");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructs Euclidean Gallai-Ramsey configurations and decides finite coloring instances", "egr"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for every randomized choice")->default_val(0);

  auto* construct = app.add_subcommand("construct", "build a named configuration");
  std::string name, output;
  construct->add_option("name", name, "construction name")->required()->check(CLI::IsMember(kConstructNames));
  construct->add_option("-o,--output", output, "output file")->required();
  std::map<std::string, CLI::Option*> opts;
  for (const std::string& key : kParamKeys) opts[key] = construct->add_option("--" + key, "builder parameter");

  auto* copies = app.add_subcommand("copies", "enumerate congruent copies, or assemble a coloring problem");
  std::string config_path, spec_path, mono_path, rainbow_path, mono_copy, rainbow_copy;
  std::optional<int> colors;
  copies->add_option("config", config_path, "configuration file")->required();
  copies->add_option("--spec", spec_path, "simplex spec to enumerate");
  copies->add_option("--mono", mono_path, "spec of the monochromatic target");
  copies->add_option("--rainbow", rainbow_path, "spec of the rainbow target");
  copies->add_option("--mono-copy", mono_copy, "named copy giving the monochromatic target");
  copies->add_option("--rainbow-copy", rainbow_copy, "named copy giving the rainbow target");
  copies->add_option("--r", colors, "color count; emits a problem file");
  copies->add_option("-o,--output", output, "output file")->required();

  auto* solve = app.add_subcommand("solve", "decide a coloring problem");
  std::string problem_path;
  std::optional<double> budget;
  solve->add_option("problem", problem_path, "problem file")->required();
  solve->add_option("--budget", budget, "time budget in seconds");
  solve->add_option("-o,--output", output, "result file")->required();

  auto* scan = app.add_subcommand("scan", "exhaustive logic scans");
  std::string kind;
  int scan_r = 0;
  scan->add_option("kind", kind, "five-point or classification")
      ->required()
      ->check(CLI::IsMember({"five-point", "classification"}));
  scan->add_option("--r", scan_r, "color count")->required();
  scan->add_option("-o,--output", output, "report file")->required();

  auto* report = app.add_subcommand("report", "human-readable summary of an artifact");
  std::string report_path;
  report->add_option("file", report_path, "artifact file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (construct->parsed()) {
      const Artifact art = construct_named(name, Params(opts), seed);
      write_file_atomic(output, art.linked ? to_json(*art.linked) : to_json(art.cfg));
      // the artifact on disk must load and validate again
      const std::string text = read_file(output);
      const Configuration back = config_from_json(text);
      if (back.size() != art.cfg.size()) fail(ErrorKind::InvariantFailure, "written configuration does not reload");
      if (art.linked) {
        LinkedConfig lc;
        lc.cfg = back;
        lc.tetra_copies = back.copies.at("tetra");
        lc.shared_faces = adjacency_from_json(text);
        verify_linked(lc, *art.spec);
      }
      out << name << ": " << back.size() << " points in E^" << back.dim();
      for (const auto& [copy, list] : back.copies) out << ", " << list.size() << " " << copy;
      out << "\n";
      return kOk;
    }
    if (copies->parsed()) {
      const Configuration cfg = config_from_json(read_file(config_path));
      if (colors) {
        std::optional<SimplexSpec> mono, rainbow;
        if (!mono_path.empty()) mono = spec_from_json(read_file(mono_path));
        if (!mono_copy.empty()) mono = spec_of_copy(cfg, mono_copy);
        if (!rainbow_path.empty()) rainbow = spec_from_json(read_file(rainbow_path));
        if (!rainbow_copy.empty()) rainbow = spec_of_copy(cfg, rainbow_copy);
        if (!mono && !rainbow) fail(ErrorKind::InvalidArgument, "a problem needs a mono or a rainbow target");
        const ColoringProblem p = make_problem(cfg, mono, rainbow, *colors);
        write_file_atomic(output, to_json(p));
        problem_from_json(read_file(output));
        out << "problem: " << p.mono.size() << " mono targets, " << p.rainbow.size() << " rainbow targets\n";
        return kOk;
      }
      if (spec_path.empty()) fail(ErrorKind::InvalidArgument, "copies needs --spec, or --r with targets");
      const SimplexSpec spec = spec_from_json(read_file(spec_path));
      const CopyList found = enumerate_copies(cfg, spec);
      write_file_atomic(output, json{{"spec", spec.sq_dist}, {"count", found.size()}, {"copies", found}}.dump());
      out << found.size() << " copies\n";
      return kOk;
    }
    if (solve->parsed()) {
      const ColoringProblem p = problem_from_json(read_file(problem_path));
      const double seconds = budget ? *budget : default_budget();
      SearchResult res;
      try {
        res = solve_gr(p, SolveOptions{seconds});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Indeterminate) throw;
        write_file_atomic(output, json{{"verdict", "INDETERMINATE"}, {"message", e.what()}}.dump(1));
        err << "INDETERMINATE: " << e.what() << "\n";
        return kFailure;
      }
      if (res.witness && !verify_coloring(p, *res.witness).clean()) {
        fail(ErrorKind::InvariantFailure, "witness fails verification; no verdict emitted");
      }
      write_file_atomic(output, to_json(res));
      if (result_from_json(read_file(output)).verdict != res.verdict) {
        fail(ErrorKind::InvariantFailure, "written result does not reload");
      }
      out << verdict_name(res.verdict) << " after " << res.stats.nodes << " nodes\n";
      return res.verdict == Verdict::Forced ? kOk : kCounter;
    }
    if (scan->parsed()) {
      json j{{"kind", kind}, {"r", scan_r}};
      long bad = 0;
      if (kind == "five-point") {
        const FivePointScan s = five_point_logic_scan(scan_r);
        j["violations"] = s.violations;
        j["conforming"] = s.conforming;
        j["total"] = s.total;
        bad = s.violations;
      } else {
        const ClassificationScan s = classification_scan(scan_r);
        j["quadruples"] = s.quadruples;
        j["obstructed"] = s.obstructed;
        j["type_a"] = s.type_a;
        j["type_b"] = s.type_b;
        j["unclassifiable"] = s.unclassifiable;
        bad = s.unclassifiable;
      }
      write_file_atomic(output, j.dump(1));
      out << kind << " r=" << scan_r << ": " << bad << (kind == "five-point" ? " violations\n" : " unclassifiable\n");
      return bad == 0 ? kOk : kCounter;
    }
    if (report->parsed()) {
      report_artifact(read_file(report_path), out);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace egr::cli
