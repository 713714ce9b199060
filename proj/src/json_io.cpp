#include "egr/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egr/error.hpp"

namespace egr {

namespace {

using nlohmann::json;

json points_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const Point& p : pts) arr.push_back(p.coords());
  return arr;
}

json config_json(const Configuration& cfg) {
  json j;
  j["dim"] = cfg.dim();
  j["points"] = points_json(cfg.points);
  if (!cfg.labels.empty()) j["labels"] = cfg.labels;
  j["copies"] = json::object();
  for (const auto& [name, list] : cfg.copies) j["copies"][name] = list;
  if (!cfg.notes.empty()) j["notes"] = cfg.notes;
  if (cfg.allow_coincident) j["allow_coincident"] = true;
  return j;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed ") + what + ": " + e.what());
  }
}

Configuration config_from(const json& j) {
  return guarded("configuration", [&] {
    Configuration cfg;
    for (const auto& row : j.at("points")) cfg.points.emplace_back(row.get<std::vector<double>>());
    const std::size_t dim = j.at("dim").get<std::size_t>();
    for (const Point& p : cfg.points) {
      if (p.dim() != dim) fail(ErrorKind::Parse, "point dimension differs from \"dim\"");
    }
    if (j.contains("labels")) cfg.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& [name, list] : j.at("copies").items()) cfg.copies[name] = list.get<CopyList>();
    if (j.contains("notes")) cfg.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("allow_coincident")) cfg.allow_coincident = j.at("allow_coincident").get<bool>();
    validate(cfg);
    return cfg;
  });
}

SimplexSpec spec_from(const json& j) {
  return guarded("simplex spec", [&] {
    SimplexSpec spec;
    spec.sq_dist = j.at("sq_dist").get<std::vector<std::vector<double>>>();
    validate(spec);
    return spec;
  });
}

}  // namespace

std::string to_json(const Configuration& cfg) { return config_json(cfg).dump(); }

std::string to_json(const LinkedConfig& lc) {
  json j = config_json(lc.cfg);
  json adj = json::array();
  for (const CopyAdjacency& a : lc.shared_faces) {
    adj.push_back({{"first", a.first}, {"second", a.second}, {"relation", a.relation}, {"shared", a.shared}});
  }
  j["adjacency"] = adj;
  return j.dump();
}

std::string to_json(const SimplexSpec& spec) { return json{{"sq_dist", spec.sq_dist}}.dump(1); }

std::string to_json(const ColoringProblem& p) {
  return json{{"config", config_json(p.cfg)}, {"mono", p.mono}, {"rainbow", p.rainbow}, {"r", p.r}}.dump();
}

std::string to_json(const SearchResult& res) {
  json j;
  j["verdict"] = verdict_name(res.verdict);
  if (res.witness) j["witness"] = *res.witness;
  j["stats"] = {{"nodes", res.stats.nodes}, {"seconds", res.stats.seconds}};
  return j.dump(1);
}

Configuration config_from_json(const std::string& text) { return config_from(parse(text)); }

std::vector<CopyAdjacency> adjacency_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("adjacency", [&] {
    std::vector<CopyAdjacency> out;
    if (!j.contains("adjacency")) return out;
    const auto n_copies = j.at("copies").contains("tetra") ? j.at("copies").at("tetra").size() : 0;
    for (const auto& a : j.at("adjacency")) {
      CopyAdjacency c;
      c.first = a.at("first").get<int>();
      c.second = a.at("second").get<int>();
      c.relation = a.at("relation").get<std::string>();
      c.shared = a.at("shared").get<IndexTuple>();
      if (c.first < 0 || c.second < 0 || c.first >= static_cast<int>(n_copies) ||
          c.second >= static_cast<int>(n_copies)) {
        fail(ErrorKind::Parse, "adjacency refers to a missing tetra copy");
      }
      out.push_back(c);
    }
    return out;
  });
}

SimplexSpec spec_from_json(const std::string& text) { return spec_from(parse(text)); }

ColoringProblem problem_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("problem", [&] {
    ColoringProblem p;
    p.cfg = config_from(j.at("config"));
    p.mono = j.at("mono").get<CopyList>();
    p.rainbow = j.at("rainbow").get<CopyList>();
    p.r = j.at("r").get<int>();
    validate(p);
    return p;
  });
}

SearchResult result_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("result", [&] {
    SearchResult res;
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "FORCED") {
      res.verdict = Verdict::Forced;
    } else if (verdict == "COUNTEREXAMPLE") {
      res.verdict = Verdict::Counterexample;
    } else {
      fail(ErrorKind::Parse, "result carries no verdict: " + verdict);
    }
    if (j.contains("witness")) res.witness = j.at("witness").get<std::vector<int>>();
    if ((res.verdict == Verdict::Counterexample) != res.witness.has_value()) {
      fail(ErrorKind::Parse, "a witness must accompany exactly the COUNTEREXAMPLE verdict");
    }
    res.stats.nodes = j.at("stats").at("nodes").get<long>();
    res.stats.seconds = j.at("stats").at("seconds").get<double>();
    return res;
  });
}

PaletteFile palettes_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("palette file", [&] {
    PaletteFile f;
    f.r = j.at("r").get<int>();
    if (f.r < 1) fail(ErrorKind::Parse, "palette file needs r >= 1");
    for (const auto& row : j.at("palettes")) {
      Palette p;
      for (int c : row.get<std::vector<int>>()) {
        if (c < 1 || c > f.r) fail(ErrorKind::Parse, "palette color " + std::to_string(c) + " outside [1, r]");
        p.insert(c);
      }
      if (p.empty()) fail(ErrorKind::Parse, "empty palette");
      f.palettes.push_back(p);
    }
    return f;
  });
}

std::string to_json(const PaletteFile& file) {
  json rows = json::array();
  for (const Palette& p : file.palettes) rows.push_back(std::vector<int>(p.begin(), p.end()));
  return json{{"r", file.r}, {"palettes", rows}}.dump(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
    out.flush();
    if (!out) fail(ErrorKind::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::InvalidArgument, "cannot move output into place at " + path);
  }
}

}  // namespace egr
