#include "fitpa/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fitpa/errors.hpp"

namespace fitpa {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void require_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) fail("unknown key \"" + key + "\" in " + where);
  }
}

Rat rat_value(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto r = parse_rational(v.get<std::string>());
    if (!r) fail(where + ": \"" + v.get<std::string>() + "\" is not a rational");
    return *r;
  }
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Rat(v.get<std::uint64_t>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  fail(where + ": expected a number or an \"a/b\" string");
}

template <typename T>
T integer_value(const json& j, const std::string& where, T min_allowed) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where + ": expected an integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < static_cast<std::int64_t>(min_allowed))
    fail(where + ": value out of range");
  return j.get<T>();
}

Color color_value(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "red") return Color::Red;
    if (s == "blue") return Color::Blue;
  }
  fail(where + ": expected \"red\" or \"blue\"");
}

Engine engine_value(const std::string& s) {
  if (s == "auto") return Engine::Auto;
  if (s == "graph") return Engine::Graph;
  if (s == "urn") return Engine::Urn;
  fail("run.engine: expected auto, graph or urn");
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::Graph: return "graph";
    case Engine::Urn: return "urn";
  }
  return "?";
}

json rat_json(const Rat& r) { return rat_to_string(r); }

}  // namespace

RunConfig load_config(const std::string& json_text, const FlagOverrides& flags) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  require_keys(j, "top level", {"model", "initial_graph", "run", "output", "scan"});
  if (!j.contains("model")) fail("missing \"model\"");

  RunConfig rc;

  // model
  {
    const json& m = j["model"];
    if (!m.is_object()) fail("\"model\" must be an object");
    require_keys(m, "model",
                 {"type", "m", "p", "linear", "phi", "alpha", "alpha_red", "alpha_blue"});
    if (!m.contains("type")) fail("model.type is required");
    const std::string type = m["type"].is_string() ? m["type"].get<std::string>() : "";
    const int mm = m.contains("m") ? integer_value<int>(m["m"], "model.m", 1) : 1;

    if (m.contains("p") && m.contains("linear"))
      fail("model: give either \"p\" or \"linear\", not both");
    if (m.contains("p")) {
      const json& p = m["p"];
      if (!p.is_array()) fail("model.p must be an array of m+1 entries");
      std::vector<Rat> pv;
      pv.reserve(p.size());
      for (std::size_t k = 0; k < p.size(); ++k)
        pv.push_back(rat_value(p[k], "model.p[" + std::to_string(k) + "]"));
      rc.ta = TypeAssignment::create(mm, std::move(pv));
    } else if (!m.contains("linear") || (m["linear"].is_boolean() && m["linear"].get<bool>())) {
      rc.ta = TypeAssignment::linear(mm);
    } else {
      fail("model: \"p\" is required when \"linear\" is false");
    }

    if (type == "plain") {
      rc.fm = PlainFitness{m.contains("alpha") ? rat_value(m["alpha"], "model.alpha") : Rat(0)};
    } else if (type == "multiplicative") {
      MultiplicativeFitness f;
      if (!m.contains("phi")) fail("model.phi is required for the multiplicative model");
      f.phi = rat_value(m["phi"], "model.phi");
      f.alpha = m.contains("alpha") ? rat_value(m["alpha"], "model.alpha") : Rat(0);
      rc.fm = f;
    } else if (type == "additive") {
      if (!m.contains("alpha_red") || !m.contains("alpha_blue"))
        fail("model.alpha_red and model.alpha_blue are required for the additive model");
      AdditiveFitness f;
      f.alpha_red = rat_value(m["alpha_red"], "model.alpha_red");
      f.alpha_blue = rat_value(m["alpha_blue"], "model.alpha_blue");
      rc.fm = f;
    } else {
      fail("model.type must be plain, multiplicative or additive");
    }
    validate_model(rc.ta, rc.fm);
  }

  // initial graph
  if (j.contains("initial_graph")) {
    const json& g = j["initial_graph"];
    if (!g.is_object()) fail("\"initial_graph\" must be an object");
    require_keys(g, "initial_graph", {"degrees", "types"});
    if (!g.contains("degrees") || !g.contains("types") || !g["degrees"].is_array() ||
        !g["types"].is_array())
      fail("initial_graph needs \"degrees\" and \"types\" arrays");
    for (const auto& d : g["degrees"])
      rc.g0.degree.push_back(integer_value<std::uint32_t>(d, "initial_graph.degrees", 0u));
    for (std::size_t v = 0; v < g["types"].size(); ++v)
      rc.g0.type.push_back(
          color_value(g["types"][v], "initial_graph.types[" + std::to_string(v) + "]"));
    validate_initial_graph(rc.ta, rc.fm, rc.g0);
  } else {
    rc.g0 = default_initial_graph(rc.ta, rc.fm);
  }

  // run
  if (j.contains("run")) {
    const json& r = j["run"];
    if (!r.is_object()) fail("\"run\" must be an object");
    require_keys(r, "run", {"seed", "steps", "record_every", "runs", "threads", "engine"});
    if (r.contains("seed")) rc.seed = integer_value<std::uint64_t>(r["seed"], "run.seed", 0u);
    if (r.contains("steps")) rc.steps = integer_value<std::uint64_t>(r["steps"], "run.steps", 0u);
    if (r.contains("record_every"))
      rc.record_every = integer_value<std::uint64_t>(r["record_every"], "run.record_every", 0u);
    if (r.contains("runs")) rc.runs = integer_value<std::uint64_t>(r["runs"], "run.runs", 1u);
    if (r.contains("threads")) rc.threads = integer_value<int>(r["threads"], "run.threads", 0);
    if (r.contains("engine")) {
      if (!r["engine"].is_string()) fail("run.engine must be a string");
      rc.engine = engine_value(r["engine"].get<std::string>());
    }
  }

  // output
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) fail("\"output\" must be an object");
    require_keys(o, "output", {"dir", "format"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("output.dir must be a string");
      rc.out_dir = o["dir"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) fail("output.format must be a string");
      rc.format = o["format"].get<std::string>();
    }
  }

  // scan
  if (j.contains("scan")) {
    const json& s = j["scan"];
    if (!s.is_object()) fail("\"scan\" must be an object");
    require_keys(s, "scan", {"param", "from", "to", "step"});
    ScanSpec spec;
    if (!s.contains("param") || !s["param"].is_string()) fail("scan.param is required");
    const auto p = scan_param_from_name(s["param"].get<std::string>());
    if (!p) fail("scan.param: unknown parameter \"" + s["param"].get<std::string>() + "\"");
    spec.param = *p;
    for (const char* k : {"from", "to", "step"})
      if (!s.contains(k) || !s[k].is_number()) fail(std::string("scan.") + k + " is required");
    spec.from = s["from"].get<double>();
    spec.to = s["to"].get<double>();
    spec.step = s["step"].get<double>();
    if (spec.step <= 0) fail("scan.step must be > 0");
    if (spec.to < spec.from) fail("scan range is empty");
    rc.scan = spec;
  }

  // flag overrides win over the file
  if (flags.seed) rc.seed = *flags.seed;
  if (flags.out_dir) rc.out_dir = *flags.out_dir;
  if (flags.threads) rc.threads = *flags.threads;
  if (flags.format) rc.format = *flags.format;

  if (rc.format != "csv" && rc.format != "json") fail("output.format must be csv or json");
  if (rc.threads < 0) fail("run.threads must be >= 0");

  // canonical echo of the resolved configuration
  {
    json e;
    json& m = e["model"];
    m["type"] = model_name(rc.fm);
    m["m"] = rc.ta.m;
    json pv = json::array();
    for (const auto& pk : rc.ta.p) pv.push_back(rat_json(pk));
    m["p"] = pv;
    if (const auto* pf = std::get_if<PlainFitness>(&rc.fm)) {
      m["alpha"] = rat_json(pf->alpha);
    } else if (const auto* mf = std::get_if<MultiplicativeFitness>(&rc.fm)) {
      m["phi"] = rat_json(mf->phi);
      m["alpha"] = rat_json(mf->alpha);
    } else if (const auto* af = std::get_if<AdditiveFitness>(&rc.fm)) {
      m["alpha_red"] = rat_json(af->alpha_red);
      m["alpha_blue"] = rat_json(af->alpha_blue);
    }
    json& g = e["initial_graph"];
    g["degrees"] = rc.g0.degree;
    json types = json::array();
    for (const Color c : rc.g0.type) types.push_back(c == Color::Red ? "red" : "blue");
    g["types"] = types;
    json& r = e["run"];
    r["seed"] = rc.seed;
    r["steps"] = rc.steps;
    r["record_every"] = rc.record_every;
    r["runs"] = rc.runs;
    r["threads"] = rc.threads;
    r["engine"] = engine_name(rc.engine);
    json& o = e["output"];
    o["dir"] = rc.out_dir;
    o["format"] = rc.format;
    if (rc.scan) {
      json& s = e["scan"];
      s["param"] = scan_param_name(rc.scan->param);
      s["from"] = rc.scan->from;
      s["to"] = rc.scan->to;
      s["step"] = rc.scan->step;
    }
    rc.raw_json = e.dump();
  }
  return rc;
}

RunConfig load_config_file(const std::string& path, const FlagOverrides& flags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str(), flags);
}

SimConfig to_sim_config(const RunConfig& rc) {
  SimConfig c;
  c.ta = rc.ta;
  c.fm = rc.fm;
  c.g0 = rc.g0;
  c.seed = rc.seed;
  c.steps = rc.steps;
  c.record_every = rc.record_every;
  c.engine = rc.engine;
  return c;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char out[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  out[16] = '\0';
  return std::string(out, 16);
}

}  // namespace fitpa
