#include "fitpa/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fitpa/errors.hpp"
#include "fitpa/rng.hpp"

namespace fitpa {

namespace {

using nlohmann::json;

json config_echo(const RunConfig& rc) {
  // raw_json is the canonical resolved config produced by load_config.
  if (rc.raw_json.empty()) return json::object();
  return json::parse(rc.raw_json);
}

json zero_json(const ClassifiedZero& z) {
  json o;
  o["location"] = z.location;
  o["class"] = zero_class_name(z.cls);
  o["derivative"] = z.derivative;
  o["one_sided"] = z.one_sided;
  if (z.multiplicity_warning) o["multiplicity_warning"] = true;
  return o;
}

json interval_json(const WilsonInterval& w) {
  json o;
  o["lo"] = w.lo;
  o["hi"] = w.hi;
  return o;
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "n,q,x,y,red_fraction\n";
  for (const auto& r : t.records) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.q);
    out += ',';
    out += format_double(r.x);
    out += ',';
    out += format_double(r.y);
    out += ',';
    out += format_double(r.red_fraction);
    out += '\n';
  }
  return out;
}

std::string trajectory_json(const RunConfig& rc, const Trajectory& t) {
  json o;
  o["config"] = config_echo(rc);
  json recs = json::array();
  for (const auto& r : t.records) {
    json rec;
    rec["n"] = r.n;
    rec["q"] = r.q;
    rec["x"] = r.x;
    rec["y"] = r.y;
    rec["red_fraction"] = r.red_fraction;
    recs.push_back(std::move(rec));
  }
  o["records"] = std::move(recs);
  json term;
  term["n"] = t.terminal.n;
  term["X"] = t.terminal.X;
  term["Y"] = t.terminal.Y;
  term["A"] = t.terminal.A;
  term["B"] = t.terminal.B;
  term["q"] = t.terminal.q;
  term["x"] = t.terminal.x;
  term["y"] = t.terminal.y;
  o["terminal"] = std::move(term);
  return o.dump(2) + "\n";
}

std::string phase_scan_csv(const std::vector<PhaseScanPoint>& points) {
  std::string out = "param,root,class,derivative\n";
  for (const auto& pt : points) {
    if (pt.degenerate) {
      out += format_double(pt.param);
      out += ",,degenerate,\n";
      continue;
    }
    for (const auto& z : pt.zeros) {
      out += format_double(pt.param);
      out += ',';
      out += format_double(z.location);
      out += ',';
      out += zero_class_name(z.cls);
      out += ',';
      out += format_double(z.derivative);
      out += '\n';
    }
  }
  return out;
}

std::string analysis_report_json(const RunConfig& rc, const CompetitionFunction& cf,
                                 const ZeroReport& zr, const ThresholdReport& tr) {
  json o;
  o["config"] = config_echo(rc);
  json fn;
  fn["kind"] = kind_name(cf.kind);
  fn["numerator"] = cf.num.c;
  fn["denominator"] = cf.den.c;
  fn["degenerate"] = zr.degenerate;
  o["competition_function"] = std::move(fn);
  json zeros = json::array();
  for (const auto& z : zr.zeros) zeros.push_back(zero_json(z));
  o["zeros"] = std::move(zeros);
  json th;
  th["applicable"] = tr.applicable;
  if (!tr.applicable) th["reason"] = tr.reason;
  json entries = json::array();
  for (const auto& e : tr.entries) {
    json ej;
    ej["name"] = e.name;
    ej["value"] = e.value;
    ej["closed_form"] = e.closed_form;
    ej["meaning"] = e.meaning;
    entries.push_back(std::move(ej));
  }
  th["entries"] = std::move(entries);
  o["endpoint_thresholds"] = std::move(th);
  return o.dump(2) + "\n";
}

std::string ensemble_json(const RunConfig& rc, const EnsembleResult& er,
                          const DominationRule& rule, bool per_run_terminals) {
  json o;
  o["config"] = config_echo(rc);
  json r;
  r["final_step"] = rule.final_step;
  r["early_step"] = rule.early_step;
  r["threshold"] = rule.threshold;
  o["rule"] = std::move(r);
  o["runs"] = er.runs;
  o["master_seed"] = er.master_seed;
  json counts;
  counts["red"] = er.red;
  counts["blue"] = er.blue;
  counts["undecided"] = er.undecided;
  o["counts"] = std::move(counts);
  const double n = er.runs ? static_cast<double>(er.runs) : 1.0;
  json fr;
  fr["red"] = static_cast<double>(er.red) / n;
  fr["blue"] = static_cast<double>(er.blue) / n;
  fr["undecided"] = static_cast<double>(er.undecided) / n;
  o["fractions"] = std::move(fr);
  json iv;
  iv["red"] = interval_json(er.red_interval);
  iv["blue"] = interval_json(er.blue_interval);
  iv["undecided"] = interval_json(er.undecided_interval);
  o["wilson95"] = std::move(iv);
  if (per_run_terminals) o["terminal_q"] = er.terminal_q;
  return o.dump(2) + "\n";
}

std::string lyapunov_json(const LyapunovReport& rep) {
  json o;
  o["S1"] = rep.S1;
  o["S2"] = rep.S2;
  o["colors_swapped"] = rep.colors_swapped;
  json samples = json::array();
  for (const auto& s : rep.samples) {
    json sj;
    sj["n"] = s.n;
    sj["ell"] = s.ell;
    sj["L1"] = s.L1;
    sj["L2"] = s.L2;
    sj["L"] = s.L;
    samples.push_back(std::move(sj));
  }
  o["samples"] = std::move(samples);
  o["terminal_abs_ell"] = rep.terminal_abs_ell;
  o["terminal_abs_PA"] = rep.terminal_abs_PA;
  return o.dump(2) + "\n";
}

std::string competition_svg(const CompetitionFunction& cf, const ZeroReport& zr,
                            const std::string& title) {
  constexpr int W = 720, H = 420;
  constexpr double ml = 60, mr = 20, mt = 40, mb = 40;
  const double pw = W - ml - mr, ph = H - mt - mb;
  constexpr int N = 512;

  std::vector<double> xs(N + 1), ys(N + 1);
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i <= N; ++i) {
    xs[i] = static_cast<double>(i) / N;
    ys[i] = cf.eval(xs[i]);
    lo = std::min(lo, ys[i]);
    hi = std::max(hi, ys[i]);
  }
  if (hi - lo < 1e-12) {
    hi += 1.0;
    lo -= 1.0;
  }
  const double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;

  const auto px = [&](double z) { return ml + z * pw; };
  const auto py = [&](double v) { return mt + (hi - v) / (hi - lo) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
       "text-anchor=\"middle\">"
    << title << "</text>\n";
  // axes: box plus the zero level
  s << "<rect x=\"" << svg_num(ml) << "\" y=\"" << svg_num(mt) << "\" width=\"" << svg_num(pw)
    << "\" height=\"" << svg_num(ph) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (lo < 0 && hi > 0)
    s << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(py(0)) << "\" x2=\""
      << svg_num(ml + pw) << "\" y2=\"" << svg_num(py(0))
      << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double z = i / 4.0;
    s << "<text x=\"" << svg_num(px(z)) << "\" y=\"" << svg_num(mt + ph + 18)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << svg_num(z)
      << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    s << "<text x=\"" << svg_num(ml - 6) << "\" y=\"" << svg_num(py(v) + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << svg_num(v)
      << "</text>\n";
  }
  s << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (int i = 0; i <= N; ++i) {
    if (i) s << ' ';
    s << svg_num(px(xs[i])) << ',' << svg_num(py(ys[i]));
  }
  s << "\"/>\n";
  for (const auto& z : zr.zeros) {
    const double cx = px(z.location), cy = py(0.0);
    const bool stable = z.cls == ZeroClass::Stable || z.cls == ZeroClass::EndpointStable;
    if (z.cls == ZeroClass::Touchpoint) {
      s << "<rect x=\"" << svg_num(cx - 4) << "\" y=\"" << svg_num(cy - 4)
        << "\" width=\"8\" height=\"8\" fill=\"white\" stroke=\"#c23\" stroke-width=\"1.5\"/>\n";
    } else {
      s << "<circle cx=\"" << svg_num(cx) << "\" cy=\"" << svg_num(cy) << "\" r=\"5\" fill=\""
        << (stable ? "#c23" : "white") << "\" stroke=\"#c23\" stroke-width=\"1.5\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

OutputFile write_output(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw ConfigError("write failed for " + path);
  OutputFile f;
  f.path = path;
  f.bytes = content.size();
  f.digest = fnv1a64_hex(content);
  return f;
}

std::string manifest_json(const RunConfig& rc, const std::string& command,
                          const std::vector<OutputFile>& outputs) {
  json o;
  o["tool_version"] = kToolVersion;
  o["command"] = command;
  o["config"] = config_echo(rc);
  json rng;
  rng["algorithm"] = kRngAlgorithm;
  rng["master_seed"] = rc.seed;
  o["rng"] = std::move(rng);
  {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    o["created_utc"] = buf;
  }
  json files = json::array();
  for (const auto& f : outputs) {
    json fj;
    fj["path"] = f.path;
    fj["bytes"] = f.bytes;
    fj["fnv1a64"] = f.digest;
    files.push_back(std::move(fj));
  }
  o["outputs"] = std::move(files);
  return o.dump(2) + "\n";
}

}  // namespace fitpa
