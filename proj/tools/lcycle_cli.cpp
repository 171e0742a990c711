// lcycle: hypothesis checks, cycle certificates, zeta curve and plot data
// for generalized Lienard systems.
//
//   lcycle check  --preset figure2
//   lcycle cycle  --system sys.json --scan 0.05,2,64 --out run1
//   lcycle zeta   --preset figure2 --out z
//   lcycle render --preset figure2 --out fig
//
// Exit codes: 0 success, 1 semantic failure, 2 usage or configuration error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcycle/lcycle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

/// Thrown for anything the user can fix on the command line or in the input file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string preset;
  std::string system_file;
  std::string window;
  std::string scan;
  double rtol = lcycle::IntegratorConfig{}.rel_tol;
  double atol = lcycle::IntegratorConfig{}.abs_tol;
  std::string out = ".";
  std::uint64_t seed = 0;
};

struct Resolved {
  std::string source;
  lcycle::PlanarSystem system;
  lcycle::AnalysisWindow window;
  double scan_lo;
  double scan_hi;
  int scan_n;
  lcycle::IntegratorConfig integrator;
};

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": \"" + item + "\" is not a number");
    }
  }
  if (out.size() != count) {
    throw ConfigError(std::string(flag) + " expects " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

Resolved resolve(const RunConfig& rc) {
  std::optional<lcycle::Preset> preset;
  std::optional<lcycle::PlanarSystem> sys;
  std::string source;
  if (!rc.preset.empty()) {
    try {
      preset = lcycle::make_preset(rc.preset);
    } catch (const lcycle::InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    sys = preset->system;
    source = "preset:" + rc.preset;
  } else {
    std::ifstream in(rc.system_file);
    if (!in) throw ConfigError("cannot open system file " + rc.system_file);
    try {
      sys = lcycle::system_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError("malformed JSON in " + rc.system_file + ": " + e.what());
    } catch (const lcycle::ParseError& e) {
      throw ConfigError("bad system description in " + rc.system_file + ": " + e.what());
    } catch (const lcycle::InvalidSystem& e) {
      throw ConfigError("invalid system in " + rc.system_file + ": " + e.what());
    }
    source = "file:" + rc.system_file;
  }

  lcycle::AnalysisWindow w = preset ? preset->window : lcycle::AnalysisWindow{};
  if (!rc.window.empty()) {
    const auto v = parse_list(rc.window, 4, "--window");
    w.x0 = v[0];
    w.x1 = v[1];
    w.y0 = v[2];
    w.y1 = v[3];
  }
  try {
    w.validate(*sys);
  } catch (const lcycle::InvalidArgument& e) {
    throw ConfigError(e.what());
  }

  double lo = preset ? preset->scan_lo : 0.05;
  double hi = preset ? preset->scan_hi : std::min(w.x1, sys->domain().b);
  int n = preset ? preset->scan_n : 64;
  if (!rc.scan.empty()) {
    const auto v = parse_list(rc.scan, 3, "--scan");
    lo = v[0];
    hi = v[1];
    if (v[2] != std::floor(v[2])) throw ConfigError("--scan: n must be an integer");
    n = static_cast<int>(v[2]);
  }
  if (!(0.0 < lo && lo < hi && hi < sys->domain().b) || n < 2) {
    throw ConfigError("--scan needs 0 < lo < hi < b and n >= 2");
  }
  if (!(rc.rtol > 0.0 && rc.atol > 0.0)) throw ConfigError("--rtol and --atol must be positive");

  lcycle::IntegratorConfig cfg;
  cfg.rel_tol = rc.rtol;
  cfg.abs_tol = rc.atol;
  return {source, *sys, w, lo, hi, n, cfg};
}

fs::path output_dir(const RunConfig& rc) {
  const fs::path dir(rc.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + rc.out);
  return dir;
}

/// Writes through a temporary sibling and renames it into place.
void write_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + tmp.string());
    os << std::setprecision(17);
    body(os);
    os.flush();
    if (!os) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path& path, const json& j) {
  write_atomic(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

json window_json(const lcycle::AnalysisWindow& w) { return {w.x0, w.x1, w.y0, w.y1}; }

int cmd_check(const RunConfig& rc) {
  const auto r = resolve(rc);
  const auto dir = output_dir(rc);
  const auto report = lcycle::full_report(r.system, r.window);
  auto j = lcycle::to_json(report);
  j["system"] = r.source;
  j["window"] = window_json(r.window);
  write_json(dir / "report.json", j);
  for (const auto& e : report.entries) {
    std::cout << std::left << std::setw(4) << e.key << ' ' << lcycle::to_string(e.verdict);
    if (e.verdict == lcycle::Verdict::fail && !e.witnesses.empty()) {
      const auto& w = e.witnesses.front();
      std::cout << "  at (" << w.x << ", " << w.y << ") value " << w.value;
    }
    std::cout << '\n';
  }
  std::cout << "overall " << (report.pass() ? "pass" : "fail") << '\n';
  return report.pass() ? kOk : kFail;
}

int cmd_cycle(const RunConfig& rc) {
  const auto r = resolve(rc);
  const auto dir = output_dir(rc);
  const auto a = lcycle::analyze_cycles(r.system, r.scan_lo, r.scan_hi, r.scan_n, r.integrator);
  json certs = json::array();
  for (std::size_t k = 0; k < a.certificates.size(); ++k) {
    const auto& c = a.certificates[k];
    auto cj = lcycle::to_json(c);
    cj["csv"] = "cycle_" + std::to_string(k) + ".csv";
    certs.push_back(cj);
    write_atomic(dir / cj["csv"].get<std::string>(), [&](std::ostream& os) { lcycle::write_csv(os, c.orbit); });
    std::cout << "cycle " << k << ": x* = " << std::setprecision(15) << c.section_x << "  T = " << c.period
              << "  I_gamma = " << std::setprecision(3) << c.I_gamma << "  multiplier = " << std::setprecision(6)
              << c.stability_multiplier << '\n';
  }
  const json doc = {{"system", r.source},
                    {"scan", {{"lo", r.scan_lo}, {"hi", r.scan_hi}, {"n", r.scan_n}}},
                    {"brackets", a.scan.sign_changes.size()},
                    {"scan_failures", a.scan.failures},
                    {"refine_failures", a.refine_failures},
                    {"both_curve_cycles", a.verdict.both_curve_cycles},
                    {"other_cycles", a.verdict.other_cycles},
                    {"verdict", lcycle::to_string(a.verdict.verdict)},
                    {"certificates", certs}};
  write_json(dir / "certificates.json", doc);
  std::cout << a.certificates.size() << " certificate(s), verdict " << lcycle::to_string(a.verdict.verdict) << '\n';
  return a.verdict.verdict == lcycle::UniquenessVerdict::consistent ? kOk : kFail;
}

constexpr int kZetaSamples = 200;

int cmd_zeta(const RunConfig& rc) {
  const auto r = resolve(rc);
  const auto dir = output_dir(rc);
  if (!r.system.has_curves()) throw ConfigError("zeta needs psi1 and psi2");
  // precondition: C and D hold on the window
  auto pre = lcycle::check_C(r.system, r.window);
  for (auto& e : lcycle::check_D(r.system, r.window)) pre.push_back(std::move(e));
  bool ok = true;
  for (const auto& e : pre) {
    if (e.verdict == lcycle::Verdict::fail) {
      std::cerr << "precondition " << e.key << " fails\n";
      ok = false;
    }
  }
  if (!ok) return kFail;

  lcycle::ZetaReport rep;
  try {
    rep = lcycle::check_zeta_signs(r.system, kZetaSamples, r.window.height());
  } catch (const lcycle::NoBracket& e) {
    std::cerr << e.what() << '\n';
    return kFail;
  }
  write_atomic(dir / "zeta.csv", [&](std::ostream& os) {
    os << "x,zeta\n";
    for (const auto& p : rep.left) os << p.x << ',' << p.zeta << '\n';
    for (const auto& p : rep.right) os << p.x << ',' << p.zeta << '\n';
  });
  write_atomic(dir / "zeta_boundary.csv", [&](std::ostream& os) {
    os << "x,zeta\n";
    for (const auto& p : rep.boundary) os << p.x << ',' << p.zeta << '\n';
  });
  for (const auto& p : rep.boundary) std::cout << "zeta(" << p.x << ") = " << p.zeta << '\n';
  const bool pass = rep.entry.verdict == lcycle::Verdict::pass;
  std::cout << "sign pattern " << (pass ? "pass" : "fail") << '\n';
  return pass ? kOk : kFail;
}

constexpr int kCurveSamples = 1001;
constexpr int kFieldGrid = 25;
constexpr double kRenderTime = 100.0;

int cmd_render(const RunConfig& rc) {
  const auto r = resolve(rc);
  const auto dir = output_dir(rc);
  const auto& sys = r.system;
  const auto& w = r.window;
  std::vector<std::string> files;

  if (sys.has_curves()) {
    for (int j = 1; j <= 2; ++j) {
      const std::string name = "psi" + std::to_string(j) + ".csv";
      write_atomic(dir / name, [&](std::ostream& os) {
        os << "y,x\n";
        for (int k = 0; k < kCurveSamples; ++k) {
          const double y = w.y0 + (w.y1 - w.y0) * k / (kCurveSamples - 1);
          os << y << ',' << sys.psi(j)(y) << '\n';
        }
      });
      files.push_back(name);
    }
  }

  write_atomic(dir / "field.csv", [&](std::ostream& os) {
    os << "x,y,u,v\n";
    for (int i = 0; i < kFieldGrid; ++i) {
      for (int k = 0; k < kFieldGrid; ++k) {
        const double x = w.x0 + (w.x1 - w.x0) * i / (kFieldGrid - 1);
        const double y = w.y0 + (w.y1 - w.y0) * k / (kFieldGrid - 1);
        const auto v = lcycle::vector_field(sys, x, y);
        const double n = std::hypot(v.x, v.y);
        os << x << ',' << y << ',' << (n > 0 ? v.x / n : 0.0) << ',' << (n > 0 ? v.y / n : 0.0) << '\n';
      }
    }
  });
  files.push_back("field.csv");

  const auto a = lcycle::analyze_cycles(sys, r.scan_lo, r.scan_hi, r.scan_n, r.integrator);
  const lcycle::CycleCertificate* cycle = nullptr;
  for (const auto& c : a.certificates) {
    if (cycle == nullptr || c.crosses_both_curves()) cycle = &c;
  }
  write_atomic(dir / "cycle.csv", [&](std::ostream& os) {
    if (cycle != nullptr) {
      lcycle::write_csv(os, cycle->orbit);
    } else {
      os << "t,x,y,event\n";
    }
  });
  files.push_back("cycle.csv");

  struct Seed {
    const char* name;
    lcycle::Vec2 at;
  };
  const Seed seeds[] = {{"traj_inside.csv", {0.2, 0.0}}, {"traj_outside.csv", {3.0, 0.0}}, {"traj_above.csv", {0.0, 2.5}}};
  json seed_list = json::array();
  for (const auto& s : seeds) {
    if (!sys.domain().contains(s.at.x)) throw ConfigError(std::string("seed for ") + s.name + " lies outside (a,b)");
    auto cfg = r.integrator;
    cfg.max_time = kRenderTime;
    const auto traj = lcycle::integrate(sys, s.at, cfg);
    write_atomic(dir / s.name, [&](std::ostream& os) { lcycle::write_csv(os, traj); });
    files.push_back(s.name);
    seed_list.push_back({{"file", s.name}, {"x", s.at.x}, {"y", s.at.y}, {"t_end", traj.t_end()}});
  }

  const json manifest = {{"system", r.source},
                         {"window", window_json(w)},
                         {"seed", rc.seed},
                         {"curve_samples", kCurveSamples},
                         {"field_grid", kFieldGrid},
                         {"trajectories", seed_list},
                         {"cycles_found", a.certificates.size()},
                         {"files", files}};
  write_json(dir / "manifest.json", manifest);
  std::cout << "wrote " << files.size() << " files and manifest.json to " << dir.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit-cycle analysis for generalized Lienard systems"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub) {
    auto* p = sub->add_option("--preset", rc.preset, "named system: figure2, vdp-cubic, harmonic");
    auto* f = sub->add_option("--system", rc.system_file, "system description JSON file");
    p->excludes(f);
    f->excludes(p);
    sub->add_option("--window", rc.window, "analysis window x0,x1,y0,y1");
    sub->add_option("--scan", rc.scan, "displacement scan lo,hi,n");
    sub->add_option("--rtol", rc.rtol, "integrator relative tolerance");
    sub->add_option("--atol", rc.atol, "integrator absolute tolerance");
    sub->add_option("--out", rc.out, "output directory");
    sub->add_option("--seed", rc.seed, "random seed, recorded in outputs");
  };

  std::function<int(const RunConfig&)> command;
  const std::pair<const char*, std::function<int(const RunConfig&)>> subs[] = {
      {"check", cmd_check}, {"cycle", cmd_cycle}, {"zeta", cmd_zeta}, {"render", cmd_render}};
  const char* help[] = {"check every hypothesis and write report.json",
                        "scan, refine and certify cycles; writes certificates.json and cycle_k.csv",
                        "sample the zeta curve; writes zeta.csv and zeta_boundary.csv",
                        "write plot data: curves, direction field, cycle and three trajectories"};
  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(subs[i].first, help[i]);
    add_common(sub);
    sub->callback([&, i] { command = subs[i].second; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (rc.preset.empty() == rc.system_file.empty()) {
    std::cerr << "error: give exactly one of --preset or --system\n";
    return kConfig;
  }
  try {
    return command(rc);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const lcycle::Error& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kFail;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
