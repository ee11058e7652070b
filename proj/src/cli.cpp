#include "elastica/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "elastica/elliptic.hpp"
#include "elastica/finite_gap.hpp"
#include "elastica/flow.hpp"
#include "elastica/hecurve.hpp"
#include "elastica/hill.hpp"
#include "elastica/jetpoly.hpp"
#include "elastica/loop.hpp"
#include "elastica/periods.hpp"
#include "elastica/psido.hpp"
#include "elastica/sigma.hpp"
#include "elastica/theta.hpp"
#include "elastica/verify.hpp"

namespace elastica {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using cd = std::complex<double>;

// Bad user-supplied values or files; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_g(double v) {
  char b[40];
  std::snprintf(b, sizeof(b), "%.17g", v);
  return b;
}

json to_json_c(cd z) { return json::array({z.real(), z.imag()}); }

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << text;
}

fs::path prepare_out(const std::string& out_dir) {
  fs::path p(out_dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir);
  return p;
}

json manifest_base(const char* sub) {
  json m;
  m["tool"] = "elastica";
  m["version"] = kToolVersion;
  m["manifest_schema"] = 1;
  m["subcommand"] = sub;
  return m;
}

void emit_manifest(const json& m, const std::string& out_dir) {
  std::string text = m.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!out_dir.empty())
    write_file(prepare_out(out_dir) / "manifest.json", text);
}

// --- hierarchy -------------------------------------------------------------

struct HierarchyConfig {
  int n = 3;
  std::string out;
};

int run_hierarchy(const HierarchyConfig& c) {
  std::ostringstream os;
  json eqs = json::array();
  for (int k = 1; k <= c.n; ++k) {
    std::string row = "X_" + std::to_string(k) + " = " + to_string(kdv_rhs(k));
    os << row << "\n";
    eqs.push_back(row);
  }
  std::fputs(os.str().c_str(), stdout);
  json m = manifest_base("hierarchy");
  m["config"] = {{"n", c.n}, {"out", c.out}};
  m["equations"] = eqs;
  if (!c.out.empty()) {
    write_file(prepare_out(c.out) / "hierarchy.txt", os.str());
    m["files"] = {"hierarchy.txt"};
  }
  emit_manifest(m, c.out);
  return 0;
}

// --- psdo ------------------------------------------------------------------

struct PsdoConfig {
  int power = 1;
  int depth = 6;
  bool plus = false;
  std::string out;
};

int run_psdo(const PsdoConfig& c) {
  if (c.power % 2 == 0)
    throw ConfigError("psdo: --power must be odd (half-integer powers of L)");
  JetPoly u = JetPoly::jet(0);
  JetOp P = frac_power(u, c.power, c.depth);
  std::string body = c.plus ? to_text(plus_part(P)) : to_text(P);
  std::ostringstream os;
  os << "L^{" << c.power << "/2}" << (c.plus ? " plus part" : "")
     << " to depth " << c.depth << ":\n"
     << body << "\n";
  std::fputs(os.str().c_str(), stdout);
  json m = manifest_base("psdo");
  m["config"] = {{"power", c.power},
                 {"depth", c.depth},
                 {"plus", c.plus},
                 {"out", c.out}};
  m["text"] = body;
  if (!c.out.empty()) {
    write_file(prepare_out(c.out) / "psdo.txt", os.str());
    m["files"] = {"psdo.txt"};
  }
  emit_manifest(m, c.out);
  return 0;
}

// --- flow ------------------------------------------------------------------

struct FlowConfig {
  std::string loop = "circle";
  int n = 256;
  double radius = 1.0;
  double alpha = 1.0;
  double amplitude = 0.25;
  unsigned long seed = 12345;
  FlowParams params;
  std::string config_file;
  std::string out;
  std::string format = "csv";
};

// key = value lines; '#' starts a comment.  Keys: dt, steps, scheme (rk4 |
// if), dealias (0 | 1), save_every.
void apply_flow_config_file(const std::string& path, FlowParams& p) {
  std::istringstream is(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "dt")
        p.dt = std::stod(val);
      else if (key == "steps")
        p.steps = std::stoi(val);
      else if (key == "save_every")
        p.save_every = std::stoi(val);
      else if (key == "dealias")
        p.dealias = (val == "1" || val == "true");
      else if (key == "scheme") {
        if (val == "rk4")
          p.scheme = Scheme::rk4_spectral;
        else if (val == "if")
          p.scheme = Scheme::integrating_factor;
        else
          throw ConfigError(path + ": scheme must be rk4 or if");
      } else {
        throw ConfigError(path + ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": bad value for " + key);
    }
  }
}

LoopState build_loop(const FlowConfig& c) {
  if (c.loop == "circle") return circle(c.radius, c.n);
  if (c.loop == "figure-eight") return figure_eight(c.n);
  if (c.loop == "soliton") return soliton(c.alpha, c.n);
  if (c.loop == "random") return random_loop(c.seed, c.amplitude, c.n);
  throw ConfigError("flow: unknown loop '" + c.loop + "'");
}

std::string frame_csv(const LoopState& frame) {
  spectral::cvec gamma = gamma_samples(frame);
  std::vector<double> k = curvature(frame);
  std::ostringstream os;
  os << "s,x,y,k\n";
  for (int j = 0; j < frame.n(); ++j)
    os << fmt_g(frame.s(j)) << "," << fmt_g(gamma[j].real()) << ","
       << fmt_g(gamma[j].imag()) << "," << fmt_g(k[j]) << "\n";
  return os.str();
}

json frame_json(const LoopState& frame, double t) {
  json f;
  f["t"] = t;
  spectral::cvec gamma = gamma_samples(frame);
  std::vector<double> k = curvature(frame);
  json s = json::array(), x = json::array(), y = json::array(),
       kv = json::array();
  for (int j = 0; j < frame.n(); ++j) {
    s.push_back(frame.s(j));
    x.push_back(gamma[j].real());
    y.push_back(gamma[j].imag());
    kv.push_back(k[j]);
  }
  f["s"] = std::move(s);
  f["x"] = std::move(x);
  f["y"] = std::move(y);
  f["k"] = std::move(kv);
  return f;
}

int run_flow(const FlowConfig& c) {
  FlowParams params = c.params;
  if (!c.config_file.empty()) apply_flow_config_file(c.config_file, params);
  LoopState loop = build_loop(c);
  Trajectory traj = evolve_mkdv(loop, params);

  json m = manifest_base("flow");
  m["config"] = {
      {"loop", c.loop},
      {"n", c.n},
      {"radius", c.radius},
      {"alpha", c.alpha},
      {"amplitude", c.amplitude},
      {"seed", c.seed},
      {"dt", params.dt},
      {"steps", params.steps},
      {"scheme", params.scheme == Scheme::rk4_spectral ? "rk4" : "if"},
      {"dealias", params.dealias},
      {"save_every", params.save_every},
      {"config_file", c.config_file},
      {"out", c.out},
      {"format", c.format}};
  json diags = json::array();
  for (const auto& d : traj.diagnostics)
    diags.push_back({{"t", d.t},
                     {"energy", d.energy},
                     {"closure", to_json_c(d.closure)},
                     {"winding", d.winding}});
  m["frames"] = diags;
  m["energy"] = traj.diagnostics.back().energy;
  m["max_energy_drift"] = traj.max_energy_drift;
  m["length"] = loop.length;

  if (!c.out.empty()) {
    fs::path dir = prepare_out(c.out);
    json files = json::array();
    if (c.format == "csv") {
      for (size_t i = 0; i < traj.frames.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof(name), "frame_%06zu.csv", i);
        write_file(dir / name, frame_csv(traj.frames[i]));
        files.push_back(name);
      }
    } else {
      json arr = json::array();
      for (size_t i = 0; i < traj.frames.size(); ++i)
        arr.push_back(frame_json(traj.frames[i], traj.diagnostics[i].t));
      write_file(dir / "frames.json", arr.dump(2) + "\n");
      files.push_back("frames.json");
    }
    m["files"] = files;
  }
  emit_manifest(m, c.out);
  return 0;
}

// --- curve -----------------------------------------------------------------

struct CurveConfig {
  std::string in;
  double tol = 1e-11;
  std::string at;  // "re,im;re,im;..." evaluation point in t-space
  int relations = 0;
  unsigned long seed = 12345;
  std::string out;
};

Eigen::VectorXcd parse_point(const std::string& text, int g) {
  std::vector<cd> vals;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ';')) {
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream ps(part);
    if (!(ps >> re)) throw ConfigError("curve: bad --at component '" + part + "'");
    if (ps >> comma) {
      if (comma != ',' || !(ps >> im))
        throw ConfigError("curve: bad --at component '" + part + "'");
    }
    vals.push_back(cd(re, im));
  }
  if (static_cast<int>(vals.size()) != g)
    throw ConfigError("curve: --at needs " + std::to_string(g) +
                      " components (genus), got " +
                      std::to_string(vals.size()));
  Eigen::VectorXcd t(g);
  for (int i = 0; i < g; ++i) t(i) = vals[static_cast<size_t>(i)];
  return t;
}

int run_curve(const CurveConfig& c) {
  HECurve curve;
  try {
    curve = curve_from_json(read_file(c.in));
  } catch (const std::exception& e) {
    throw ConfigError("curve: " + std::string(e.what()));
  }
  PeriodData pd = periods(curve, c.tol);

  json m = manifest_base("curve");
  m["config"] = {{"in", c.in},       {"tol", c.tol},
                 {"at", c.at},       {"relations", c.relations},
                 {"seed", c.seed},   {"out", c.out}};
  json bps = json::array();
  for (cd b : curve.branch_points) bps.push_back(to_json_c(b));
  m["genus"] = curve.genus;
  m["branch_points"] = bps;
  m["t_symmetry_defect"] = pd.t_symmetry_defect;
  m["legendre_constant"] = to_json_c(pd.legendre_constant);
  m["legendre_defect"] = pd.legendre_defect;
  m["periods"] = json::parse(periods_to_json(pd));

  std::ostringstream os;
  os << "genus " << curve.genus << ", " << curve.branch_points.size()
     << " branch points\n"
     << "T symmetry defect " << fmt_g(pd.t_symmetry_defect)
     << ", Legendre defect " << fmt_g(pd.legendre_defect) << "\n";

  if (!c.at.empty()) {
    BakerSigma sig(curve, pd);
    Eigen::VectorXcd t = parse_point(c.at, curve.genus);
    Eigen::VectorXcd z = pd.omega1.partialPivLu().solve(t);
    cd th = theta(z, pd.T, sig.characteristic());
    cd sg = sig.sigma(t);
    cd u = finite_gap_u_point(sig, t);
    json wp = json::array();
    for (int i = 0; i < curve.genus; ++i) {
      json row = json::array();
      for (int j = 0; j < curve.genus; ++j)
        row.push_back(to_json_c(sig.wp_analytic(i, j, t)));
      wp.push_back(row);
    }
    m["eval"] = {{"t", c.at},
                 {"theta", to_json_c(th)},
                 {"sigma", to_json_c(sg)},
                 {"u", to_json_c(u)},
                 {"wp", wp}};
    os << "sigma(t) = " << fmt_g(sg.real()) << (sg.imag() < 0 ? " - " : " + ")
       << fmt_g(std::abs(sg.imag())) << "i, u(t) = " << fmt_g(u.real())
       << (u.imag() < 0 ? " - " : " + ") << fmt_g(std::abs(u.imag()))
       << "i\n";
  }

  if (c.relations > 0) {
    if (curve.genus != 3)
      throw ConfigError("curve: --relations requires a genus-3 curve");
    std::vector<double> worst =
        genus3_relation_residuals(curve, pd, c.seed, c.relations);
    json rel = json::array();
    int np = 0;
    for (int r = 0; r < 15; ++r) {
      bool ok = worst[static_cast<size_t>(r)] < 1e-6;
      if (ok) ++np;
      rel.push_back({{"relation", r + 1},
                     {"max_residual", worst[static_cast<size_t>(r)]},
                     {"pass", ok}});
      os << "relation " << (r + 1) << ": "
         << fmt_g(worst[static_cast<size_t>(r)]) << (ok ? " pass" : " FAIL")
         << "\n";
    }
    os << np << "/15 relations pass\n";
    m["relations"] = rel;
  }

  std::fputs(os.str().c_str(), stdout);
  if (!c.out.empty()) {
    write_file(prepare_out(c.out) / "periods.json", periods_to_json(pd));
    m["files"] = {"periods.json"};
  }
  emit_manifest(m, c.out);
  return 0;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumConfig {
  std::string source = "builtin:zero";
  std::string potential_file;
  std::string curve_file;
  double period = 6.283185307179586;
  double lame_m = 0.5;
  double lo = -2.0;
  double hi = 6.0;
  int grid = 400;
  double rtol = 1e-11;
  double atol = 1e-13;
  bool edges = false;
  std::string out;
};

PeriodicPotential build_potential(const SpectrumConfig& c, json& m) {
  if (c.source == "builtin:zero") {
    if (c.period <= 0) throw ConfigError("spectrum: --period must be > 0");
    return PeriodicPotential([](double) { return 0.0; }, c.period);
  }
  if (c.source == "builtin:lame") {
    double mm = c.lame_m;
    if (mm <= 0.0 || mm >= 1.0)
      throw ConfigError("spectrum: --lame-m must lie in (0, 1)");
    double P = 2.0 * elliptic::K(mm);
    m["period"] = P;
    return PeriodicPotential(
        [mm](double s) {
          auto j = elliptic::jacobi(s, mm);
          return -2.0 * mm * j.sn * j.sn;
        },
        P);
  }
  if (c.source == "file") {
    if (c.potential_file.empty())
      throw ConfigError("spectrum: --potential required for --source file");
    if (c.period <= 0) throw ConfigError("spectrum: --period must be > 0");
    std::istringstream is(read_file(c.potential_file));
    std::vector<double> samples;
    std::string line;
    while (std::getline(is, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        samples.push_back(std::stod(line));
      } catch (const std::exception&) {
        throw ConfigError("spectrum: bad sample line '" + line + "'");
      }
    }
    if (samples.size() < 32)
      throw ConfigError("spectrum: potential file needs >= 32 samples");
    return PeriodicPotential(samples, c.period);
  }
  if (c.source == "from-curve") {
    if (c.curve_file.empty())
      throw ConfigError("spectrum: --in required for --source from-curve");
    HECurve curve;
    try {
      curve = curve_from_json(read_file(c.curve_file));
    } catch (const std::exception& e) {
      throw ConfigError("spectrum: " + std::string(e.what()));
    }
    if (curve.genus != 1)
      throw ConfigError("spectrum: from-curve needs a genus-1 curve");
    PeriodData pd = periods(curve, 1e-12);
    BakerSigma sig(curve, pd);
    Eigen::VectorXcd base = g1_real_basepoint(pd);
    double P = std::abs(pd.omega1(0, 0));
    const int ns = 128;
    std::vector<double> sgrid(ns), samples(ns);
    for (int j = 0; j < ns; ++j) sgrid[j] = j * P / ns;
    std::vector<cd> uc = finite_gap_u(sig, base, sgrid);
    for (int j = 0; j < ns; ++j) samples[static_cast<size_t>(j)] = uc[static_cast<size_t>(j)].real();
    m["period"] = P;
    return PeriodicPotential(samples, P);
  }
  throw ConfigError("spectrum: unknown source '" + c.source + "'");
}

int run_spectrum(const SpectrumConfig& c) {
  if (c.hi <= c.lo) throw ConfigError("spectrum: need --lo < --hi");
  json m = manifest_base("spectrum");
  m["config"] = {{"source", c.source},
                 {"potential", c.potential_file},
                 {"in", c.curve_file},
                 {"period", c.period},
                 {"lame_m", c.lame_m},
                 {"lo", c.lo},
                 {"hi", c.hi},
                 {"grid", c.grid},
                 {"rtol", c.rtol},
                 {"atol", c.atol},
                 {"edges", c.edges},
                 {"out", c.out}};
  PeriodicPotential u = build_potential(c, m);
  if (!m.contains("period")) m["period"] = u.period();

  std::vector<double> xg(static_cast<size_t>(c.grid));
  for (int j = 0; j < c.grid; ++j)
    xg[static_cast<size_t>(j)] = c.lo + (c.hi - c.lo) * j / (c.grid - 1);
  DiscriminantScan scan = discriminant_scan(u, xg, c.rtol, c.atol);

  std::ostringstream csv;
  csv << "xbar,delta,stable\n";
  int stable_count = 0;
  for (size_t j = 0; j < scan.xbar.size(); ++j) {
    csv << fmt_g(scan.xbar[j]) << "," << fmt_g(scan.delta[j]) << ","
        << (scan.stable[j] ? 1 : 0) << "\n";
    if (scan.stable[j]) ++stable_count;
  }
  m["stable_points"] = stable_count;
  m["scan_points"] = static_cast<int>(scan.xbar.size());

  if (c.edges) {
    std::vector<BandEdge> be = band_edges(u, c.lo, c.hi, c.grid, c.rtol,
                                          c.atol);
    json edges = json::array();
    for (const auto& e : be)
      edges.push_back({{"xbar", e.xbar}, {"simple", e.simple}});
    m["band_edges"] = edges;
  }

  std::printf("scanned %zu points on [%.17g, %.17g], %d stable\n",
              scan.xbar.size(), c.lo, c.hi, stable_count);
  if (!c.out.empty()) {
    write_file(prepare_out(c.out) / "scan.csv", csv.str());
    m["files"] = {"scan.csv"};
  }
  emit_manifest(m, c.out);
  return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyConfig {
  std::string suite = "all";
  unsigned long seed = 12345;
  int points = 10;
  std::string out;
};

int run_verify(const VerifyConfig& c) {
  std::vector<SuiteReport> reports;
  bool all = c.suite == "all";
  if (all || c.suite == "lax") reports.push_back(verify_lax());
  if (all || c.suite == "miura") reports.push_back(verify_miura(c.seed));
  if (all || c.suite == "genus3")
    reports.push_back(verify_genus3(c.seed, c.points));
  if (all || c.suite == "roundtrip") reports.push_back(verify_roundtrip());
  if (reports.empty())
    throw ConfigError("verify: unknown suite '" + c.suite + "'");

  std::string table = format_reports(reports);
  std::fputs(table.c_str(), stdout);

  json m = manifest_base("verify");
  m["config"] = {{"suite", c.suite},
                 {"seed", c.seed},
                 {"points", c.points},
                 {"out", c.out}};
  json suites = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& ck : r.checks)
      checks.push_back({{"name", ck.name},
                        {"residual", ck.residual},
                        {"tol", ck.tol},
                        {"pass", ck.pass}});
    suites.push_back(
        {{"suite", r.suite}, {"checks", checks}, {"pass", r.all_pass()}});
    pass = pass && r.all_pass();
  }
  m["suites"] = suites;
  m["pass"] = pass;
  emit_manifest(m, c.out);
  return pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Symbolic and numeric toolkit for isometric loop dynamics:"
               " KdV hierarchy symbolics, operator algebra, curvature flows,"
               " hyperelliptic sigma functions, and Hill spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("elastica ") + kToolVersion);

  HierarchyConfig hc;
  auto* hier = app.add_subcommand(
      "hierarchy", "Print the hierarchy fields X_1 .. X_n in canonical form");
  hier->add_option("--n", hc.n, "Highest equation to print")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  hier->add_option("--out", hc.out, "Output directory");

  PsdoConfig pc;
  auto* psdo = app.add_subcommand(
      "psdo", "Print a fractional power of the Lax operator");
  psdo->add_option("--power", pc.power, "Odd numerator m of L^{m/2}")
      ->check(CLI::Range(1, 9))
      ->capture_default_str();
  psdo->add_option("--depth", pc.depth, "Truncation depth below del^0")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  psdo->add_flag("--plus", pc.plus, "Print only the differential-operator part");
  psdo->add_option("--out", pc.out, "Output directory");

  FlowConfig fc;
  auto* flow = app.add_subcommand(
      "flow", "Evolve a closed loop under the isometric curvature flow");
  flow->add_option("--loop", fc.loop, "circle | figure-eight | soliton | random")
      ->check(CLI::IsMember({"circle", "figure-eight", "soliton", "random"}))
      ->capture_default_str();
  flow->add_option("--n", fc.n, "Sample count (even, >= 16)")
      ->capture_default_str();
  flow->add_option("--radius", fc.radius, "Circle radius")
      ->capture_default_str();
  flow->add_option("--alpha", fc.alpha, "Soliton curvature scale")
      ->capture_default_str();
  flow->add_option("--amplitude", fc.amplitude, "Random loop amplitude")
      ->capture_default_str();
  flow->add_option("--seed", fc.seed, "Random loop seed")
      ->capture_default_str();
  flow->add_option("--dt", fc.params.dt, "Time step")->capture_default_str();
  flow->add_option("--steps", fc.params.steps, "Step count")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  std::map<std::string, Scheme> scheme_names{
      {"rk4", Scheme::rk4_spectral}, {"if", Scheme::integrating_factor}};
  flow->add_option("--scheme", fc.params.scheme, "rk4 | if")
      ->transform(CLI::CheckedTransformer(scheme_names))
      ->default_str("if");
  flow->add_flag("!--no-dealias", fc.params.dealias,
                 "Disable the 2/3-rule mode mask");
  flow->add_option("--save-every", fc.params.save_every,
                   "Frame cadence in steps (0: first and last only)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  flow->add_option("--config", fc.config_file,
                   "key = value file overriding dt/steps/scheme/dealias/"
                   "save_every")
      ->check(CLI::ExistingFile);
  flow->add_option("--out", fc.out, "Output directory");
  flow->add_option("--format", fc.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CurveConfig cc;
  auto* curve = app.add_subcommand(
      "curve", "Periods, sigma/theta/wp evaluation, and relation checks of a"
               " hyperelliptic curve");
  curve->add_option("--in", cc.in, "Curve JSON {genus, branch_points}")
      ->required()
      ->check(CLI::ExistingFile);
  curve->add_option("--tol", cc.tol, "Period quadrature tolerance")
      ->capture_default_str();
  curve->add_option("--at", cc.at,
                    "Evaluation point, g components 're,im' joined by ';'");
  curve->add_option("--relations", cc.relations,
                    "Check the 15 genus-3 wp relations at this many points")
      ->check(CLI::Range(0, 1000));
  curve->add_option("--seed", cc.seed, "Relation point sampling seed")
      ->capture_default_str();
  curve->add_option("--out", cc.out, "Output directory");

  SpectrumConfig sc;
  auto* spectrum = app.add_subcommand(
      "spectrum", "Hill discriminant scan and band edges of a periodic"
                  " potential");
  spectrum->add_option("--source", sc.source,
                       "file | builtin:zero | builtin:lame | from-curve")
      ->check(CLI::IsMember(
          {"file", "builtin:zero", "builtin:lame", "from-curve"}))
      ->capture_default_str();
  spectrum->add_option("--potential", sc.potential_file,
                       "Sample file (one value per line) for --source file")
      ->check(CLI::ExistingFile);
  spectrum->add_option("--in", sc.curve_file,
                       "Curve JSON for --source from-curve")
      ->check(CLI::ExistingFile);
  spectrum->add_option("--period", sc.period,
                       "Potential period (zero/file sources)")
      ->capture_default_str();
  spectrum->add_option("--lame-m", sc.lame_m,
                       "Modulus m of the one-gap potential -2 m sn^2(s|m)")
      ->capture_default_str();
  spectrum->add_option("--lo", sc.lo, "Scan lower end")->capture_default_str();
  spectrum->add_option("--hi", sc.hi, "Scan upper end")->capture_default_str();
  spectrum->add_option("--grid", sc.grid, "Scan point count")
      ->check(CLI::Range(8, 100000))
      ->capture_default_str();
  spectrum->add_option("--rtol", sc.rtol, "Integrator relative tolerance")
      ->capture_default_str();
  spectrum->add_option("--atol", sc.atol, "Integrator absolute tolerance")
      ->capture_default_str();
  spectrum->add_flag("--edges", sc.edges, "Locate band edges on [lo, hi]");
  spectrum->add_option("--out", sc.out, "Output directory");

  VerifyConfig vc;
  auto* verify = app.add_subcommand(
      "verify", "Run the cross-module identity suites and print a pass/fail"
                " table");
  verify->add_option("--suite", vc.suite,
                     "all | lax | miura | genus3 | roundtrip")
      ->check(CLI::IsMember({"all", "lax", "miura", "genus3", "roundtrip"}))
      ->capture_default_str();
  verify->add_option("--seed", vc.seed, "Sampling seed")
      ->capture_default_str();
  verify->add_option("--points", vc.points, "Genus-3 sample point count")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  verify->add_option("--out", vc.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (hier->parsed()) return run_hierarchy(hc);
    if (psdo->parsed()) return run_psdo(pc);
    if (flow->parsed()) return run_flow(fc);
    if (curve->parsed()) return run_curve(cc);
    if (spectrum->parsed()) return run_spectrum(sc);
    if (verify->parsed()) return run_verify(vc);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const DegenerateCurve& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace elastica
