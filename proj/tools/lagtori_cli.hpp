#pragma once

// Command-line front end. run() is separate from main() so the tests can drive
// every subcommand in-process.

#include <lagtori/lagtori.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lagtori::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

inline constexpr unsigned kDefaultSeed = 20240601;

/// Rounds to 12 significant digits so JSON matches the text output.
inline double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameters shared by the subcommands; a JSON file supplies defaults and
/// explicit flags win.
struct RunConfig {
  std::string config_path;
  std::vector<int> alpha;
  std::optional<double> a1, a2;
  std::string branch = "minus";
  int cover = 1;
  double quad_tol = 1e-10;
  double epsilon = 1e-4;
  double rational_tol = 1e-8;
  long long max_den = 1'000'000;
  unsigned workers = 0;
  unsigned seed = kDefaultSeed;
  std::string output_dir = "certificates";
};

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
}

/// Fills fields that were not given on the command line from the config file.
inline void apply_config(RunConfig& cfg, const CLI::App& sub) {
  if (cfg.config_path.empty()) return;
  const auto j = load_json(cfg.config_path);
  auto given = [&](const char* name) {
    const auto* o = sub.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  try {
    if (j.contains("alpha") && !given("--alpha")) cfg.alpha = j["alpha"].get<std::vector<int>>();
    if (j.contains("a1") && !given("--a1")) cfg.a1 = j["a1"].get<double>();
    if (j.contains("a2") && !given("--a2")) cfg.a2 = j["a2"].get<double>();
    if (j.contains("branch") && !given("--branch")) cfg.branch = j["branch"].get<std::string>();
    if (j.contains("N") && !given("--N")) cfg.cover = j["N"].get<int>();
    if (j.contains("quad_tol") && !given("--quad-tol")) cfg.quad_tol = j["quad_tol"].get<double>();
    if (j.contains("epsilon") && !given("--epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("rational_tol") && !given("--tol")) cfg.rational_tol = j["rational_tol"].get<double>();
    if (j.contains("max_den") && !given("--max-den")) cfg.max_den = j["max_den"].get<long long>();
    if (j.contains("workers") && !given("--workers")) cfg.workers = j["workers"].get<unsigned>();
    if (j.contains("seed") && !given("--seed")) cfg.seed = j["seed"].get<unsigned>();
    if (j.contains("output_dir") && !given("--output-dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + cfg.config_path + ": " + e.what());
  }
  if (!(cfg.quad_tol > 0.0) || !(cfg.epsilon > 0.0) || !(cfg.rational_tol > 0.0)) {
    throw UsageError("tolerances must be positive");
  }
}

inline void add_param_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--config", cfg.config_path, "JSON parameter file {alpha, a1, a2, branch}");
  sub.add_option("--alpha", cfg.alpha, "integer weights alpha1 alpha2 alpha3")->expected(3);
  sub.add_option("--a1", cfg.a1, "modulus a1");
  sub.add_option("--a2", cfg.a2, "modulus a2");
  sub.add_option("--branch", cfg.branch, "root of the biquadratic for c2: plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
}

struct ResolvedAlpha {
  AlphaTriple alpha;
  std::optional<AlphaNormalization> transform;  // set when the input was not already normalized
};

inline ResolvedAlpha resolve_alpha(const std::vector<int>& raw) {
  if (raw.size() != 3) throw UsageError("--alpha needs exactly three integers");
  const AlphaTriple a(raw[0], raw[1], raw[2]);
  if (a.weakly_normalized()) return {a, std::nullopt};
  const auto n = normalize(a);
  if (!n) throw InfeasibleInput("alpha " + a.str() + " has all entries of one sign: no feasible moduli");
  return {n->alpha, n};
}

inline MironovTorus build_torus(const RunConfig& cfg, std::ostream& out) {
  if (cfg.alpha.empty()) throw UsageError("missing --alpha");
  if (!cfg.a1 || !cfg.a2) throw UsageError("missing --a1/--a2");
  const auto ra = resolve_alpha(cfg.alpha);
  if (ra.transform) out << "alpha normalized to " << ra.alpha.str() << " (" << ra.transform->describe() << ")\n";
  try {
    return MironovTorus(ra.alpha, ModuliPoint{*cfg.a1, *cfg.a2, root_branch_from_string(cfg.branch)});
  } catch (const InfeasibleParameters& e) {
    throw InfeasibleInput(e.what());
  } catch (const DegenerateParameters& e) {
    throw InfeasibleInput(e.what());
  }
}

// ---- energy ------------------------------------------------------------------

struct EnergyArgs {
  std::string family = "mironov";
  std::vector<double> r;
  bool json = false;
};

inline int cmd_energy(const RunConfig& cfg, const EnergyArgs& ea, std::ostream& out) {
  out.precision(12);
  nlohmann::json j;
  if (ea.family == "clifford") {
    const double e = clifford_energy();
    out << "E = " << e << "\nratio = 1\n";
    j = {{"family", "clifford"}, {"E", sig12(e)}, {"ratio", 1.0}};
  } else if (ea.family == "homogeneous") {
    if (ea.r.size() != 3) throw UsageError("--r needs three positive radii");
    HomogeneousParams p;
    try {
      p = HomogeneousParams::normalized(ea.r[0], ea.r[1], ea.r[2]);
    } catch (const std::invalid_argument& e) {
      throw InfeasibleInput(e.what());
    }
    const double e = homogeneous_energy(p);
    out << "r = (" << p.r1 << ", " << p.r2 << ", " << p.r3 << ") (rescaled to unit norm)\n";
    out << "E = " << e << "\nratio = " << e / clifford_energy() << '\n';
    j = {{"family", "homogeneous"},
         {"r", {sig12(p.r1), sig12(p.r2), sig12(p.r3)}},
         {"E", sig12(e)},
         {"ratio", sig12(e / clifford_energy())}};
  } else if (ea.family == "mnk") {
    out << "energy of the (m, n, k) family is not computed; see mnk_family topology predicate only\n";
    return kExitOk;
  } else {
    const auto t = build_torus(cfg, out);
    const auto v = energy_mironov(t, cfg.cover);
    const auto& d = t.constants();
    out << "alpha = " << t.alpha().str() << ", a1 = " << t.point().a1 << ", a2 = " << t.point().a2
        << ", branch = " << to_string(t.point().branch) << ", N = " << cfg.cover << '\n';
    out << "c2 = " << d.c2 << "\na3 = " << d.a3 << "\na = " << d.a << "\nb = " << d.b << "\nm = " << d.m
        << "\nT = " << d.T << '\n';
    out << "A = " << v.A << "\nW = " << v.W << "\nE = " << v.E << "\nratio = " << v.ratio << '\n';
    j = {{"family", "mironov"},
         {"alpha", {t.alpha()[0], t.alpha()[1], t.alpha()[2]}},
         {"a1", sig12(t.point().a1)},
         {"a2", sig12(t.point().a2)},
         {"branch", to_string(t.point().branch)},
         {"N", cfg.cover},
         {"c2", sig12(d.c2)},
         {"a3", sig12(d.a3)},
         {"a", sig12(d.a)},
         {"T", sig12(d.T)},
         {"A", sig12(v.A)},
         {"W", sig12(v.W)},
         {"E", sig12(v.E)},
         {"ratio", sig12(v.ratio)}};
  }
  if (ea.json) out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- scan --------------------------------------------------------------------

struct ScanArgs {
  std::vector<int> alphas;
  int grid = 20;
  std::string branches = "both";
  std::string format = "csv";
  std::string output;
};

inline const char* kScanCsvHeader = "alpha1,alpha2,alpha3,a1,a2,branch,c2,a3,a,T,A,W,E,ratio";

struct ScanRow {
  AlphaTriple alpha;
  double a1 = 0.0, a2 = 0.0;
  RootBranch branch = RootBranch::Minus;
  DerivedConstants d;
  FunctionalValues v;
};

/// Cell-centred grid x grid samples of the moduli box with a2 < a1.
inline std::vector<std::pair<double, double>> box_samples(const AlphaTriple& al, int grid) {
  std::vector<std::pair<double, double>> pts;
  if (!al.normalized()) return pts;
  const Interval box = lemma3_box(al);
  const double lo = box.lo, w = box.hi - box.lo;
  for (int i = 0; i < grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      const double a1 = lo + (i + 0.5) * w / grid;
      const double a2 = lo + (k + 0.5) * w / grid;
      if (a2 < a1 && a2 > 0.0) pts.emplace_back(a1, a2);
    }
  }
  return pts;
}

inline int cmd_scan(const RunConfig& cfg, const ScanArgs& sa, std::ostream& out, std::ostream& err) {
  std::vector<int> flat = sa.alphas;
  if (flat.empty()) flat = cfg.alpha;
  if (flat.empty() || flat.size() % 3 != 0) throw UsageError("--alpha needs triples of integers");
  if (sa.grid < 1) throw UsageError("--grid must be positive");
  std::vector<RootBranch> branches;
  if (sa.branches == "both" || sa.branches == "minus") branches.push_back(RootBranch::Minus);
  if (sa.branches == "both" || sa.branches == "plus") branches.push_back(RootBranch::Plus);

  std::vector<ScanRow> rows;
  std::size_t skipped = 0;
  for (std::size_t s = 0; s < flat.size(); s += 3) {
    const auto ra = resolve_alpha({flat[s], flat[s + 1], flat[s + 2]});
    const auto pts = box_samples(ra.alpha, sa.grid);
    if (pts.empty()) {
      err << "warning: empty feasible set for alpha = " << ra.alpha.str() << '\n';
      continue;
    }
    for (auto br : branches) {
      for (auto [a1, a2] : pts) {
        try {
          MironovTorus t(ra.alpha, ModuliPoint{a1, a2, br});
          rows.push_back({ra.alpha, a1, a2, br, t.constants(), energy_mironov(t, cfg.cover)});
        } catch (const DegenerateParameters&) {
          ++skipped;
        }
      }
    }
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!sa.output.empty()) {
    file.open(sa.output);
    if (!file) throw std::runtime_error("cannot write " + sa.output);
    os = &file;
  }
  os->precision(12);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) min_ratio = std::min(min_ratio, r.v.ratio);
  if (sa.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"alpha", {r.alpha[0], r.alpha[1], r.alpha[2]}},
                     {"a1", sig12(r.a1)},
                     {"a2", sig12(r.a2)},
                     {"branch", to_string(r.branch)},
                     {"c2", sig12(r.d.c2)},
                     {"a3", sig12(r.d.a3)},
                     {"a", sig12(r.d.a)},
                     {"T", sig12(r.d.T)},
                     {"A", sig12(r.v.A)},
                     {"W", sig12(r.v.W)},
                     {"E", sig12(r.v.E)},
                     {"ratio", sig12(r.v.ratio)}});
    }
    *os << nlohmann::json{{"rows", arr}, {"min_ratio", rows.empty() ? nlohmann::json() : nlohmann::json(sig12(min_ratio))}}
               .dump(2)
        << '\n';
  } else {
    *os << kScanCsvHeader << '\n';
    for (const auto& r : rows) {
      *os << r.alpha[0] << ',' << r.alpha[1] << ',' << r.alpha[2] << ',' << r.a1 << ',' << r.a2 << ','
          << to_string(r.branch) << ',' << r.d.c2 << ',' << r.d.a3 << ',' << r.d.a << ',' << r.d.T << ','
          << r.v.A << ',' << r.v.W << ',' << r.v.E << ',' << r.v.ratio << '\n';
    }
  }
  err.precision(12);
  err << "rows: " << rows.size();
  if (!rows.empty()) err << ", min ratio: " << min_ratio;
  if (skipped > 0) err << ", skipped (c2 = 0): " << skipped;
  err << '\n';
  return (!rows.empty() && !(min_ratio > 1.0)) ? kExitFailed : kExitOk;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string target = "all";
  std::optional<double> threshold;
  int max_depth = 40;
  int samples = 200;
  bool write = true;
};

inline void write_certificate(const std::string& dir, const std::string& name, const nlohmann::json& j) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) throw std::runtime_error("cannot write certificate " + name + " to " + dir);
  f << j.dump(2) << '\n';
}

inline nlohmann::json lemma_json(const LemmaCertification& l) {
  nlohmann::json j{{"status", to_string(l.status())}, {"main", to_json(l.main)}, {"notes", l.notes}};
  auto& b = j["boundary"] = nlohmann::json::array();
  for (const auto& c : l.boundary) b.push_back(to_json(c));
  return j;
}

inline void print_certificate(std::ostream& out, const Certificate& c) {
  out << "  " << c.target << " > " << c.threshold << " on " << c.domain << ": " << to_string(c.status)
      << " (boxes " << c.boxes_examined << ", max depth " << c.max_depth << "/" << c.depth_limit
      << ", eps " << c.epsilon << ", digest " << c.digest() << ")\n";
  if (c.witness) {
    out << "    witness x = " << c.witness->x << ", y = " << c.witness->y << ", value <= " << c.witness->value_upper
        << '\n';
  }
  if (c.deepest_failing) {
    out << "    deepest undecided box " << c.deepest_failing->x << " x " << c.deepest_failing->y << '\n';
  }
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline int status_exit(Status s) {
  switch (s) {
    case Status::Proved: return kExitOk;
    case Status::Failed: return kExitFailed;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitFailed;
}

/// Worst-of combination: Inconclusive outranks Failed for the exit code because
/// it signals an unfinished run.
inline int combine_exit(int a, int b) {
  if (a == kExitInconclusive || b == kExitInconclusive) return kExitInconclusive;
  return std::max(a, b);
}

/// Random feasible points over a fixed weight list; counts violations of the
/// area and Willmore estimates.
inline std::pair<int, int> sampled_functional_bounds(int samples, unsigned seed) {
  const std::vector<AlphaTriple> list{{2, 1, -1}, {3, 1, -1}, {3, 2, -1}, {1, 0, -1}, {2, 0, -1}};
  std::mt19937_64 rng(seed);
  int checked = 0, violations = 0;
  for (int i = 0; i < samples; ++i) {
    const auto& al = list[static_cast<std::size_t>(i) % list.size()];
    const Interval box = lemma3_box(al);
    std::uniform_real_distribution<double> u(box.lo, box.hi);
    double a1 = u(rng), a2 = u(rng);
    if (a1 < a2) std::swap(a1, a2);
    if (!(a2 < a1) || !(a2 > 0.0)) continue;
    const auto br = (i / list.size()) % 2 == 0 ? RootBranch::Minus : RootBranch::Plus;
    try {
      MironovTorus t(al, ModuliPoint{a1, a2, br});
      ++checked;
      if (!(area_mironov(t) > area_lower_bound(t)) || !(willmore_mironov(t) > willmore_lower_bound(t))) {
        ++violations;
      }
    } catch (const DegenerateParameters&) {
    }
  }
  return {checked, violations};
}

inline int cmd_verify(const RunConfig& cfg, const VerifyArgs& va, std::ostream& out) {
  out.precision(12);
  const std::string& tg = va.target;
  if (tg != "all" && tg != "B1" && tg != "B2" && tg != "scalar" && tg != "functionals") {
    throw UsageError("--target must be all, B1, B2, scalar or functionals");
  }
  if (va.max_depth < 1) throw UsageError("--max-depth must be positive");
  out << "seed: " << cfg.seed << "\nepsilon: " << cfg.epsilon << "\nmax depth: " << va.max_depth << '\n';
  int code = kExitOk;

  auto run_lemma = [&](const std::string& label, const LemmaCertification& l, const std::string& file) {
    out << label << ": " << to_string(l.status()) << '\n';
    print_certificate(out, l.main);
    for (const auto& c : l.boundary) print_certificate(out, c);
    for (const auto& n : l.notes) out << "  note: " << n << '\n';
    if (va.write) write_certificate(cfg.output_dir, file, lemma_json(l));
    code = combine_exit(code, status_exit(l.status()));
  };

  if (tg == "all" || tg == "B1") {
    const double thr = va.threshold.value_or(1.0);
    run_lemma("B1 > " + fmt(thr), certify_lemma4(thr, cfg.epsilon, cfg.workers, va.max_depth), "B1.json");
  }
  if (tg == "all" || tg == "B2") {
    const double thr = va.threshold.value_or(0.9);
    run_lemma("B2 > " + fmt(thr), certify_lemma5(thr, cfg.epsilon, cfg.workers, va.max_depth), "B2.json");
  }
  if (tg == "all") {
    const auto c = certify_b1_at(0.9, cfg.epsilon, cfg.workers, va.max_depth);
    out << "B1 > 0.9: " << to_string(c.status) << '\n';
    print_certificate(out, c);
    if (va.write) write_certificate(cfg.output_dir, "B1_0.9.json", to_json(c));
    code = combine_exit(code, status_exit(c.status));
  }
  if (tg == "all" || tg == "scalar") {
    const auto rep = scalar_bound_checks();
    nlohmann::json j = nlohmann::json::array();
    for (const auto& b : rep.bounds) {
      out << "scalar " << b.name << " > 4/(3 sqrt 3): " << (b.proved() ? "Proved" : "not proved") << '\n';
      print_certificate(out, b.certificate);
      nlohmann::json tails = nlohmann::json::array();
      for (const auto& t : b.tail) {
        out << "    tail: " << t.statement << " [" << t.value.lo << ", " << t.value.hi << "] "
            << (t.holds ? "holds" : "FAILS") << '\n';
        tails.push_back({{"statement", t.statement}, {"lo", t.value.lo}, {"hi", t.value.hi}, {"holds", t.holds}});
      }
      j.push_back({{"name", b.name}, {"certificate", to_json(b.certificate)}, {"tail", tails}});
      // a Proved range with a failing tail still counts as Failed
      const Status s = b.proved() ? Status::Proved
                       : b.certificate.status == Status::Proved ? Status::Failed
                                                                : b.certificate.status;
      code = combine_exit(code, status_exit(s));
    }
    if (va.write) write_certificate(cfg.output_dir, "scalar.json", j);
  }
  if (tg == "all" || tg == "functionals") {
    const auto [checked, bad] = sampled_functional_bounds(va.samples, cfg.seed);
    out << "area and Willmore lower bounds at " << checked << " sampled feasible points: " << bad
        << " violations\n";
    if (bad > 0) code = combine_exit(code, kExitFailed);
  }
  if (va.write) out << "certificates written to " << cfg.output_dir << '\n';
  return code;
}

// ---- periodicity -------------------------------------------------------------

inline nlohmann::json rational_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}}; }

inline int cmd_periodicity(const RunConfig& cfg, std::ostream& out) {
  const auto t = build_torus(cfg, out);
  if (!t.alpha().coprime()) {
    throw InfeasibleInput("gcd(alpha1 - alpha3, alpha2 - alpha3) must be 1 for alpha = " + t.alpha().str());
  }
  const auto res = rational_fit(t, cfg.max_den, cfg.rational_tol);
  nlohmann::json j;
  if (const auto* L = std::get_if<LatticeData>(&res)) {
    j = {{"status", "periodic"},
         {"dG13", sig12(L->dg.d13)},
         {"dG23", sig12(L->dg.d23)},
         {"mu", sig12(L->mu)},
         {"mu_fit", rational_json(L->mu_fit)},
         {"tau", sig12(L->tau)},
         {"lambda1", rational_json(L->lambda1)},
         {"lambda2", rational_json(L->lambda2)},
         {"N", L->N},
         {"e1", {sig12(L->e1[0]), sig12(L->e1[1])}},
         {"e2", {sig12(L->e2[0]), sig12(L->e2[1])}},
         {"approx_error", sig12(L->approx_error)}};
  } else {
    const auto& np = std::get<NotPeriodic>(res);
    j = {{"status", "not periodic"},
         {"mu", sig12(np.mu)},
         {"best", rational_json(np.best)},
         {"residual", sig12(np.residual)},
         {"tol", cfg.rational_tol}};
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- export ------------------------------------------------------------------

struct ExportArgs {
  std::string family = "mironov";
  std::vector<double> r;
  std::vector<int> grid{64, 64};
  int chart = -1;
  std::string csv;
  std::string obj;
};

inline int cmd_export(const RunConfig& cfg, const ExportArgs& xa, std::ostream& out) {
  if (xa.grid.size() != 2 || xa.grid[0] < 1 || xa.grid[1] < 1) throw UsageError("--grid needs two positive sizes");
  if (xa.chart < -1 || xa.chart > 2) throw UsageError("--chart must be 0, 1 or 2");
  std::vector<SampleRow> rows;
  if (xa.family == "homogeneous") {
    if (xa.r.size() != 3) throw UsageError("--r needs three positive radii");
    HomogeneousParams p;
    try {
      p = HomogeneousParams::normalized(xa.r[0], xa.r[1], xa.r[2]);
    } catch (const std::invalid_argument& e) {
      throw InfeasibleInput(e.what());
    }
    const HomogeneousTorus h(p);
    rows = export_samples(h.view(), xa.grid[0], xa.grid[1], xa.chart);
  } else {
    std::ostringstream sink;
    const auto t = build_torus(cfg, sink);
    rows = export_samples(view_of(t), xa.grid[0], xa.grid[1], xa.chart);
  }
  if (xa.csv.empty()) {
    write_samples_csv(out, rows);
  } else {
    std::ofstream f(xa.csv);
    if (!f) throw std::runtime_error("cannot write " + xa.csv);
    write_samples_csv(f, rows);
  }
  if (!xa.obj.empty()) {
    std::ofstream f(xa.obj);
    if (!f) throw std::runtime_error("cannot write " + xa.obj);
    write_samples_obj(f, rows);
  }
  return kExitOk;
}

// ---- mnk ---------------------------------------------------------------------

inline int cmd_mnk(int m, int n, int k, std::ostream& out) {
  MnkParams p;
  try {
    p = MnkParams(m, n, k);
  } catch (const std::invalid_argument& e) {
    throw InfeasibleInput(e.what());
  }
  out << (is_torus(p) ? "torus" : "Klein bottle") << '\n';
  out << "orientation convention: " << kMnkOrientationConvention << '\n';
  return kExitOk;
}

// ---- feasibility -------------------------------------------------------------

inline int cmd_feasibility(const RunConfig& cfg, std::ostream& out) {
  out.precision(12);
  if (cfg.alpha.empty()) throw UsageError("missing --alpha");
  if (!cfg.a1 || !cfg.a2) throw UsageError("missing --a1/--a2");
  const auto ra = resolve_alpha(cfg.alpha);
  if (ra.transform) out << "alpha normalized to " << ra.alpha.str() << " (" << ra.transform->describe() << ")\n";
  const double a1 = *cfg.a1, a2 = *cfg.a2;
  if (!(a1 > a2 && a2 > 0.0)) throw InfeasibleInput("a1 > a2 > 0 violated");
  const auto rep = feasibility_check(ra.alpha, a1, a2);
  out << "P = " << rep.p << "\ndiscriminant = " << rep.discriminant << '\n';
  const Interval box = lemma3_box(ra.alpha);
  out << "box: [" << box.lo << ", " << box.hi << "]\n";
  out << "feasible: " << (rep.feasible ? "yes" : "no") << '\n';
  if (!rep.feasible) {
    if (auto why = lemma3_violation(ra.alpha, a1, a2)) out << "violated: " << *why << '\n';
    return kExitInfeasible;
  }
  const auto roots = solve_c2(ra.alpha, a1, a2);
  out << "c2 (plus) = " << roots.plus << "\nc2 (minus) = " << roots.minus << '\n';
  return kExitOk;
}

// ---- entry point -------------------------------------------------------------

/// Runs the command line (without the program name). Returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy functional of Lagrangian tori in CP^2: evaluation, sweeps and certified bounds", "lagtori"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* energy = app.add_subcommand("energy", "A, W, E and E/E_Cl for one torus");
  EnergyArgs ea;
  add_param_options(*energy, cfg);
  energy->add_option("--family", ea.family, "mironov, homogeneous, clifford or mnk")
      ->check(CLI::IsMember({"mironov", "homogeneous", "clifford", "mnk"}));
  energy->add_option("--r", ea.r, "homogeneous radii r1 r2 r3")->expected(3);
  energy->add_option("--N", cfg.cover, "cover multiplicity N")->check(CLI::PositiveNumber);
  energy->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance per period");
  energy->add_flag("--json", ea.json, "also print JSON");

  auto* scan = app.add_subcommand("scan", "energy over a grid of the moduli box");
  ScanArgs sa;
  scan->add_option("--config", cfg.config_path, "JSON parameter file");
  scan->add_option("--alpha", sa.alphas, "one or more weight triples")->allow_extra_args()->expected(3, 3 * 64);
  scan->add_option("--grid", sa.grid, "grid resolution per axis");
  scan->add_option("--branch", sa.branches, "plus, minus or both")->check(CLI::IsMember({"plus", "minus", "both"}));
  scan->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--output", sa.output, "output file (default stdout)");
  scan->add_option("--N", cfg.cover, "cover multiplicity N")->check(CLI::PositiveNumber);
  scan->add_option("--workers", cfg.workers, "parallelism (rows are computed in order)");

  auto* verify = app.add_subcommand("verify", "certify the B1, B2 and scalar lower bounds");
  VerifyArgs va;
  verify->add_option("--config", cfg.config_path, "JSON configuration file");
  verify->add_option("--target", va.target, "all, B1, B2, scalar or functionals");
  verify->add_option("--threshold", va.threshold, "threshold for B1 or B2");
  verify->add_option("--epsilon", cfg.epsilon, "boundary inset")->check(CLI::PositiveNumber);
  verify->add_option("--max-depth", va.max_depth, "subdivision depth limit");
  verify->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
  verify->add_option("--output-dir", cfg.output_dir, "certificate directory");
  verify->add_option("--samples", va.samples, "sampled points for the area and Willmore bounds");
  verify->add_option("--seed", cfg.seed, "seed for the sampled checks");
  verify->add_flag("!--no-write", va.write, "do not write certificate files");

  auto* period = app.add_subcommand("periodicity", "rational fit of the phase invariant and lattice");
  add_param_options(*period, cfg);
  period->add_option("--max-den", cfg.max_den, "denominator cap")->check(CLI::PositiveNumber);
  period->add_option("--tol", cfg.rational_tol, "acceptance tolerance for |mu - p/q|")->check(CLI::PositiveNumber);

  auto* exp = app.add_subcommand("export", "sample the surface in an affine chart (CSV, OBJ)");
  ExportArgs xa;
  add_param_options(*exp, cfg);
  exp->add_option("--family", xa.family, "mironov or homogeneous")->check(CLI::IsMember({"mironov", "homogeneous"}));
  exp->add_option("--r", xa.r, "homogeneous radii")->expected(3);
  exp->add_option("--grid", xa.grid, "nx ny")->expected(2);
  exp->add_option("--chart", xa.chart, "affine chart index 0, 1, 2 (default: largest component)");
  exp->add_option("--csv", xa.csv, "CSV output file (default stdout)");
  exp->add_option("--obj", xa.obj, "OBJ vertex output file");

  auto* mnk = app.add_subcommand("mnk", "torus or Klein bottle for (m, n, k)");
  int m = 0, n = 0, k = 0;
  mnk->add_option("--m", m)->required();
  mnk->add_option("--n", n)->required();
  mnk->add_option("--k", k)->required();

  auto* feas = app.add_subcommand("feasibility", "solvability of the c2 equation at (alpha, a1, a2)");
  add_param_options(*feas, cfg);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (energy->parsed()) {
      apply_config(cfg, *energy);
      return cmd_energy(cfg, ea, out);
    }
    if (scan->parsed()) {
      apply_config(cfg, *scan);
      return cmd_scan(cfg, sa, out, err);
    }
    if (verify->parsed()) {
      apply_config(cfg, *verify);
      return cmd_verify(cfg, va, out);
    }
    if (period->parsed()) {
      apply_config(cfg, *period);
      return cmd_periodicity(cfg, out);
    }
    if (exp->parsed()) {
      apply_config(cfg, *exp);
      return cmd_export(cfg, xa, out);
    }
    if (mnk->parsed()) return cmd_mnk(m, n, k, out);
    if (feas->parsed()) {
      apply_config(cfg, *feas);
      return cmd_feasibility(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleInput& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SingularIntegrand& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace lagtori::cli
