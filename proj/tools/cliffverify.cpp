#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cliffverify.hpp"

using namespace cliffverify;

namespace {

// "3", "3,4", "3-5" or "2,4-6".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(std::stoi(item));
    } else {
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = std::stoi(item.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

struct Options {
  std::string m = "3,4";
  std::string k = "0-2";
  std::uint64_t seed = 1;
  int trials = 3;
  int workers = 1;
  int x_degree = 2;
  std::string format = "json";
  std::string out;
  std::vector<std::string> maps;
  std::vector<std::string> theorems;
  bool mutate = false;
  bool no_timing = false;

  RunConfig config() const {
    RunConfig c;
    c.ms = parse_int_list(m);
    c.ks = parse_int_list(k);
    for (int v : c.ms) check_dimension(v);
    for (int v : c.ks)
      if (v < 0) throw std::invalid_argument("k must be non-negative");
    c.seed = seed;
    c.trials = trials;
    c.workers = workers;
    c.x_degree = x_degree;
    if (!maps.empty()) {
      c.maps.clear();
      for (const auto& s : maps) c.maps.push_back(parse_map_class(s));
    }
    if (!theorems.empty()) {
      c.theorems.clear();
      for (const auto& s : theorems) c.theorems.push_back(parse_stokes_theorem(s));
    }
    if (mutate) c.rule.shift = -1;
    return c;
  }
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--m", o.m, "dimensions, e.g. 3 or 3,4 or 3-5")->envname("CLIFFVERIFY_M")->capture_default_str();
  app->add_option("--k", o.k, "degrees in u, same syntax as --m")->envname("CLIFFVERIFY_K")->capture_default_str();
  app->add_option("--seed", o.seed, "fixture seed")->envname("CLIFFVERIFY_SEED")->capture_default_str();
  app->add_option("--trials", o.trials, "random fixtures per cell")
      ->envname("CLIFFVERIFY_TRIALS")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--workers", o.workers, "worker threads")
      ->envname("CLIFFVERIFY_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--x-degree", o.x_degree, "max x-degree of random fixtures")
      ->envname("CLIFFVERIFY_X_DEGREE")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
  app->add_option("--format", o.format, "output format")
      ->envname("CLIFFVERIFY_FORMAT")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app->add_option("--out", o.out, "write output here instead of stdout")->envname("CLIFFVERIFY_OUT");
  app->add_flag("--no-timing", o.no_timing, "omit wall-time fields from JSON")->envname("CLIFFVERIFY_NO_TIMING");
  app->add_flag("--mutate-projection", o.mutate)->envname("CLIFFVERIFY_MUTATE_PROJECTION")->group("");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
  f << text;
}

int emit_reports(const Options& o, const std::string& command, const RunConfig& c,
                 const std::vector<CheckReport>& reports) {
  if (o.format == "text")
    emit(o, report_text(reports));
  else
    emit(o, report_document(command, c, reports, !o.no_timing).dump(2) + "\n");
  return all_pass(reports) ? 0 : 1;
}

SpaceKind parse_space(const std::string& s) {
  if (s == "harmonic") return SpaceKind::harmonic;
  if (s == "left") return SpaceKind::left_monogenic;
  if (s == "right") return SpaceKind::right_monogenic;
  throw std::invalid_argument("unknown space '" + s + "'");
}

int cmd_dims(const Options& o) {
  const RunConfig c = o.config();
  Json rows = Json::array();
  std::ostringstream text;
  for (int m : c.ms)
    for (int k : c.ks) {
      const long long h = harmonic_dimension(m, k);
      const long long mk = monogenic_dimension(m, k);
      const long long mkm1 = k > 0 ? monogenic_dimension(m, k - 1) : 0;
      rows.push_back({{"m", m},
                      {"k", k},
                      {"harmonic_scalar", h},
                      {"harmonic_clifford", h << m},
                      {"monogenic", mk},
                      {"monogenic_km1", mkm1}});
      text << "m=" << m << " k=" << k << "  dim H_k=" << h << " (x2^m=" << (h << m) << ")  dim M_k=" << mk
           << "  dim M_k-1=" << mkm1 << "\n";
    }
  emit(o, o.format == "text" ? text.str() : Json{{"schema_version", kSchemaVersion}, {"dims", rows}}.dump(2) + "\n");
  return 0;
}

int cmd_basis(const Options& o, const std::string& space) {
  const RunConfig c = o.config();
  const SpaceKind kind = parse_space(space);
  Json list = Json::array();
  std::ostringstream text;
  for (int m : c.ms)
    for (int k : c.ks) {
      const auto b = cached_basis(m, k, kind);
      list.push_back(to_json(*b));
      text << "# " << to_string(kind) << " m=" << m << " k=" << k << " rank=" << b->scalar_rank << "\n";
      for (const auto& e : b->elements) text << to_text(e) << "\n";
    }
  emit(o, o.format == "text" ? text.str() : Json{{"schema_version", kSchemaVersion}, {"bases", list}}.dump(2) + "\n");
  return 0;
}

int cmd_apply(const Options& o, const std::string& op, const std::string& side, const std::string& input) {
  const std::vector<int> ks = parse_int_list(o.k);
  if (ks.size() != 1) throw std::invalid_argument("apply needs a single --k");
  const int k = ks.front();
  Json doc;
  if (input.empty() || input == "-") {
    std::cin >> doc;
  } else {
    std::ifstream f(input);
    if (!f) throw std::runtime_error("cannot open '" + input + "'");
    f >> doc;
  }
  const MVPolynomial f = polynomial_from_json(doc);
  ProjectionRule rule;
  if (o.mutate) rule.shift = -1;
  const OperatorKind kind{parse_operator(op), parse_side(side), f.dimension(), k};
  const MVPolynomial r = apply_operator(kind, f, rule);
  emit(o, o.format == "text" ? to_text(r) + "\n" : to_json(r).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Rarita-Schwinger type operator identities in Clifford analysis"};
  app.require_subcommand(1);
  Options o;

  auto* dims = app.add_subcommand("dims", "closed-form dimensions of H_k and M_k");
  add_common(dims, o);

  std::string space = "left";
  auto* basis = app.add_subcommand("basis", "exact bases of H_k or M_k in u");
  add_common(basis, o);
  basis->add_option("--space", space)->check(CLI::IsMember({"harmonic", "left", "right"}))->capture_default_str();

  auto* check = app.add_subcommand("check", "run one family of checks");
  check->require_subcommand(1);
  struct Family {
    const char* name;
    const char* help;
    void (*add)(std::vector<Check>&, const RunConfig&);
  };
  static const Family families[] = {
      {"counterexample", "Dirac image of the inversion is not in ker D but is in ker P_1", add_counterexample_checks},
      {"conformal", "inversion image lies in ker R_k", add_conformal_checks},
      {"intertwine", "R_k intertwines the elementary Moebius maps", add_intertwine_checks},
      {"stokes", "Stokes and Cauchy formulas on the unit ball", add_stokes_checks},
      {"stein-weiss", "gradient pairing and orthogonality", add_stein_weiss_checks},
      {"almansi", "Almansi-Fischer split of H_k", add_almansi_checks},
      {"basis-rank", "computed ranks against closed forms", add_basis_rank_checks},
      {"core", "Clifford relations, D^2 = -Laplacian, Witt idempotent", add_core_checks},
  };
  std::vector<std::pair<CLI::App*, const Family*>> family_cmds;
  for (const auto& fam : families) {
    auto* sub = check->add_subcommand(fam.name, fam.help);
    add_common(sub, o);
    if (std::string(fam.name) == "intertwine")
      sub->add_option("--map", o.maps, "translation|dilation|reflection|inversion (repeatable)");
    if (std::string(fam.name) == "stokes")
      sub->add_option("--theorem", o.theorems, "rk|qk|tk|tkstar|alt|cauchy-rk|cauchy-qk (repeatable)");
    family_cmds.emplace_back(sub, &fam);
  }

  auto* suite = app.add_subcommand("suite", "run every check family");
  add_common(suite, o);

  std::string op = "rk", side = "left", input;
  auto* apply = app.add_subcommand("apply", "apply rk|tk|tkstar|qk to a JSON polynomial");
  add_common(apply, o);
  apply->add_option("--op", op)->check(CLI::IsMember({"rk", "tk", "tkstar", "qk"}))->capture_default_str();
  apply->add_option("--side", side)->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  apply->add_option("input", input, "JSON polynomial file, '-' for stdin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dims) return cmd_dims(o);
    if (*basis) return cmd_basis(o, space);
    if (*apply) return cmd_apply(o, op, side, input);
    const RunConfig c = o.config();
    std::vector<Check> checks;
    std::string command;
    if (*suite) {
      checks = full_suite(c);
      command = "suite";
    } else {
      for (const auto& [sub, fam] : family_cmds)
        if (*sub) {
          fam->add(checks, c);
          command = std::string("check ") + fam->name;
        }
    }
    return emit_reports(o, command, c, run_checks(checks, c.workers));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
