// Command-line front end: verify identities and checks, inspect vertices,
// count partitions and print closed-form series.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dt4/dt4.hpp"

namespace {

using namespace dt4;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInternal = 4;

struct VerifyOptions {
  std::string kind;
  std::string geometry = "c4";
  std::string chart_file;
  int r = 0;
  int order = -1;
  std::string mode = "exact";
  std::uint64_t prime = kDefaultPrime;
  int trials = 5;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string cache;
  std::string report;
  std::vector<std::string> checks;
  std::vector<int> r_values;
  bool quiet = false;
  bool perturb_rhs = false;
};

std::string exponent_text(const Exponent& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

TaskKind verify_kind(const std::string& s) {
  if (s == "toric") return TaskKind::toric_identity;
  if (s == "orbifold") return TaskKind::orbifold_identity;
  return task_kind_from_string(s);
}

VerificationTask make_task(const VerifyOptions& o, TaskKind kind) {
  VerificationTask t;
  t.kind = kind;
  t.r = o.r;
  t.r_values = o.r_values;
  t.cutoff = o.order;
  t.mode = mode_from_string(o.mode);
  t.prime = o.prime;
  t.trials = o.trials;
  t.seed = o.seed;
  t.threads = o.threads;
  t.cache_dir = o.cache;
  if (kind == TaskKind::toric_identity) {
    if (!o.chart_file.empty()) {
      std::ifstream in(o.chart_file);
      if (!in) throw ConfigError("cannot read chart file " + o.chart_file);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("chart file is not valid JSON: " + std::string(e.what()));
      }
      t.geometry = geometry_from_json(j);
    } else {
      Geometry g = geometry_from_name(o.geometry, o.r);
      if (!std::holds_alternative<ToricGeometry>(g)) {
        throw ConfigError("geometry '" + o.geometry + "' is not toric; use `verify orbifold`");
      }
      t.geometry = std::get<ToricGeometry>(g);
    }
  }
  return t;
}

void print_report(const Report& r, bool quiet) {
  std::cout << "task " << r.task.dump() << "\n";
  if (!quiet && !r.coefficients.empty()) {
    std::size_t width = 9;
    for (const auto& c : r.coefficients) width = std::max(width, exponent_text(c.exponents).size());
    std::cout << "  " << std::left;
    std::cout.width(static_cast<std::streamsize>(width));
    std::cout << "exponents"
              << "  equal  detail\n";
    for (const auto& c : r.coefficients) {
      std::cout << "  ";
      std::cout.width(static_cast<std::streamsize>(width));
      std::cout << exponent_text(c.exponents) << "  " << (c.equal ? "yes  " : "NO   ") << "  " << c.label << "\n";
    }
  }
  std::cout << "status " << to_string(r.status) << ": " << r.coefficients.size() << " compared, " << r.mismatches()
            << " mismatched, " << r.partitions_processed << " partitions";
  if (r.prime) {
    std::cout << ", prime " << *r.prime << ", " << *r.trials << " trials, failure bound "
              << *r.failure_probability_bound;
  }
  std::cout << "\n";
  if (r.status == Status::error) std::cout << "error: " << r.error << "\n";
  // Timing and cache counters vary between runs, so they stay off stdout.
  std::cerr << "elapsed " << r.elapsed_ms << " ms, cache hits " << r.cache_hits << ", misses " << r.cache_misses
            << "\n";
}

int exit_code(const Report& r) {
  switch (r.status) {
    case Status::pass:
      return kExitPass;
    case Status::fail:
      return kExitMismatch;
    case Status::error:
      break;
  }
  switch (r.error_kind) {
    case ErrorKind::degenerate:
      return kExitDegenerate;
    case ErrorKind::config:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

/// Worst outcome wins: usage > degenerate > internal > mismatch > pass.
int combine_exit(int a, int b) {
  auto rank = [](int c) {
    switch (c) {
      case kExitUsage:
        return 4;
      case kExitDegenerate:
        return 3;
      case kExitInternal:
        return 2;
      case kExitMismatch:
        return 1;
      default:
        return 0;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

int run_verify(const VerifyOptions& o) {
  if (o.order < 0) {
    std::cerr << "error: --order is required and must be >= 0\n";
    return kExitUsage;
  }
  std::vector<VerificationTask> tasks;
  try {
    tasks.push_back(make_task(o, verify_kind(o.kind)));
    tasks.front().perturb_rhs = o.perturb_rhs;
    for (const auto& c : o.checks) tasks.push_back(make_task(o, task_kind_from_string(c)));
    for (const auto& t : tasks) t.validate();
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::optional<ContributionCache> cache;
  try {
    cache.emplace(o.cache);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<Report> reports;
  int code = kExitPass;
  for (const auto& t : tasks) {
    reports.push_back(run(t, &*cache));
    print_report(reports.back(), o.quiet);
    code = combine_exit(code, exit_code(reports.back()));
  }

  if (!o.report.empty()) {
    nlohmann::json doc = reports.front().to_json();
    if (reports.size() > 1) {
      nlohmann::json extra = nlohmann::json::array();
      for (std::size_t i = 1; i < reports.size(); ++i) extra.push_back(reports[i].to_json());
      doc["checks"] = extra;
    }
    std::ofstream out(o.report);
    if (!out) {
      std::cerr << "cannot write report " << o.report << "\n";
      return kExitUsage;
    }
    out << doc.dump(2) << "\n";
  }
  return code;
}

struct InspectOptions {
  std::string boxes;
  int r = 0;
  int axis = 4;
  bool json = false;
};

int run_inspect_vertex(const InspectOptions& o) {
  SolidPartition p;
  try {
    p = SolidPartition::parse(o.boxes);
  } catch (const Error& e) {
    std::cerr << "invalid partition: " << e.what() << "\n";
    return kExitUsage;
  }
  if (o.axis < 1 || o.axis > 4) {
    std::cerr << "usage error: --axis must be in 1..4\n";
    return kExitUsage;
  }
  if (o.r < 0) {
    std::cerr << "usage error: --r must be >= 1\n";
    return kExitUsage;
  }
  const Chart chart = Chart::standard();
  nlohmann::json j;
  j["boxes"] = p.to_string();
  j["size"] = p.size();
  j["Z"] = character(p).to_string();
  j["mu"] = mu_axis(p, o.axis);
  if (o.r >= 1) {
    j["r"] = o.r;
    j["colors"] = color_vector(p, o.r);
    j["v"] = v_dt_zr(p, o.r).to_string();
    j["v_tilde"] = v_tilde_zr(p, o.r).to_string();
    FactoredRational e = euler_class(-v_tilde_zr(p, o.r), chart);
    j["euler"] = e.to_string();
    j["contribution"] = contribution_orbifold(p, o.r).to_string();
  } else {
    j["axis"] = o.axis;
    j["v"] = v_dt(p, o.axis).to_string();
    j["v_tilde"] = v_tilde(p, chart, o.axis).to_string();
    j["euler"] = euler_class(-v_tilde(p, chart, o.axis), chart).to_string();
    j["contribution"] = contribution(p, chart, o.axis).to_string();
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  }
  const std::string suffix = o.r >= 1 ? "^{Z_" + std::to_string(o.r) + "}" : "";
  auto row = [](const std::string& label, const std::string& value) {
    std::cout << label << std::string(label.size() < 14 ? 14 - label.size() : 1, ' ') << value << "\n";
  };
  row("partition", j["boxes"].get<std::string>() + " (" + std::to_string(p.size()) + " boxes)");
  row("Z", j["Z"].get<std::string>());
  row("v" + suffix, j["v"].get<std::string>());
  row("v_tilde" + suffix, j["v_tilde"].get<std::string>());
  row("e(-v_tilde)", j["euler"].get<std::string>());
  row("sign", "(-1)^" + std::to_string(j["mu"].get<int>()));
  row("contribution", j["contribution"].get<std::string>());
  return kExitPass;
}

int run_partitions_count(int max_n, int r) {
  if (max_n < 0 || r < 0) {
    std::cerr << "usage error: --max and --r must be nonnegative\n";
    return kExitUsage;
  }
  if (r == 0) {
    auto counts = count_partitions(static_cast<std::size_t>(max_n));
    for (int n = 1; n <= max_n; ++n) std::cout << (n > 1 ? " " : "") << counts[static_cast<std::size_t>(n)];
    std::cout << "\n";
    return kExitPass;
  }
  std::map<ColorVector, std::size_t> colored;
  for_each_partition(static_cast<std::size_t>(max_n), [&](const SolidPartition& p) {
    if (p.size() > 0) ++colored[color_vector(p, r)];
  });
  std::vector<std::pair<ColorVector, std::size_t>> rows(colored.begin(), colored.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return total_degree(a.first) < total_degree(b.first); });
  for (const auto& [colors, count] : rows) std::cout << exponent_text(colors) << " " << count << "\n";
  return kExitPass;
}

int run_partitions_list(int n, const std::string& out_path) {
  if (n < 0) {
    std::cerr << "usage error: --n must be nonnegative\n";
    return kExitUsage;
  }
  auto parts = enumerate(static_cast<std::size_t>(n));
  if (out_path.empty()) {
    write_partitions_jsonl(std::cout, parts);
    return kExitPass;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitUsage;
  }
  write_partitions_jsonl(out, parts);
  return kExitPass;
}

template <class Series>
void print_series(const Series& s, bool json) {
  if (json) {
    std::cout << s.to_json().dump(2) << "\n";
    return;
  }
  for (const auto& [e, c] : s.terms()) std::cout << exponent_text(e) << " " << s.field().format(c) << "\n";
}

int run_series_macmahon(int order, bool negative, bool json) {
  if (order < 0) {
    std::cerr << "usage error: --order must be >= 0\n";
    return kExitUsage;
  }
  ExactField field;
  auto s = negative ? macmahon_neg(field, order) : macmahon(field, order);
  if (json) {
    print_series(s, true);
    return kExitPass;
  }
  for (int n = 0; n <= order; ++n) std::cout << (n ? " " : "") << s.coefficient({n}).to_string();
  std::cout << "\n";
  return kExitPass;
}

int run_series_rhs(int r, int order, const std::string& geometry, bool three_d, bool json) {
  if (order < 0) {
    std::cerr << "usage error: --order must be >= 0\n";
    return kExitUsage;
  }
  ExactField field;
  try {
    if (!geometry.empty()) {
      Geometry g = geometry_from_name(geometry, r);
      if (const auto* toric = std::get_if<ToricGeometry>(&g)) {
        print_series(rhs_toric(field, *toric, order), json);
        return kExitPass;
      }
      r = std::get<OrbifoldGeometry>(g).r;
    }
    if (r < 1) throw ConfigError("--r must be >= 1");
    print_series(three_d ? rhs_orbifold_3d(field, r, order) : rhs_orbifold(field, r, order), json);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant vertex computations for zero-dimensional DT4 invariants"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flags from a config file (key = value, keys are flag names)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check an identity or structural property and report per coefficient");
  verify->add_option("kind", vo.kind,
                     "toric | orbifold | dimension-reduction | divisibility | pole-order | axis-canonicity | "
                     "zr-consistency | cpi | alt-sign | partition-count")
      ->required();
  verify->add_option("--geometry", vo.geometry, "c4, a{k}xc2 (toric verify)")->capture_default_str();
  verify->add_option("--chart-file", vo.chart_file, "JSON file with a custom toric geometry");
  verify->add_option("--r", vo.r, "Orbifold order r");
  verify->add_option("--r-values", vo.r_values, "r values for zr-consistency, cpi and alt-sign")->delimiter(',');
  verify->add_option("--order", vo.order, "Series cutoff (or box bound for per-partition checks)")->required();
  verify->add_option("--mode", vo.mode, "exact or modp")->check(CLI::IsMember({"exact", "modp"}))->capture_default_str();
  verify->add_option("--prime", vo.prime, "Prime for modp mode")->capture_default_str();
  verify->add_option("--trials", vo.trials, "Independent sample points in modp mode")->capture_default_str();
  verify->add_option("--seed", vo.seed, "Seed for sample points")->capture_default_str();
  verify->add_option("--threads", vo.threads, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--cache", vo.cache, "Directory for the contribution cache");
  verify->add_option("--report", vo.report, "Write the JSON report here");
  verify->add_option("--checks", vo.checks, "Extra checks to run with the same parameters")->delimiter(',');
  verify->add_flag("--quiet", vo.quiet, "Only print the status lines");
  // Exercises the mismatch path; kept out of --help.
  verify->add_flag("--perturb-rhs", vo.perturb_rhs, "Add 1 to the first-order rhs coefficient")->group("");

  InspectOptions io;
  auto* inspect = app.add_subcommand("inspect", "Print vertex classes for one partition");
  inspect->require_subcommand(1);
  auto* vertex = inspect->add_subcommand("vertex", "Z, v, v_tilde and the signed Euler class");
  vertex->add_option("--boxes", io.boxes, "Boxes as \"i,j,k,l;...\"")->required();
  vertex->add_option("--r", io.r, "Use the Z_r orbifold vertex");
  vertex->add_option("--axis", io.axis, "Preferred-axis complement 1..4 (toric vertex)")->capture_default_str();
  vertex->add_flag("--json", io.json, "Print JSON");

  int max_n = 0;
  int count_r = 0;
  int list_n = 0;
  std::string list_out;
  auto* partitions = app.add_subcommand("partitions", "Solid partition enumeration");
  partitions->require_subcommand(1);
  auto* count = partitions->add_subcommand("count", "Counts for n = 1..max (colored by (i-j) mod r with --r)");
  count->add_option("--max", max_n, "Largest size")->required();
  count->add_option("--r", count_r, "Color count");
  auto* list = partitions->add_subcommand("list", "Partitions of n as JSON Lines");
  list->add_option("--n", list_n, "Size")->required();
  list->add_option("--out", list_out, "Output file (default stdout)");

  int series_order = 0;
  int series_r = 0;
  bool series_neg = false;
  bool series_json = false;
  bool series_3d = false;
  std::string series_geometry;
  auto* series = app.add_subcommand("series", "Closed-form series expansions");
  series->require_subcommand(1);
  auto* mac = series->add_subcommand("macmahon", "M(q) coefficients, or M(-q) with --neg");
  mac->add_option("--order", series_order, "Cutoff")->required();
  mac->add_flag("--neg", series_neg, "Expand M(-q)");
  mac->add_flag("--json", series_json, "Print JSON");
  auto* rhs = series->add_subcommand("rhs", "Closed-form side for [C^4/Z_r] or a toric geometry");
  rhs->add_option("--order", series_order, "Cutoff")->required();
  rhs->add_option("--r", series_r, "Orbifold order r");
  rhs->add_option("--geometry", series_geometry, "c4, a{k}xc2 or orbifold-zr instead of --r");
  rhs->add_flag("--3d", series_3d, "Dimension-reduced formula (m = s4)");
  rhs->add_flag("--json", series_json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify(vo);
    if (*vertex) return run_inspect_vertex(io);
    if (*count) return run_partitions_count(max_n, count_r);
    if (*list) return run_partitions_list(list_n, list_out);
    if (*mac) return run_series_macmahon(series_order, series_neg, series_json);
    if (*rhs) return run_series_rhs(series_r, series_order, series_geometry, series_3d, series_json);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
