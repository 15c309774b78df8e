#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cselect/cache.hpp"
#include "cselect/codegen.hpp"
#include "cselect/conformance.hpp"
#include "cselect/rank.hpp"
#include "cselect/selector.hpp"

#ifndef CSELECT_DEFAULT_CATALOGUE
#define CSELECT_DEFAULT_CATALOGUE "catalogue"
#endif
#ifndef CSELECT_INCLUDE_DIR
#define CSELECT_INCLUDE_DIR "include"
#endif
#ifndef CSELECT_CXX
#define CSELECT_CXX "c++"
#endif

namespace fs = std::filesystem;
using namespace cselect;

namespace {

enum Exit {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kType = 3,
  kCatalogue = 4,
  kEmptySelection = 5,
  kBuild = 6,
  kConformance = 7,
  kUndeclaredOp = 8,
};

struct Failure {
  int code;
};

struct Options {
  std::string spec;
  std::string catalogue = CSELECT_DEFAULT_CATALOGUE;
  int model_size = 3;
  int domain_size = -1;
  double budget = 30.0;
  int threads = 1;
  std::string mode = "select";
  std::string project;
  std::string bench;
  std::string out = "cselect-out";
  std::string report;
  std::string cache_dir = ".cselect-cache";
  bool no_cache = false;
  std::uint64_t seed = 0;
  int cases = 100;
  std::string cxx = CSELECT_CXX;
  std::string include_dir = CSELECT_INCLUDE_DIR;
};

void emit(const Options& o, const std::string& text) {
  if (o.report.empty()) {
    std::cout << text << "\n";
  } else {
    atomic_write(o.report, text + "\n");
  }
}

Catalogue load_or_fail(const Options& o) {
  auto r = load_catalogue(o.catalogue);
  for (const auto& e : r.errors) std::cerr << format(e) << "\n";
  if (!r.ok()) throw Failure{kCatalogue};
  return std::move(r.catalogue);
}

std::string read_or_fail(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    throw Failure{kUsage};
  }
}

TypedSpec typecheck_or_fail(const std::string& path, const std::string& text, const Catalogue& cat) {
  auto parsed = parse_spec(text);
  for (const auto& e : parsed.errors) std::cerr << path << ":" << format(e) << "\n";
  if (!parsed.ok()) throw Failure{kParse};
  auto typed = typecheck(parsed.spec, cat.interfaces);
  for (const auto& e : typed.errors) std::cerr << path << ":" << format(e) << "\n";
  if (!typed.ok()) throw Failure{kType};
  return std::move(typed.spec);
}

// Selection report as JSON, from the cache when inputs are unchanged.
nlohmann::json run_selection(const Options& o, const std::string& spec_path, const std::string& spec_text,
                             const TypedSpec& spec, const Catalogue& cat) {
  CheckConfig cfg;
  cfg.model_size = o.model_size;
  cfg.domain_size = o.domain_size;
  cfg.budget_secs = o.budget;
  cfg.threads = o.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    throw Failure{kUsage};
  }
  std::optional<ReportCache> cache;
  std::string key;
  if (!o.no_cache) {
    cache.emplace(o.cache_dir);
    key = cache_key(spec_text, catalogue_files(o.catalogue), cfg.model_size, cfg.domain());
    if (auto hit = cache->load(key)) {
      std::cerr << "cache hit " << key.substr(0, 16) << ", selection skipped\n";
      return nlohmann::json::parse(*hit);
    }
  }
  auto report = to_json(select(spec, cat, cfg));
  report["spec"] = fs::path(spec_path).filename().string();
  if (cache) cache->store(key, report.dump(2));
  return report;
}

void print_summary(const nlohmann::json& report) {
  for (const auto& t : report["types"]) {
    std::cerr << t["type"].get<std::string>() << ":";
    for (const auto& v : t["valid"]) std::cerr << " " << v.get<std::string>();
    if (t["valid"].empty()) std::cerr << " no valid implementation";
    std::cerr << "\n";
  }
}

bool all_types_selected(const nlohmann::json& report) {
  for (const auto& t : report["types"]) {
    if (t["valid"].empty()) return false;
  }
  return true;
}

int cmd_select(Options o) {
  const bool generate_mode = o.mode == "generate" || o.mode == "rank";
  std::optional<ProjectManifest> project;
  if (generate_mode || !o.project.empty()) {
    if (o.project.empty()) {
      std::cerr << "--project is required for mode " << o.mode << "\n";
      return kUsage;
    }
    try {
      project = load_manifest(o.project);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kUsage;
    }
    if (o.spec.empty()) o.spec = project->spec.string();
  }
  if (o.spec.empty()) {
    std::cerr << "--spec is required\n";
    return kUsage;
  }
  if (o.mode == "rank" && o.bench.empty()) {
    std::cerr << "--bench is required for mode rank\n";
    return kUsage;
  }
  Catalogue cat = load_or_fail(o);
  std::string text = read_or_fail(o.spec);
  TypedSpec spec = typecheck_or_fail(o.spec, text, cat);
  nlohmann::json report{{"selection", run_selection(o, o.spec, text, spec, cat)}};
  print_summary(report["selection"]);
  if (!all_types_selected(report["selection"])) {
    emit(o, report.dump(2));
    return kEmptySelection;
  }
  if (!generate_mode) {
    emit(o, report["selection"].dump(2));
    return kOk;
  }

  std::vector<std::pair<std::string, std::vector<std::string>>> valid;
  for (const auto& t : report["selection"]["types"]) {
    valid.emplace_back(t["type"].get<std::string>(), t["valid"].get<std::vector<std::string>>());
  }
  GenerateResult gen = generate(*project, spec, cat.interfaces, variant_choices(valid), o.out);
  for (const auto& d : gen.diagnostics) std::cerr << format(d) << "\n";
  if (!gen.ok()) return kUndeclaredOp;

  BuildConfig bcfg{o.cxx, o.include_dir};
  std::vector<RankTarget> targets;
  nlohmann::json builds = nlohmann::json::array();
  bool all_built = true;
  for (const auto& v : gen.variants) {
    std::cerr << "building " << v.name << "\n";
    BuildResult b = build_variant(v, *project, bcfg);
    builds.push_back({{"variant", v.name}, {"dir", v.dir.string()}, {"ok", b.ok}, {"log", b.log}});
    if (!b.ok) {
      std::cerr << b.log;
      all_built = false;
    }
    targets.push_back({v.name, b.ok ? std::optional<fs::path>(b.binary) : std::nullopt, b.log});
  }
  report["builds"] = builds;
  if (o.mode == "rank") {
    BenchmarkDescriptor bench;
    try {
      bench = parse_benchmark(read_or_fail(o.bench));
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kUsage;
    }
    ProcessExecutor exec;
    SteadyClock clock;
    RankingReport ranking = rank(targets, bench, exec, clock);
    report["ranking"] = to_json(ranking);
    std::cerr << "ranking:";
    for (const auto& v : ranking.ordering) std::cerr << " " << v;
    std::cerr << "\n";
    for (const auto& e : ranking.entries) all_built = all_built && !e.failed;
  }
  emit(o, report.dump(2));
  return all_built ? kOk : kBuild;
}

int cmd_conformance(const Options& o) {
  Catalogue cat = load_or_fail(o);
  ConformanceConfig cfg;
  cfg.seed = o.seed;
  cfg.cases_per_op = o.cases;
  std::vector<ImplHandle> impls;
  for (auto& h : standard_impls()) {
    if (cat.find(h.spec_name)) impls.push_back(std::move(h));
  }
  ConformanceReport r = run_conformance(cat, impls, cfg);
  emit(o, to_json(r).dump(2));
  std::cerr << r.total_cases() << " cases, " << r.total_failures() << " failures\n";
  return r.total_failures() == 0 ? kOk : kConformance;
}

int cmd_validate(const Options& o) {
  Catalogue cat = load_or_fail(o);
  nlohmann::json out{{"containers", nlohmann::json::array()}, {"shared", nlohmann::json::array()}};
  int problems = 0;
  for (const auto& c : cat.containers) {
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : validate_spec(c, o.model_size, o.domain_size)) {
      std::cerr << format(d) << "\n";
      diags.push_back(format(d));
      ++problems;
    }
    out["containers"].push_back({{"name", c.name}, {"interfaces", c.interfaces}, {"diagnostics", diags}});
  }
  for (const auto& g : shared_spec_instances(cat)) {
    out["shared"].push_back(
        {{"members", g.members}, {"shared_interfaces", g.shared_interfaces}, {"extra_interfaces", g.extra_interfaces}});
  }
  emit(o, out.dump(2));
  return problems == 0 ? kOk : kCatalogue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selects container implementations by their properties."};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--catalogue", o.catalogue, "Catalogue directory")->capture_default_str();
    sub->add_option("--report", o.report, "Write the report here instead of stdout");
  };
  auto add_check = [&](CLI::App* sub) {
    sub->add_option("-k,--model-size", o.model_size, "Maximum model list length")->capture_default_str();
    sub->add_option("--domain-size", o.domain_size, "Element domain size (default k+1)");
  };
  auto add_select = [&](CLI::App* sub) {
    add_common(sub);
    add_check(sub);
    sub->add_option("--spec", o.spec, "Property specification (.prs)");
    sub->add_option("--budget-secs", o.budget, "Time budget per candidate")->capture_default_str();
    sub->add_option("--threads", o.threads, "Candidates checked in parallel")->capture_default_str();
    sub->add_option("--project", o.project, "Project manifest (JSON)");
    sub->add_option("--out", o.out, "Directory for generated variants")->capture_default_str();
    sub->add_option("--bench", o.bench, "Benchmark descriptor (JSON)");
    sub->add_option("--cache-dir", o.cache_dir, "Selection cache directory")->capture_default_str();
    sub->add_flag("--no-cache", o.no_cache, "Always re-run selection");
    sub->add_option("--cxx", o.cxx, "Compiler for generated variants")->capture_default_str();
    sub->add_option("--include-dir", o.include_dir, "Directory containing cselect/ headers")
        ->capture_default_str();
  };

  auto* select_cmd = app.add_subcommand("select", "Select valid implementations");
  add_select(select_cmd);
  select_cmd->add_option("--mode", o.mode, "select | generate | rank")
      ->check(CLI::IsMember({"select", "generate", "rank"}))
      ->capture_default_str();
  auto* generate_cmd = app.add_subcommand("generate", "Select, then generate and build one variant per choice");
  add_select(generate_cmd);
  auto* rank_cmd = app.add_subcommand("rank", "Select, generate, build and rank by runtime");
  add_select(rank_cmd);
  auto* conf_cmd = app.add_subcommand("conformance", "Test implementations against their specifications");
  add_common(conf_cmd);
  conf_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  conf_cmd->add_option("--cases", o.cases, "Cases per operation")->capture_default_str();
  auto* validate_cmd = app.add_subcommand("validate-catalogue", "Check the catalogue specifications");
  add_common(validate_cmd);
  add_check(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*generate_cmd) o.mode = "generate";
    if (*rank_cmd) o.mode = "rank";
    if (*select_cmd || *generate_cmd || *rank_cmd) return cmd_select(o);
    if (*conf_cmd) return cmd_conformance(o);
    if (*validate_cmd) return cmd_validate(o);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
