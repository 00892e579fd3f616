#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ilpbench/dataset_io.hpp"
#include "ilpbench/grader.hpp"
#include "ilpbench/llm.hpp"
#include "ilpbench/reader.hpp"
#include "ilpbench/refine.hpp"
#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

// --- config file -----------------------------------------------------------

// Flags named in the config file are inserted after the subcommand unless
// the command line already sets them.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end() || std::next(it) == args.end()) return args;
  const fs::path path = *std::next(it);
  std::vector<std::string> rest;
  rest.insert(rest.end(), args.begin(), it);
  rest.insert(rest.end(), std::next(it, 2), args.end());

  json cfg;
  try {
    cfg = json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw UsageError("cannot read config " + path.string() + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  std::set<std::string> given;
  for (const std::string& a : rest) {
    if (a.starts_with("--")) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (given.contains(key)) continue;
    auto push = [&](const json& v) {
      extra.push_back("--" + key);
      extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
    } else if (value.is_array()) {
      for (const auto& v : value) push(v);
    } else {
      push(value);
    }
  }
  if (rest.empty()) return extra;
  std::vector<std::string> out{rest.front()};
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

// --- option groups -----------------------------------------------------------

struct BackendOpts {
  std::string kind = "mock_oracle";
  std::string scripts;
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  double timeout_s = 120.0;
  unsigned max_retries = 3;
  unsigned max_in_flight = 4;
  std::string label;
  std::string corrupt_payload;

  void add(CLI::App& app) {
    app.add_option("--backend", kind, "http, mock_scripted, mock_oracle or mock_corrupt")->capture_default_str();
    app.add_option("--scripts", scripts, "JSON array of responses for mock_scripted");
    app.add_option("--endpoint", endpoint, "chat-completion base URL (env LLM_API_URL)");
    app.add_option("--model", model, "model name (env LLM_MODEL)");
    app.add_option("--temperature", temperature)->capture_default_str();
    app.add_option("--timeout", timeout_s, "request timeout in seconds")->capture_default_str();
    app.add_option("--max-retries", max_retries)->capture_default_str();
    app.add_option("--max-in-flight", max_in_flight)->capture_default_str();
    app.add_option("--label", label, "backend label used in traces and reports");
    app.add_option("--corrupt-payload", corrupt_payload, "file with the mock_corrupt response");
  }

  BackendConfig resolve() const {
    BackendConfig c;
    c.kind = parse_backend_kind(kind);
    c.endpoint = endpoint.empty() ? env_or_empty("LLM_API_URL") : endpoint;
    c.model = model.empty() ? env_or_empty("LLM_MODEL") : model;
    c.api_key = env_or_empty("LLM_API_KEY");
    c.temperature = temperature;
    c.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
    c.max_retries = max_retries;
    c.max_in_flight = max_in_flight;
    c.label = label;
    if (c.kind == BackendKind::kMockScripted) {
      if (scripts.empty()) throw UsageError("mock_scripted needs --scripts");
      c.scripts = load_scripts(scripts);
    }
    if (!corrupt_payload.empty()) c.corrupt_payload = read_text_file(corrupt_payload);
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

struct LoopOpts {
  std::size_t max_iter = 4;
  std::vector<std::string> thresholds;
  bool no_strip = false;
  std::string history = "full";
  std::string clock = "auto";
  std::size_t max_derived = EvalLimits{}.max_derived_facts;
  std::size_t max_rounds = EvalLimits{}.max_rounds;

  void add(CLI::App& app) {
    app.add_option("--max-iter", max_iter)->capture_default_str();
    app.add_option("--threshold", thresholds, "metric=value, repeatable; replaces the default all-1.0 set");
    app.add_flag("--no-strip-recursion", no_strip, "evaluate recursive clauses instead of removing them");
    app.add_option("--history", history, "full or stateless")->capture_default_str();
    app.add_option("--clock", clock, "auto, wall or none")->capture_default_str();
    app.add_option("--max-derived-facts", max_derived)->capture_default_str();
    app.add_option("--max-rounds", max_rounds)->capture_default_str();
  }

  LoopConfig resolve() const {
    LoopConfig c;
    c.max_iter = max_iter;
    if (!thresholds.empty()) {
      c.thresholds.clear();
      for (const std::string& t : thresholds) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("threshold must look like metric=value: " + t);
        try {
          c.thresholds[parse_metric(t.substr(0, eq))] = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
          throw UsageError("bad threshold: " + t);
        }
      }
    }
    c.strip_recursion = !no_strip;
    if (history == "full") c.history = HistoryMode::kFull;
    else if (history == "stateless") c.history = HistoryMode::kStateless;
    else throw UsageError("--history must be full or stateless");
    if (clock == "auto") c.clock = ClockMode::kAuto;
    else if (clock == "wall") c.clock = ClockMode::kWall;
    else if (clock == "none") c.clock = ClockMode::kNone;
    else throw UsageError("--clock must be auto, wall or none");
    c.limits = {max_derived, max_rounds};
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

std::vector<Category> parse_categories(const std::vector<std::string>& names) {
  std::vector<Category> out;
  for (const std::string& n : names) {
    if (n == "all") {
      out.insert(out.end(), kAllCategories.begin(), kAllCategories.end());
      continue;
    }
    try {
      out.push_back(parse_category(n));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

// --- gen ---------------------------------------------------------------------

struct GenCmd {
  std::string category = "chain";
  double noise = 0.0, missing = 0.0, owa = 0.0;
  std::string size = "xs";
  std::optional<std::size_t> min_facts, max_facts, support;
  std::size_t mindags = 1, maxdags = 1;
  std::uint64_t seed = 0;
  std::size_t min_predicates = 6, max_predicates = 12, max_body = 2, constants = 80;
  double train_fraction = 0.7;
  std::string out;
  std::string plan;
  std::vector<std::string> categories;
  std::vector<double> levels;
  std::size_t samples = kDefaultSamples;

  void add(CLI::App& app) {
    app.add_option("--category", category, "chain, chain_rec, rdg, rdg_rec, drdg, drdg_rec or mixed")->capture_default_str();
    app.add_option("--noise", noise)->capture_default_str();
    app.add_option("--missing", missing)->capture_default_str();
    app.add_option("--owa", owa)->capture_default_str();
    app.add_option("--size", size, "size preset")->capture_default_str();
    app.add_option("--min-facts", min_facts);
    app.add_option("--max-facts", max_facts);
    app.add_option("--support", support);
    app.add_option("--mindags", mindags)->capture_default_str();
    app.add_option("--maxdags", maxdags)->capture_default_str();
    app.add_option("--seed", seed, "dataset seed, or the seed base of a plan")->capture_default_str();
    app.add_option("--min-predicates", min_predicates)->capture_default_str();
    app.add_option("--max-predicates", max_predicates)->capture_default_str();
    app.add_option("--max-body-atoms", max_body)->capture_default_str();
    app.add_option("--constants", constants, "constant pool size")->capture_default_str();
    app.add_option("--train-fraction", train_fraction)->capture_default_str();
    app.add_option("--out", out, "output directory")->required();
    app.add_option("--plan", plan, "'default' for the full grid, or 'grid' with --categories/--levels/--samples");
    app.add_option("--categories", categories, "categories of a grid plan");
    app.add_option("--levels", levels, "corruption levels of a grid plan");
    app.add_option("--samples", samples, "datasets per grid cell")->capture_default_str();
  }

  GenSpec spec() const {
    GenSpec s;
    try {
      s.category = parse_category(category);
      s.size = parse_size_preset(size);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (min_facts) s.size.min_facts = *min_facts;
    if (max_facts) s.size.max_facts = *max_facts;
    if (support) s.size.support = *support;
    s.noise = noise;
    s.missing = missing;
    s.owa = owa;
    s.mindags = mindags;
    s.maxdags = maxdags;
    s.seed = seed;
    s.min_predicates = min_predicates;
    s.max_predicates = max_predicates;
    s.max_body_atoms = max_body;
    s.constant_pool = constants;
    s.train_fraction = train_fraction;
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }

  int run(std::ostream& o) const {
    const GenSpec base = spec();
    if (plan.empty()) {
      Dataset d = gen_dataset(base);
      write_dataset(out, d);
      o << out << "\n";
      return kExitOk;
    }
    std::vector<PlanEntry> entries;
    if (plan == "default") {
      GenSpec b = base;
      entries = experiment_plan(kAllCategories, kDefaultLevels, kDefaultSamples, seed, b);
    } else if (plan == "grid") {
      const auto cats = parse_categories(categories);
      if (cats.empty() || levels.empty() || samples == 0) throw UsageError("grid plan needs categories, levels and samples");
      entries = experiment_plan(cats, levels, samples, seed, base);
    } else {
      throw UsageError("--plan must be default or grid");
    }
    for (const PlanEntry& e : entries) {
      write_dataset(fs::path(out) / e.name, gen_dataset(e.spec));
    }
    o << entries.size() << " datasets written to " << out << "\n";
    return kExitOk;
  }
};

// --- induce ------------------------------------------------------------------

std::vector<fs::path> dataset_dirs(const std::vector<std::string>& datasets, const std::vector<std::string>& roots) {
  std::vector<fs::path> out(datasets.begin(), datasets.end());
  for (const std::string& r : roots) {
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(r)) {
      if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) found.push_back(entry.path());
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::string dataset_name(const fs::path& p) {
  fs::path q = p;
  if (!q.has_filename()) q = q.parent_path();
  return q.filename().string();
}

struct InduceCmd {
  std::vector<std::string> datasets;
  std::vector<std::string> roots;
  std::string out;
  unsigned jobs = 0;
  BackendOpts backend;
  LoopOpts loop;

  void add(CLI::App& app) {
    app.add_option("--dataset", datasets, "dataset directory, repeatable");
    app.add_option("--datasets-dir", roots, "directory whose subdirectories are datasets, repeatable");
    app.add_option("--out", out, "trace directory; stdout when omitted with a single dataset");
    app.add_option("--jobs", jobs, "parallel loops (default: logical CPUs, capped by --max-in-flight)");
    backend.add(app);
    loop.add(app);
  }

  int run(std::ostream& o, std::ostream& e) const {
    const std::vector<fs::path> dirs = dataset_dirs(datasets, roots);
    if (dirs.empty()) throw UsageError("no datasets given");
    if (out.empty() && dirs.size() > 1) throw UsageError("--out is required for more than one dataset");
    const BackendConfig bc = backend.resolve();
    const LoopConfig lc = loop.resolve();

    unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>({workers, bc.max_in_flight, static_cast<unsigned>(dirs.size())});

    std::vector<std::string> results(dirs.size());
    std::vector<std::string> errors(dirs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < dirs.size();) {
        try {
          Dataset d = read_dataset(dirs[i]);
          results[i] = trace_to_json(run_induction(d, bc, lc));
        } catch (const InductionAborted& ex) {
          results[i] = trace_to_json(ex.trace());
          errors[i] = ex.what();
        } catch (const std::exception& ex) {
          errors[i] = ex.what();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
      work();
    }

    bool failed = false;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (!results[i].empty()) {
        if (out.empty()) o << results[i];
        else write_text_file(fs::path(out) / (dataset_name(dirs[i]) + ".json"), results[i]);
      }
      if (!errors[i].empty()) {
        e << dirs[i].string() << ": " << errors[i] << "\n";
        failed = true;
      }
    }
    return failed ? kExitFailure : kExitOk;
  }
};

// --- eval --------------------------------------------------------------------

struct EvalCmd {
  std::string dataset;
  std::string theory;
  std::string split = "test";
  bool strip = false;
  std::size_t max_derived = EvalLimits{}.max_derived_facts;
  std::size_t max_rounds = EvalLimits{}.max_rounds;

  void add(CLI::App& app) {
    app.add_option("--dataset", dataset)->required();
    app.add_option("--theory", theory, "logic-program file to score")->required();
    app.add_option("--split", split, "train, test or all")->capture_default_str();
    app.add_flag("--strip-recursion", strip, "remove directly recursive clauses before scoring");
    app.add_option("--max-derived-facts", max_derived)->capture_default_str();
    app.add_option("--max-rounds", max_rounds)->capture_default_str();
  }

  int run(std::ostream& o) const {
    if (split != "train" && split != "test" && split != "all") throw UsageError("--split must be train, test or all");
    const Dataset d = read_dataset(dataset);
    const std::string raw = read_text_file(theory);
    std::vector<Atom> pos, neg;
    if (split != "test") {
      pos.insert(pos.end(), d.train_pos.begin(), d.train_pos.end());
      neg.insert(neg.end(), d.train_neg.begin(), d.train_neg.end());
    }
    if (split != "train") {
      pos.insert(pos.end(), d.test_pos.begin(), d.test_pos.end());
      neg.insert(neg.end(), d.test_neg.begin(), d.test_neg.end());
    }
    std::set<Predicate> known = predicates_of(d.bk);
    const ErrorClass ec = classify_error(raw, known, d.truth.target);

    EvalReport report;
    if (ec.kind == ErrorKind::kSyntactic) {
      report = zero_report({"no usable theory: " + ec.message});
    } else {
      LenientParse parsed = parse_program_lenient(extract_theory(raw));
      Program p = strip ? strip_recursive(parsed.program) : parsed.program;
      report = evaluate_theory(d.bk, p, pos, neg, {max_derived, max_rounds});
      for (const ParseError& e : parsed.rejected) report.warnings.insert(report.warnings.begin(), "dropped clause: " + e.message());
    }
    ordered_json j;
    j["split"] = split;
    j["error_class"] = std::string(error_kind_name(ec.kind));
    ordered_json reasons = ordered_json::array();
    for (const ErrorReason& r : ec.reasons) reasons.push_back(r.to_string());
    j["error_reasons"] = reasons;
    j["report"] = ordered_json::parse(report_to_json(report));
    o << j.dump(2) << "\n";
    return kExitOk;
  }
};

// --- grade -------------------------------------------------------------------

std::vector<RefinementTrace> load_traces(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(p);
    }
  }
  std::vector<RefinementTrace> out;
  for (const fs::path& f : files) {
    try {
      out.push_back(trace_from_json(read_text_file(f)));
    } catch (const std::exception& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

struct GradeCmd {
  std::vector<std::string> traces;
  std::vector<std::string> categories;
  std::vector<double> levels;
  std::size_t samples = 0;
  std::string format = "csv";
  std::string out;
  bool errors = false;

  void add(CLI::App& app) {
    app.add_option("--traces", traces, "trace file or directory, repeatable")->required();
    app.add_option("--categories", categories, "grid categories (default: those in the traces)");
    app.add_option("--levels", levels, "grid noise levels (default: those in the traces)");
    app.add_option("--samples", samples, "samples per cell (default: the largest cell)");
    app.add_option("--format", format, "csv, json or long")->capture_default_str();
    app.add_option("--out", out, "output file; stdout when omitted");
    app.add_flag("--errors", errors, "print the error distribution instead of the grade table");
  }

  int run(std::ostream& o) const {
    if (format != "csv" && format != "json" && format != "long") throw UsageError("--format must be csv, json or long");
    const std::vector<RefinementTrace> ts = load_traces(traces);
    std::string text;
    if (errors) {
      text = error_distribution_csv(error_distribution(ts));
    } else {
      GradeGrid grid;
      grid.categories = parse_categories(categories);
      grid.noise_levels = levels;
      if (categories.empty()) {
        for (Category c : kAllCategories) {
          if (std::any_of(ts.begin(), ts.end(), [&](const auto& t) { return t.meta.category == c; }))
            grid.categories.push_back(c);
        }
      }
      if (levels.empty()) {
        std::set<double> seen;
        for (const auto& t : ts) seen.insert(t.meta.noise);
        grid.noise_levels.assign(seen.begin(), seen.end());
      }
      grid.samples = samples;
      if (grid.samples == 0) {
        for (Category c : grid.categories) {
          for (double n : grid.noise_levels) {
            grid.samples = std::max<std::size_t>(
                grid.samples, static_cast<std::size_t>(std::count_if(ts.begin(), ts.end(), [&](const auto& t) {
                  return t.meta.category == c && std::abs(t.meta.noise - n) < 1e-9;
                })));
          }
        }
      }
      if (grid.categories.empty() || grid.noise_levels.empty() || grid.samples == 0)
        throw UsageError("empty grid: no traces and no grid given");
      const GradeTable table = grade(ts, grid);
      text = format == "csv" ? grade_csv(table) : format == "json" ? grade_json(table) : grade_long_csv(table);
    }
    if (out.empty()) o << text;
    else write_text_file(out, text);
    return kExitOk;
  }
};

// --- classify-error ----------------------------------------------------------

struct ClassifyCmd {
  std::string response;
  std::string dataset;
  std::vector<std::string> bk_predicates;
  std::string target;

  void add(CLI::App& app) {
    app.add_option("--response", response, "file holding the raw model response")->required();
    app.add_option("--dataset", dataset, "dataset providing the BK predicates and target");
    app.add_option("--bk-predicates", bk_predicates, "name/arity, repeatable (instead of --dataset)");
    app.add_option("--target", target, "target predicate name/arity (instead of --dataset)");
  }

  int run(std::ostream& o) const {
    std::set<Predicate> known;
    Predicate tgt;
    try {
      if (!dataset.empty()) {
        const Dataset d = read_dataset(dataset);
        known = predicates_of(d.bk);
        tgt = d.truth.target;
      }
      for (const std::string& p : bk_predicates) known.insert(parse_predicate(p));
      if (!target.empty()) tgt = parse_predicate(target);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (tgt.name.empty()) throw UsageError("need --dataset or --target");
    const ErrorClass ec = classify_error(read_text_file(response), known, tgt);
    ordered_json j;
    j["kind"] = std::string(error_kind_name(ec.kind));
    ordered_json reasons = ordered_json::array();
    for (const ErrorReason& r : ec.reasons) reasons.push_back(r.to_string());
    j["reasons"] = reasons;
    if (!ec.message.empty()) j["message"] = ec.message;
    o << j.dump(2) << "\n";
    return kExitOk;
  }
};

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark harness for theory induction over synthetic logic datasets", "ilpbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kGeneratorVersion));

  GenCmd gen;
  InduceCmd induce;
  EvalCmd eval;
  GradeCmd grade_cmd;
  ClassifyCmd classify;
  gen.add(*app.add_subcommand("gen", "generate datasets"));
  induce.add(*app.add_subcommand("induce", "run refinement loops on datasets"));
  eval.add(*app.add_subcommand("eval", "score a theory file against a dataset"));
  grade_cmd.add(*app.add_subcommand("grade", "aggregate traces into a grade table"));
  classify.add(*app.add_subcommand("classify-error", "classify a model response"));
  for (CLI::App* sub : app.get_subcommands({})) sub->add_option("--config", "JSON file of flag values");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "gen") return gen.run(out);
    if (name == "induce") return induce.run(out, err);
    if (name == "eval") return eval.run(out);
    if (name == "grade") return grade_cmd.run(out);
    return classify.run(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ilpbench::cli
