#include "ilpbench/refine.hpp"

#include <chrono>
#include <stdexcept>

#include "ilpbench/reader.hpp"
#include "json_codec.hpp"

namespace ilpbench {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<Metric, std::string_view> kMetricNames[] = {
    {Metric::kAccuracy, "accuracy"},
    {Metric::kPrecision, "precision"},
    {Metric::kRecall, "recall"},
    {Metric::kF1, "f1"},
};

}  // namespace

std::string_view metric_name(Metric metric) {
  for (const auto& [m, n] : kMetricNames) {
    if (m == metric) return n;
  }
  return "f1";
}

Metric parse_metric(std::string_view text) {
  if (text == "acc") return Metric::kAccuracy;
  if (text == "p") return Metric::kPrecision;
  if (text == "r") return Metric::kRecall;
  for (const auto& [m, n] : kMetricNames) {
    if (n == text) return m;
  }
  throw std::invalid_argument("unknown metric: " + std::string(text));
}

double metric_value(const EvalReport& r, Metric metric) {
  switch (metric) {
    case Metric::kAccuracy:
      return r.accuracy;
    case Metric::kPrecision:
      return r.precision;
    case Metric::kRecall:
      return r.recall;
    case Metric::kF1:
      return r.f1;
  }
  return 0.0;
}

void LoopConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  for (const auto& [m, v] : thresholds) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("threshold for " + std::string(metric_name(m)) + " must be in [0, 1]");
  }
  if (limits.max_derived_facts == 0 || limits.max_rounds == 0)
    throw std::invalid_argument("evaluation limits must be positive");
}

bool LoopConfig::thresholds_met(const EvalReport& report) const {
  for (const auto& [m, v] : thresholds) {
    if (metric_value(report, m) < v) return false;
  }
  return true;
}

std::size_t best_index(std::span<const IterationRecord> iterations) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    if (best == 0 || iterations[i].report.accuracy > iterations[best - 1].report.accuracy) best = i + 1;
  }
  return best;
}

const IterationRecord& best_iteration(const RefinementTrace& trace) {
  if (trace.iterations.empty()) throw std::invalid_argument("trace has no iterations");
  return trace.iterations[best_index(trace.iterations) - 1];
}

RefinementTrace run_induction(const Dataset& d, Backend& backend, const std::string& label, const LoopConfig& cfg,
                              bool wall_clock) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  auto seconds_since = [&](Clock::time_point t0) {
    return wall_clock ? std::chrono::duration<double>(Clock::now() - t0).count() : 0.0;
  };

  RefinementTrace trace;
  trace.meta = d.meta;
  trace.backend = label;

  std::set<Predicate> known = predicates_of(d.bk);
  const Predicate target = d.truth.target;

  std::vector<ChatTurn> history;
  std::string first_prompt;
  std::string last_reply;
  for (std::size_t i = 1; i <= cfg.max_iter; ++i) {
    IterationRecord rec;
    rec.index = i;
    rec.prompt = i == 1 ? build_initial_prompt(d) : build_refine_prompt(trace.iterations.back().report);

    std::vector<ChatTurn> messages;
    if (cfg.history == HistoryMode::kFull || i == 1) {
      messages = history;
      messages.push_back({Role::kUser, rec.prompt});
    } else {
      messages = {{Role::kUser, first_prompt}, {Role::kAssistant, last_reply}, {Role::kUser, rec.prompt}};
    }

    const auto t0 = Clock::now();
    Completion reply;
    try {
      reply = backend.complete(messages);
    } catch (const BackendError& e) {
      trace.aborted = true;
      trace.abort_reason = e.what();
      trace.best_index = best_index(trace.iterations);
      throw InductionAborted(e, std::move(trace));
    }
    rec.raw_response = reply.text;
    rec.latency_s = wall_clock ? reply.latency_s : 0.0;
    rec.extracted = extract_theory(reply.text);
    rec.error_class = classify_error(reply.text, known, target);

    std::vector<std::string> warnings;
    if (rec.error_class.kind != ErrorKind::kSyntactic) {
      LenientParse parsed;
      try {
        parsed = parse_program_lenient(rec.extracted);
      } catch (const ParseError&) {
        // classify_error reads the same text, so this does not happen in practice.
      }
      for (const ParseError& e : parsed.rejected) warnings.push_back("dropped clause: " + e.message());
      if (!parsed.program.empty()) rec.theory = std::move(parsed.program);
    }
    if (rec.theory && cfg.strip_recursion) {
      for (const Clause& c : rec.theory->clauses) {
        if (is_recursive_clause(c)) {
          rec.stripped.push_back(c);
          warnings.push_back("removed recursive clause: " + render_clause(c));
        }
      }
      rec.theory = strip_recursive(*rec.theory);
    }
    if (rec.theory) {
      rec.report = evaluate_theory(d.bk, *rec.theory, d.train_pos, d.train_neg, cfg.limits);
      rec.report.warnings.insert(rec.report.warnings.begin(), warnings.begin(), warnings.end());
    } else {
      warnings.push_back("no usable theory");
      rec.report = zero_report(std::move(warnings));
    }
    rec.elapsed_s = seconds_since(t0);

    if (i == 1) first_prompt = rec.prompt;
    last_reply = reply.text;
    history.push_back({Role::kUser, rec.prompt});
    history.push_back({Role::kAssistant, reply.text});

    trace.total_elapsed_s += rec.elapsed_s;
    const bool done = cfg.thresholds_met(rec.report);
    trace.iterations.push_back(std::move(rec));
    if (done) break;
  }

  trace.best_index = best_index(trace.iterations);
  const IterationRecord& best = trace.iterations[trace.best_index - 1];
  trace.test_report = best.theory ? evaluate_theory(d.bk, *best.theory, d.test_pos, d.test_neg, cfg.limits)
                                  : zero_report({"no usable theory"});
  return trace;
}

RefinementTrace run_induction(const Dataset& d, const BackendConfig& backend, const LoopConfig& cfg) {
  auto b = make_backend(backend, &d);
  const bool wall = cfg.clock == ClockMode::kWall || (cfg.clock == ClockMode::kAuto && backend.kind == BackendKind::kHttp);
  return run_induction(d, *b, backend.display_label(), cfg, wall);
}

std::string trace_to_json(const RefinementTrace& t) {
  ordered_json j;
  j["meta"] = detail::meta_json(t.meta);
  j["backend"] = t.backend;
  ordered_json its = ordered_json::array();
  for (const IterationRecord& r : t.iterations) {
    ordered_json it;
    it["index"] = r.index;
    it["prompt"] = r.prompt;
    it["raw_response"] = r.raw_response;
    it["extracted"] = r.extracted;
    it["theory"] = r.theory ? ordered_json(render_program(*r.theory)) : ordered_json(nullptr);
    ordered_json stripped = ordered_json::array();
    for (const Clause& c : r.stripped) stripped.push_back(render_clause(c));
    it["stripped"] = stripped;
    it["error_class"] = detail::error_class_json(r.error_class);
    it["report"] = detail::report_json(r.report);
    it["latency_s"] = r.latency_s;
    it["elapsed_s"] = r.elapsed_s;
    its.push_back(std::move(it));
  }
  j["iterations"] = its;
  j["best_index"] = t.best_index;
  j["test_report"] = detail::report_json(t.test_report);
  j["total_elapsed_s"] = t.total_elapsed_s;
  j["aborted"] = t.aborted;
  if (t.aborted) j["abort_reason"] = t.abort_reason;
  return j.dump(2) + "\n";
}

RefinementTrace trace_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RefinementTrace t;
    t.meta = detail::meta_from(j.at("meta"));
    t.backend = j.at("backend").get<std::string>();
    for (const json& it : j.at("iterations")) {
      IterationRecord r;
      r.index = it.at("index").get<std::size_t>();
      r.prompt = it.at("prompt").get<std::string>();
      r.raw_response = it.at("raw_response").get<std::string>();
      r.extracted = it.value("extracted", std::string());
      if (it.contains("theory") && !it.at("theory").is_null()) r.theory = parse_program(it.at("theory").get<std::string>());
      for (const json& c : it.value("stripped", json::array())) {
        Program p = parse_program(c.get<std::string>());
        r.stripped.insert(r.stripped.end(), p.clauses.begin(), p.clauses.end());
      }
      r.error_class = detail::error_class_from(it.at("error_class"));
      r.report = detail::report_from(it.at("report"));
      r.latency_s = it.value("latency_s", 0.0);
      r.elapsed_s = it.at("elapsed_s").get<double>();
      t.iterations.push_back(std::move(r));
    }
    t.best_index = j.at("best_index").get<std::size_t>();
    t.test_report = detail::report_from(j.at("test_report"));
    t.total_elapsed_s = j.at("total_elapsed_s").get<double>();
    t.aborted = j.value("aborted", false);
    t.abort_reason = j.value("abort_reason", std::string());
    return t;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed trace: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed trace: ") + e.what());
  }
}

}  // namespace ilpbench
