#include "ilpbench/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "ilpbench/llm.hpp"
#include "ilpbench/reader.hpp"
#include "json_codec.hpp"

namespace ilpbench {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

EvalReport metrics(const ConfusionCounts& c) {
  EvalReport r;
  r.counts = c;
  r.accuracy = ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  const double s = r.precision + r.recall;
  r.f1 = s == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / s;
  return r;
}

EvalReport zero_report(std::vector<std::string> warnings) {
  EvalReport r;
  r.warnings = std::move(warnings);
  return r;
}

EvalReport evaluate_theory(const FactSet& bk, const Program& theory, std::span<const Atom> pos,
                           std::span<const Atom> neg, const EvalLimits& limits) {
  try {
    Classification cls = classify_examples(bk, theory, pos, neg, limits);
    EvalReport r = metrics(cls.counts);
    r.misclassified_pos = std::move(cls.misclassified_pos);
    r.misclassified_neg = std::move(cls.misclassified_neg);
    for (const Clause& c : cls.skipped) r.warnings.push_back("skipped unsafe clause: " + render_clause(c));
    return r;
  } catch (const BudgetExceeded& e) {
    return zero_report({std::string("evaluation budget exceeded: ") + e.what()});
  }
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNone:
      return "NONE";
    case ErrorKind::kSyntactic:
      return "SYNTACTIC";
    case ErrorKind::kLogical:
      return "LOGICAL";
  }
  return "NONE";
}

ErrorKind parse_error_kind(std::string_view text) {
  if (text == "NONE") return ErrorKind::kNone;
  if (text == "SYNTACTIC") return ErrorKind::kSyntactic;
  if (text == "LOGICAL") return ErrorKind::kLogical;
  throw std::invalid_argument("unknown error class: " + std::string(text));
}

namespace {

constexpr std::pair<ErrorReason::Kind, std::string_view> kReasonNames[] = {
    {ErrorReason::Kind::kUnknownPredicate, "UnknownPredicate"},
    {ErrorReason::Kind::kWrongTargetHead, "WrongTargetHead"},
    {ErrorReason::Kind::kUnsafeClause, "UnsafeClause"},
    {ErrorReason::Kind::kUnsupportedConstruct, "UnsupportedConstruct"},
    {ErrorReason::Kind::kArityMismatch, "ArityMismatch"},
};

}  // namespace

std::string ErrorReason::to_string() const {
  for (const auto& [k, name] : kReasonNames) {
    if (k == kind) return std::string(name) + "(" + detail + ")";
  }
  return detail;
}

ErrorReason ErrorReason::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw std::invalid_argument("malformed error reason: " + std::string(text));
  const std::string_view name = text.substr(0, open);
  for (const auto& [k, n] : kReasonNames) {
    if (n == name) return {k, std::string(text.substr(open + 1, text.size() - open - 2))};
  }
  throw std::invalid_argument("unknown error reason: " + std::string(text));
}

bool ErrorClass::has_reason(ErrorReason::Kind k, std::string_view detail) const {
  return std::any_of(reasons.begin(), reasons.end(),
                     [&](const ErrorReason& r) { return r.kind == k && (detail.empty() || r.detail == detail); });
}

namespace {

bool is_control(const SyntaxTerm& t) {
  return t.op_notation || t.is(",", 2) || t.is(";", 2) || t.is("->", 2) || t.is("\\+", 1) ||
         is_builtin_name(t.name);
}

// Predicates called as goals. Control constructs and built-ins are looked
// through; arguments of ordinary predicates are data and are not visited.
void collect_goals(const SyntaxTerm& t, std::vector<Predicate>& out) {
  if (!t.is_callable()) return;
  if (t.kind == SyntaxTerm::Kind::kCompound && is_control(t)) {
    for (const SyntaxTerm& a : t.args) collect_goals(a, out);
    return;
  }
  if (t.kind == SyntaxTerm::Kind::kAtom && is_builtin_name(t.name)) return;
  out.push_back({t.name, t.args.size()});
}

class ReasonSet {
 public:
  void add(ErrorReason::Kind kind, std::string detail) {
    ErrorReason r{kind, std::move(detail)};
    if (std::find(reasons_.begin(), reasons_.end(), r) == reasons_.end()) reasons_.push_back(std::move(r));
  }
  std::vector<ErrorReason> take() { return std::move(reasons_); }

 private:
  std::vector<ErrorReason> reasons_;
};

}  // namespace

ErrorClass classify_error(std::string_view raw_response, const std::set<Predicate>& bk_predicates,
                          const Predicate& target) {
  ErrorClass out;
  const std::string text = extract_theory(raw_response);
  if (is_blank(text)) {
    out.kind = ErrorKind::kSyntactic;
    out.message = "no theory text in response";
    return out;
  }
  std::vector<SyntaxTerm> terms;
  try {
    terms = read_clause_terms(text);
  } catch (const ParseError& e) {
    out.kind = ErrorKind::kSyntactic;
    out.message = "line " + std::to_string(e.position().line) + ", column " + std::to_string(e.position().column) +
                  ": " + e.message();
    return out;
  }
  if (terms.empty()) {
    out.kind = ErrorKind::kSyntactic;
    out.message = "no clauses";
    return out;
  }

  auto known = [&](const Predicate& p) { return p == target || bk_predicates.contains(p); };
  auto arity_clash = [&](const Predicate& p) {
    if (p.name == target.name && p.arity != target.arity) return true;
    return std::any_of(bk_predicates.begin(), bk_predicates.end(),
                       [&](const Predicate& b) { return b.name == p.name && b.arity != p.arity; });
  };
  ReasonSet reasons;
  auto check_goal = [&](const Predicate& p) {
    if (known(p)) return;
    if (arity_clash(p)) reasons.add(ErrorReason::Kind::kArityMismatch, p.to_string());
    else reasons.add(ErrorReason::Kind::kUnknownPredicate, p.to_string());
  };

  for (const SyntaxTerm& t : terms) {
    try {
      Clause c = to_clause(t);
      if (!known(c.head.signature())) reasons.add(ErrorReason::Kind::kWrongTargetHead, c.head.signature().to_string());
      for (const Atom& b : c.body) check_goal(b.signature());
      if (!is_range_restricted(c)) reasons.add(ErrorReason::Kind::kUnsafeClause, render_clause(c));
    } catch (const ParseError& e) {
      reasons.add(ErrorReason::Kind::kUnsupportedConstruct, e.message());
      if (t.op_notation && t.is(":-", 1)) {
        std::vector<Predicate> goals;
        collect_goals(t.args[0], goals);
        for (const Predicate& p : goals) check_goal(p);
        continue;
      }
      const SyntaxTerm& head = (t.op_notation && t.is(":-", 2)) ? t.args[0] : t;
      Predicate hp{head.name, head.args.size()};
      if (!known(hp)) reasons.add(ErrorReason::Kind::kWrongTargetHead, hp.to_string());
      if (t.op_notation && t.is(":-", 2)) {
        std::vector<Predicate> goals;
        collect_goals(t.args[1], goals);
        for (const Predicate& p : goals) check_goal(p);
      }
    }
  }
  out.reasons = reasons.take();
  out.kind = out.reasons.empty() ? ErrorKind::kNone : ErrorKind::kLogical;
  return out;
}

ErrorShare tally_errors(std::string label, std::span<const ErrorKind> kinds) {
  ErrorShare s;
  s.label = std::move(label);
  s.iterations = kinds.size();
  for (ErrorKind k : kinds) {
    if (k == ErrorKind::kSyntactic) ++s.syntactic;
    if (k == ErrorKind::kLogical) ++s.logical;
  }
  s.erroneous = s.syntactic + s.logical;
  if (s.erroneous > 0) {
    s.syntactic_pct = 100.0 * static_cast<double>(s.syntactic) / static_cast<double>(s.erroneous);
    s.logical_pct = 100.0 * static_cast<double>(s.logical) / static_cast<double>(s.erroneous);
  }
  return s;
}

std::string report_to_json(const EvalReport& report) { return detail::report_json(report).dump(2) + "\n"; }

}  // namespace ilpbench
