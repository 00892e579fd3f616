#include "ilpbench/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "ilpbench/fixpoint.hpp"
#include "ilpbench/rng.hpp"

namespace ilpbench {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kCategoryLabels = {{
    {"CHAIN", "chain"},
    {"CHAIN_REC", "chain_rec"},
    {"RDG", "rdg"},
    {"RDG_REC", "rdg_rec"},
    {"DRDG", "drdg"},
    {"DRDG_REC", "drdg_rec"},
    {"MIXED", "mixed"},
}};

bool is_chain_family(Category c) { return c == Category::kChain || c == Category::kChainRec; }
bool is_rdg_family(Category c) { return c == Category::kRdg || c == Category::kRdgRec; }

}  // namespace

std::string_view category_name(Category category) {
  return kCategoryLabels[static_cast<std::size_t>(category)].first;
}

std::string_view category_slug(Category category) {
  return kCategoryLabels[static_cast<std::size_t>(category)].second;
}

Category parse_category(std::string_view text) {
  std::string norm;
  for (char c : text) norm.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Category c : kAllCategories) {
    if (category_slug(c) == norm) return c;
  }
  throw std::invalid_argument("unknown category: " + std::string(text));
}

bool requires_recursion(Category category) {
  return category == Category::kChainRec || category == Category::kRdgRec ||
         category == Category::kDrdgRec || category == Category::kMixed;
}

SizeBounds parse_size_preset(std::string_view name) {
  std::string norm;
  for (char c : name) norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (norm == "xs") return SizeBounds::xs();
  throw std::invalid_argument("unknown size preset: " + std::string(name));
}

void GenSpec::validate() const {
  auto rate_ok = [](double r) { return std::isfinite(r) && r >= 0.0 && r <= 1.0; };
  if (!rate_ok(noise)) throw std::invalid_argument("noise must be in [0, 1]");
  if (!rate_ok(missing)) throw std::invalid_argument("missing must be in [0, 1]");
  if (!rate_ok(owa)) throw std::invalid_argument("owa must be in [0, 1]");
  if (size.min_facts > size.max_facts) throw std::invalid_argument("min_facts exceeds max_facts");
  if (mindags < 1) throw std::invalid_argument("mindags must be at least 1");
  if (maxdags < mindags) throw std::invalid_argument("maxdags must be >= mindags");
  if (min_predicates < 1 || min_predicates > max_predicates)
    throw std::invalid_argument("predicate bounds must satisfy 1 <= min <= max");
  if (max_body_atoms < 1) throw std::invalid_argument("max_body_atoms must be at least 1");
  if (constant_pool < 2) throw std::invalid_argument("constant_pool must be at least 2");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must be in (0, 1)");
}

// ---------------------------------------------------------------------------
// Category validation

namespace {

struct RuleGraph {
  std::map<Predicate, std::vector<std::size_t>> nonrec;  // head -> clause indices
  std::map<Predicate, std::vector<std::size_t>> rec;
  std::map<Predicate, std::set<Predicate>> children;  // IDB and leaf, self excluded
  std::map<Predicate, std::set<Predicate>> parents;
  std::set<Predicate> idb;
  bool has_fact = false;
};

RuleGraph analyze(const Program& rules) {
  RuleGraph g;
  for (std::size_t i = 0; i < rules.clauses.size(); ++i) {
    const Clause& c = rules.clauses[i];
    if (c.is_fact()) {
      g.has_fact = true;
      continue;
    }
    Predicate head = c.head.signature();
    g.idb.insert(head);
    (is_recursive_clause(c) ? g.rec : g.nonrec)[head].push_back(i);
    g.nonrec[head];
    for (const Atom& b : c.body) {
      Predicate bp = b.signature();
      if (bp == head) continue;
      g.children[head].insert(bp);
      g.parents[bp].insert(head);
    }
  }
  return g;
}

std::vector<Predicate> roots_of(const RuleGraph& g) {
  std::vector<Predicate> out;
  for (const Predicate& p : g.idb) {
    auto it = g.parents.find(p);
    if (it == g.parents.end() || it->second.empty()) out.push_back(p);
  }
  return out;
}

bool has_cycle(const RuleGraph& g) {
  std::map<Predicate, int> state;  // 0 new, 1 active, 2 done
  std::function<bool(const Predicate&)> visit = [&](const Predicate& p) {
    int& s = state[p];
    if (s == 1) return true;
    if (s == 2) return false;
    s = 1;
    auto it = g.children.find(p);
    if (it != g.children.end()) {
      for (const Predicate& q : it->second) {
        if (g.idb.contains(q) && visit(q)) return true;
      }
    }
    state[p] = 2;
    return false;
  };
  for (const Predicate& p : g.idb) {
    if (visit(p)) return true;
  }
  return false;
}

std::size_t idb_in_body(const Clause& c, const RuleGraph& g) {
  std::set<Predicate> seen;
  for (const Atom& b : c.body) {
    Predicate bp = b.signature();
    if (bp != c.head.signature() && g.idb.contains(bp)) seen.insert(bp);
  }
  return seen.size();
}

std::vector<std::string> chain_violations(const Program& rules, const RuleGraph& g) {
  std::vector<std::string> out;
  for (const auto& [p, ps] : g.parents) {
    if (ps.size() > 1) out.push_back(p.to_string() + " has more than one parent");
  }
  for (const Clause& c : rules.clauses) {
    if (c.is_fact() || is_recursive_clause(c)) continue;
    if (idb_in_body(c, g) > 1)
      out.push_back("rule for " + c.head.signature().to_string() + " has more than one derived body predicate");
  }
  return out;
}

std::vector<std::string> alternative_violations(const RuleGraph& g) {
  std::vector<std::string> out;
  for (const auto& [p, idx] : g.nonrec) {
    if (idx.size() > 1) out.push_back(p.to_string() + " has alternative rules");
  }
  return out;
}

Category minimal_category(const Program& rules) {
  RuleGraph g = analyze(rules);
  if (!alternative_violations(g).empty()) return Category::kDrdg;
  if (!chain_violations(rules, g).empty()) return Category::kRdg;
  return Category::kChain;
}

std::vector<std::string> mixed_violations(const Program& rules, const RuleGraph& g) {
  std::vector<std::string> out;
  std::vector<Predicate> roots = roots_of(g);
  std::set<Predicate> root_set(roots.begin(), roots.end());
  std::vector<Predicate> nodes;
  for (const Predicate& p : g.idb) {
    if (!root_set.contains(p)) nodes.push_back(p);
  }
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto index_of = [&](const Predicate& p) -> std::optional<std::size_t> {
    auto it = std::find(nodes.begin(), nodes.end(), p);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto it = g.children.find(nodes[i]);
    if (it == g.children.end()) continue;
    for (const Predicate& q : it->second) {
      if (auto j = index_of(q)) parent[find(i)] = find(*j);
    }
  }
  std::map<std::size_t, std::set<Predicate>> components;
  for (std::size_t i = 0; i < nodes.size(); ++i) components[find(i)].insert(nodes[i]);
  std::set<Category> kinds;
  for (const auto& [_, members] : components) {
    Program sub;
    for (const Clause& c : rules.clauses) {
      if (!c.is_fact() && members.contains(c.head.signature())) sub.clauses.push_back(c);
    }
    kinds.insert(minimal_category(sub));
  }
  if (components.size() < 2) out.push_back("fewer than two sub-structures below the root");
  else if (kinds.size() < 2) out.push_back("sub-structures below the root all have the same category");
  return out;
}

}  // namespace

std::vector<Predicate> rule_roots(const Program& rules) { return roots_of(analyze(rules)); }

CategoryReport check_category(const Program& rules, Category category) {
  CategoryReport report;
  auto& v = report.violations;
  RuleGraph g = analyze(rules);
  if (g.idb.empty()) v.push_back("no rules");
  if (g.has_fact) v.push_back("rule set contains a fact");
  if (!g.idb.empty() && roots_of(g).empty()) v.push_back("no root predicate");
  if (has_cycle(g)) v.push_back("dependency graph has a cycle");
  for (const auto& [p, idx] : g.nonrec) {
    if (idx.empty()) v.push_back(p.to_string() + " has no non-recursive rule");
  }
  bool has_rec = std::any_of(g.rec.begin(), g.rec.end(), [](const auto& kv) { return !kv.second.empty(); });
  if (requires_recursion(category) && !has_rec) v.push_back("no recursive rule");
  if (!requires_recursion(category) && has_rec) v.push_back("recursive rule not allowed");
  if (is_chain_family(category) || is_rdg_family(category)) {
    auto alt = alternative_violations(g);
    v.insert(v.end(), alt.begin(), alt.end());
  }
  if (is_chain_family(category)) {
    auto ch = chain_violations(rules, g);
    v.insert(v.end(), ch.begin(), ch.end());
  }
  if (category == Category::kMixed && !g.idb.empty()) {
    auto mx = mixed_violations(rules, g);
    v.insert(v.end(), mx.begin(), mx.end());
  }
  report.ok = v.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Rule generation

namespace {

Term var(std::size_t i) { return Term::variable("X" + std::to_string(i)); }

class RuleBuilder {
 public:
  RuleBuilder(Rng& rng, const GenSpec& spec) : rng_(rng), spec_(spec) {
    std::size_t v = rng_.between(spec.min_predicates, spec.max_predicates);
    for (std::size_t i = 0; i < v; ++i) names_.push_back("p" + std::to_string(i));
    rng_.shuffle(std::span<std::string>(names_));
  }

  std::string fresh() {
    if (next_ == names_.size()) names_.push_back("p" + std::to_string(names_.size()));
    return names_[next_++];
  }

  std::string leaf(bool allow_reuse) {
    if (allow_reuse && !leaves_.empty() && rng_.chance(0.3)) return rng_.pick(leaves_);
    leaves_.push_back(fresh());
    return leaves_.back();
  }

  std::size_t body_size(std::size_t at_least) {
    std::size_t hi = std::max(at_least, spec_.max_body_atoms);
    return rng_.between(std::max<std::size_t>(1, at_least), hi);
  }

  // Head p(X0,X1); body atoms over `preds` joined so the clause is range restricted.
  void add_clause(const std::string& head, std::vector<std::string> preds) {
    rng_.shuffle(std::span<std::string>(preds));
    Clause c;
    c.head = Atom(head, {var(0), var(1)});
    auto oriented = [&](const std::string& p, Term a, Term b) {
      if (rng_.chance(0.5)) std::swap(a, b);
      return Atom(p, {std::move(a), std::move(b)});
    };
    const std::size_t k = preds.size();
    if (k == 1) {
      c.body.push_back(oriented(preds[0], var(0), var(1)));
    } else {
      double shape = rng_.unit();
      if (shape < 0.6 || k > 2) {
        // path X0 - X2 - ... - X1
        std::vector<Term> path{var(0)};
        for (std::size_t i = 0; i + 1 < k; ++i) path.push_back(var(i + 2));
        path.push_back(var(1));
        for (std::size_t i = 0; i < k; ++i) c.body.push_back(oriented(preds[i], path[i], path[i + 1]));
      } else if (shape < 0.8) {
        c.body.push_back(oriented(preds[0], var(0), var(1)));
        c.body.push_back(oriented(preds[1], rng_.chance(0.5) ? var(0) : var(1), var(2)));
      } else {
        c.body.push_back(oriented(preds[0], var(0), var(2)));
        c.body.push_back(oriented(preds[1], var(3), var(1)));
      }
    }
    rules_.clauses.push_back(std::move(c));
  }

  void add_recursive(const std::string& p, const std::vector<std::string>& own_leaves) {
    Clause c;
    c.head = Atom(p, {var(0), var(1)});
    std::size_t forms = spec_.max_body_atoms >= 2 ? 3 : 1;
    switch (rng_.below(forms)) {
      case 0:
        c.body.push_back(Atom(p, {var(1), var(0)}));
        break;
      case 1:
        c.body.push_back(Atom(p, {var(0), var(2)}));
        c.body.push_back(Atom(p, {var(2), var(1)}));
        break;
      default: {
        std::string q = own_leaves.empty() ? leaf(false) : rng_.pick(own_leaves);
        c.body.push_back(Atom(q, {var(0), var(2)}));
        c.body.push_back(Atom(p, {var(2), var(1)}));
        break;
      }
    }
    rules_.clauses.push_back(std::move(c));
  }

  // Leaves in the non-recursive clauses of `p`.
  std::vector<std::string> leaves_of(const std::string& p) const {
    std::set<std::string> heads;
    for (const Clause& c : rules_.clauses) heads.insert(c.head.predicate);
    std::vector<std::string> out;
    for (const Clause& c : rules_.clauses) {
      if (c.head.predicate != p) continue;
      for (const Atom& a : c.body) {
        if (!heads.contains(a.predicate)) out.push_back(a.predicate);
      }
    }
    return out;
  }

  std::vector<std::string> heads() const {
    std::vector<std::string> out;
    for (const Clause& c : rules_.clauses) {
      if (std::find(out.begin(), out.end(), c.head.predicate) == out.end()) out.push_back(c.head.predicate);
    }
    return out;
  }

  // Linear chain; returns its root.
  std::string chain(std::size_t depth) {
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < depth; ++i) nodes.push_back(fresh());
    for (std::size_t i = 0; i < depth; ++i) {
      std::vector<std::string> body;
      bool has_child = i + 1 < depth;
      if (has_child) body.push_back(nodes[i + 1]);
      std::size_t k = body_size(has_child ? 1 : 1);
      while (body.size() < k) body.push_back(leaf(false));
      add_clause(nodes[i], std::move(body));
    }
    return nodes[0];
  }

  // Single-definition DAG; returns its root.
  std::string dag(std::size_t m, bool force_branching) {
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < m; ++i) nodes.push_back(fresh());
    const std::size_t cap = spec_.max_body_atoms;
    std::vector<std::vector<std::size_t>> kids(m);
    for (std::size_t j = 1; j < m; ++j) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < j; ++i) {
        if (kids[i].size() < cap) open.push_back(i);
      }
      std::size_t par = open.empty() ? j - 1 : rng_.pick(open);
      kids[par].push_back(j);
    }
    if (force_branching && cap >= 2) {
      // Give some node a second parent so the structure is not a chain.
      std::vector<std::pair<std::size_t, std::size_t>> options;
      for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (kids[i].size() < cap && std::find(kids[i].begin(), kids[i].end(), j) == kids[i].end())
            options.emplace_back(i, j);
        }
      }
      if (!options.empty()) {
        auto [i, j] = rng_.pick(options);
        kids[i].push_back(j);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::string> body;
      for (std::size_t j : kids[i]) body.push_back(nodes[j]);
      std::size_t k = body_size(body.size());
      while (body.size() < k) body.push_back(leaf(true));
      add_clause(nodes[i], std::move(body));
    }
    return nodes[0];
  }

  void add_alternatives(const std::vector<std::string>& nodes, std::size_t count) {
    std::vector<std::string> pool = nodes;
    rng_.shuffle(std::span<std::string>(pool));
    for (std::size_t n = 0; n < count && n < pool.size(); ++n) {
      std::vector<std::string> body{leaf(false)};
      std::size_t k = body_size(1);
      while (body.size() < k) body.push_back(leaf(true));
      add_clause(pool[n], std::move(body));
    }
  }

  Program& rules() { return rules_; }
  Rng& rng() { return rng_; }
  const GenSpec& spec() const { return spec_; }
  std::vector<std::string> vocabulary() const { return names_; }

 private:
  Rng& rng_;
  const GenSpec& spec_;
  std::vector<std::string> names_;
  std::size_t next_ = 0;
  std::vector<std::string> leaves_;
  Program rules_;
};

std::string build_component(RuleBuilder& b, Category category) {
  Rng& rng = b.rng();
  std::size_t before = b.rules().size();
  std::string root;
  switch (category) {
    case Category::kChain:
    case Category::kChainRec:
      root = b.chain(rng.between(2, 4));
      break;
    case Category::kRdg:
    case Category::kRdgRec:
      root = b.dag(rng.between(3, 4), true);
      break;
    case Category::kDrdg:
    case Category::kDrdgRec: {
      root = b.dag(rng.between(2, 4), false);
      std::vector<std::string> nodes;
      for (std::size_t i = before; i < b.rules().size(); ++i) {
        const std::string& h = b.rules().clauses[i].head.predicate;
        if (std::find(nodes.begin(), nodes.end(), h) == nodes.end()) nodes.push_back(h);
      }
      b.add_alternatives(nodes, rng.between(1, 2));
      break;
    }
    case Category::kMixed: {
      if (b.spec().max_body_atoms < 2) throw GenerationFailure("MIXED needs max_body_atoms >= 2");
      root = b.fresh();
      std::string a = b.chain(rng.between(1, 2));
      std::string d = b.fresh();
      std::vector<std::string> first{b.leaf(false)};
      if (rng.chance(0.5)) {
        std::string c = b.fresh();
        b.add_clause(c, {b.leaf(false)});
        first.push_back(c);
      }
      b.add_clause(d, first);
      b.add_clause(d, {b.leaf(false)});
      b.add_clause(root, {a, d});
      break;
    }
  }
  if (requires_recursion(category)) {
    std::vector<std::string> nodes;
    for (std::size_t i = before; i < b.rules().size(); ++i) {
      const std::string& h = b.rules().clauses[i].head.predicate;
      if (std::find(nodes.begin(), nodes.end(), h) == nodes.end()) nodes.push_back(h);
    }
    std::string p = rng.pick(nodes);
    b.add_recursive(p, b.leaves_of(p));
  }
  return root;
}

}  // namespace

GroundTruth gen_ruleset(Category category, std::uint64_t seed, const GenSpec& shape) {
  if (shape.max_body_atoms < 1 || shape.min_predicates < 1 || shape.min_predicates > shape.max_predicates ||
      shape.mindags < 1 || shape.maxdags < shape.mindags)
    throw std::invalid_argument("invalid rule shape");
  for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
    Rng rng = Rng::derive(seed, "rules", attempt);
    RuleBuilder b(rng, shape);
    std::size_t dags = rng.between(shape.mindags, shape.maxdags);
    std::string target;
    for (std::size_t d = 0; d < dags; ++d) {
      std::string root = build_component(b, category);
      if (d == 0) target = root;
    }
    GroundTruth truth;
    truth.rules = b.rules();
    truth.target = {target, 2};
    if (!check_category(truth.rules, category)) continue;
    auto roots = rule_roots(truth.rules);
    if (std::find(roots.begin(), roots.end(), truth.target) == roots.end()) continue;
    for (const std::string& n : b.vocabulary()) truth.vocabulary.push_back({n, 2});
    return truth;
  }
  throw GenerationFailure("could not generate a valid " + std::string(category_name(category)) + " rule set");
}

// ---------------------------------------------------------------------------
// Facts

FactSet consequences_of(const FactSet& support, const Program& rules) {
  FactSet model = least_model(support, rules);
  FactSet out;
  for (const Atom& a : model) {
    if (!support.contains(a)) out.insert(a);
  }
  return out;
}

namespace {

constexpr std::size_t kMaxRecursionDepth = 2;

class ProofSampler {
 public:
  ProofSampler(const Program& rules, Rng& rng, std::size_t constants) : rng_(rng), constants_(constants) {
    for (const Clause& c : rules.clauses) {
      (is_recursive_clause(c) ? rec_ : base_)[c.head.predicate].push_back(&c);
    }
  }

  std::string constant() { return "c" + std::to_string(rng_.below(constants_)); }

  void prove(const std::string& pred, const std::vector<std::string>& args, std::size_t depth, FactSet& out) {
    auto base = base_.find(pred);
    if (base == base_.end()) {
      out.insert(ground_atom(pred, args));
      return;
    }
    const Clause* clause = nullptr;
    auto rec = rec_.find(pred);
    if (rec != rec_.end() && depth < kMaxRecursionDepth && rng_.chance(0.35)) {
      clause = rng_.pick(rec->second);
      ++depth;
    } else {
      clause = rng_.pick(base->second);
    }
    std::map<std::string, std::string> binding;
    for (std::size_t i = 0; i < clause->head.args.size(); ++i) {
      const Term& t = clause->head.args[i];
      if (t.is_variable()) binding.emplace(t.name(), args[i]);
    }
    for (const Atom& b : clause->body) {
      std::vector<std::string> ground;
      for (const Term& t : b.args) {
        if (t.is_constant()) {
          ground.push_back(t.name());
          continue;
        }
        auto it = binding.find(t.name());
        if (it == binding.end()) it = binding.emplace(t.name(), constant()).first;
        ground.push_back(it->second);
      }
      prove(b.predicate, ground, depth, out);
    }
  }

 private:
  Rng& rng_;
  std::size_t constants_;
  std::map<std::string, std::vector<const Clause*>> base_;
  std::map<std::string, std::vector<const Clause*>> rec_;
};

std::size_t count_intermediate(const FactSet& cons, const Predicate& target) {
  return static_cast<std::size_t>(std::count_if(cons.begin(), cons.end(),
                                                [&](const Atom& a) { return a.signature() != target; }));
}

std::size_t count_target(const FactSet& cons, const Predicate& target) {
  return cons.size() - count_intermediate(cons, target);
}

}  // namespace

GeneratedFacts gen_facts(const GroundTruth& truth, const GenSpec& spec, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, "facts");
  const SizeBounds& sz = spec.size;
  GeneratedFacts out;
  if (sz.support == 0 && sz.max_facts == 0) return out;
  std::vector<Predicate> roots = rule_roots(truth.rules);
  auto t = std::find(roots.begin(), roots.end(), truth.target);
  if (t != roots.end()) std::rotate(roots.begin(), t, t + 1);
  if (roots.empty()) throw GenerationFailure("rule set has no root");

  ProofSampler sampler(truth.rules, rng, spec.constant_pool);
  const std::size_t aim = rng.between(sz.min_facts, sz.max_facts);
  std::size_t size = 0;
  std::size_t proofs = 0;
  std::size_t rejected = 0;
  std::size_t turn = 0;
  while (proofs < sz.support || size < aim) {
    FactSet candidate = out.support;
    const Predicate& root = roots[turn++ % roots.size()];
    std::vector<std::string> args;
    for (std::size_t i = 0; i < root.arity; ++i) args.push_back(sampler.constant());
    sampler.prove(root.name, args, 0, candidate);
    FactSet cons = consequences_of(candidate, truth.rules);
    std::size_t new_size = candidate.size() + count_intermediate(cons, truth.target);
    if (new_size > sz.max_facts) {
      if (++rejected > 64) break;
      continue;
    }
    out.support = std::move(candidate);
    out.consequences = std::move(cons);
    size = new_size;
    if (root == truth.target) ++proofs;
    if (proofs + rejected > 4096) break;
  }
  if (proofs < sz.support || size < sz.min_facts)
    throw GenerationFailure("could not meet the fact size bounds");
  if (count_target(out.consequences, truth.target) < sz.support)
    throw GenerationFailure("too few target consequences");
  return out;
}

// ---------------------------------------------------------------------------
// Corruption

std::size_t corruption_count(double rate, std::size_t n) {
  if (rate <= 0.0 || n == 0) return 0;
  double x = rate * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(x - 1e-9));
  return std::min(k, n);
}

namespace {

std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

FactSet apply_missing(const FactSet& consequences, double rate, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, "missing");
  const auto& atoms = consequences.atoms();
  auto drop = sample_indices(rng, atoms.size(), corruption_count(rate, atoms.size()));
  FactSet out;
  std::size_t d = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    out.insert(atoms[i]);
  }
  return out;
}

OwaSplit apply_owa(const std::vector<Atom>& target_consequences, double rate, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, "owa");
  auto hold = sample_indices(rng, target_consequences.size(), corruption_count(rate, target_consequences.size()));
  OwaSplit out;
  std::size_t h = 0;
  for (std::size_t i = 0; i < target_consequences.size(); ++i) {
    if (h < hold.size() && hold[h] == i) {
      ++h;
      out.withheld.push_back(target_consequences[i]);
    } else {
      out.kept.push_back(target_consequences[i]);
    }
  }
  return out;
}

FactSet apply_noise(const FactSet& facts, double rate, std::uint64_t seed, const GroundTruth& truth) {
  Rng rng = Rng::derive(seed, "noise");
  const std::size_t k = corruption_count(rate / 2.0, facts.size());
  if (k == 0) return facts;

  std::vector<Predicate> preds;
  if (!truth.vocabulary.empty()) {
    preds = truth.vocabulary;
  } else {
    for (const Predicate& p : predicates_of(facts)) preds.push_back(p);
    for (const Predicate& p : predicates_of(truth.rules)) {
      if (std::find(preds.begin(), preds.end(), p) == preds.end()) preds.push_back(p);
    }
  }
  std::erase(preds, truth.target);
  std::vector<std::string> constants;
  {
    std::set<std::string> seen;
    for (const Atom& a : facts) {
      for (const Term& t : a.args) {
        if (seen.insert(t.name()).second) constants.push_back(t.name());
      }
    }
  }

  const FactSet model = least_model(facts, truth.rules);
  auto target_atoms = [&](const FactSet& m) {
    std::set<Atom> out;
    for (const Atom& a : m) {
      if (a.signature() == truth.target) out.insert(a);
    }
    return out;
  };
  const std::set<Atom> base_targets = target_atoms(model);

  // Candidates that leave the target relation unchanged are preferred; a
  // fresh atom that is merely absent from the model is the fallback.
  std::vector<Atom> added;
  std::vector<Atom> fallback;
  FactSet extended = facts;
  if (!preds.empty() && !constants.empty()) {
    const std::size_t budget = 200 * k;
    for (std::size_t tries = 0; tries < budget && added.size() < k; ++tries) {
      const Predicate& p = rng.pick(preds);
      std::vector<std::string> args;
      for (std::size_t i = 0; i < p.arity; ++i) args.push_back(rng.pick(constants));
      Atom a = ground_atom(p.name, args);
      if (model.contains(a) || extended.contains(a)) continue;
      FactSet trial = extended;
      trial.insert(a);
      if (target_atoms(least_model(trial, truth.rules)) == base_targets) {
        added.push_back(a);
        extended.insert(a);
      } else if (std::find(fallback.begin(), fallback.end(), a) == fallback.end()) {
        fallback.push_back(a);
      }
    }
    for (std::size_t i = 0; i < fallback.size() && added.size() < k; ++i) {
      if (extended.insert(fallback[i])) added.push_back(fallback[i]);
    }
  }

  // Remove as many as could be added so the size is preserved.
  const std::size_t removals = added.size();
  auto drop = sample_indices(rng, facts.size(), removals);
  FactSet out;
  std::size_t d = 0;
  for (std::size_t i = 0; i < facts.atoms().size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    out.insert(facts.atoms()[i]);
  }
  for (const Atom& a : added) out.insert(a);
  return out;
}

// ---------------------------------------------------------------------------
// Datasets

namespace {

constexpr std::uint64_t kMaxDatasetAttempts = 64;

std::pair<std::vector<Atom>, std::vector<Atom>> split(std::vector<Atom> atoms, double train_fraction, Rng& rng) {
  rng.shuffle(std::span<Atom>(atoms));
  const std::size_t n = atoms.size();
  auto train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (n >= 2) train = std::clamp<std::size_t>(train, 1, n - 1);
  std::vector<Atom> a(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(train));
  std::vector<Atom> b(atoms.begin() + static_cast<std::ptrdiff_t>(train), atoms.end());
  return {std::move(a), std::move(b)};
}

}  // namespace

Dataset gen_dataset(const GenSpec& spec) {
  spec.validate();
  for (std::uint64_t attempt = 0; attempt < kMaxDatasetAttempts; ++attempt) {
    const std::uint64_t s = mix_seed(spec.seed ^ mix_seed(attempt));
    GroundTruth truth;
    GeneratedFacts gen;
    try {
      truth = gen_ruleset(spec.category, mix_seed(s + 1), spec);
      gen = gen_facts(truth, spec, mix_seed(s + 2));
    } catch (const GenerationFailure&) {
      continue;
    }
    std::vector<Atom> target_cons;
    FactSet intermediate;
    for (const Atom& a : gen.consequences) {
      if (a.signature() == truth.target) target_cons.push_back(a);
      else intermediate.insert(a);
    }
    FactSet full = gen.support;
    for (const Atom& a : gen.consequences) full.insert(a);

    OwaSplit owa = apply_owa(target_cons, spec.owa, mix_seed(s + 3));
    FactSet kept_inter = apply_missing(intermediate, spec.missing, mix_seed(s + 4));
    FactSet clean = gen.support;
    for (const Atom& a : kept_inter) clean.insert(a);
    FactSet bk = apply_noise(clean, spec.noise, mix_seed(s + 5), truth);

    if (bk.size() < spec.size.min_facts || bk.size() > spec.size.max_facts) continue;
    if (owa.kept.size() < 2) continue;

    std::size_t noise_added = 0;
    for (const Atom& a : bk) noise_added += clean.contains(a) ? 0 : 1;
    const std::size_t noise_removed = clean.size() + noise_added - bk.size();

    // Negatives: non-entailed target atoms over the background constants.
    Rng rng = Rng::derive(s, "dataset");
    std::vector<std::string> constants;
    {
      std::set<std::string> seen;
      for (const Atom& a : bk) {
        for (const Term& t : a.args) {
          if (seen.insert(t.name()).second) constants.push_back(t.name());
        }
      }
    }
    const std::size_t want_neg = (owa.kept.size() + 3) / 4;
    std::vector<Atom> negatives;
    std::set<Atom> neg_seen;
    for (std::size_t tries = 0; tries < 1000 * want_neg && negatives.size() < want_neg && !constants.empty(); ++tries) {
      std::vector<std::string> args;
      for (std::size_t i = 0; i < truth.target.arity; ++i) args.push_back(rng.pick(constants));
      Atom a = ground_atom(truth.target.name, args);
      if (full.contains(a) || !neg_seen.insert(a).second) continue;
      negatives.push_back(a);
    }
    if (negatives.size() < want_neg) continue;

    Dataset ds;
    auto [trp, tep] = split(owa.kept, spec.train_fraction, rng);
    auto [trn, ten] = split(negatives, spec.train_fraction, rng);
    ds.train_pos = std::move(trp);
    ds.test_pos = std::move(tep);
    ds.train_neg = std::move(trn);
    ds.test_neg = std::move(ten);

    std::vector<Atom> bk_atoms = bk.atoms();
    rng.shuffle(std::span<Atom>(bk_atoms));
    for (const Atom& a : bk_atoms) ds.bk.insert(a);

    ds.truth = std::move(truth);
    DatasetMeta& m = ds.meta;
    m.category = spec.category;
    m.noise = spec.noise;
    m.missing = spec.missing;
    m.owa = spec.owa;
    m.seed = spec.seed;
    m.target = ds.truth.target;
    m.vocabulary = ds.truth.vocabulary;
    m.size = spec.size;
    m.train_fraction = spec.train_fraction;
    m.counts = {
        {"attempts", static_cast<std::size_t>(attempt + 1)},
        {"bk", ds.bk.size()},
        {"support", gen.support.size()},
        {"intermediate", intermediate.size()},
        {"missing_removed", intermediate.size() - kept_inter.size()},
        {"noise_added", noise_added},
        {"noise_removed", noise_removed},
        {"owa_withheld", owa.withheld.size()},
        {"positives", owa.kept.size()},
        {"negatives", negatives.size()},
        {"train_pos", ds.train_pos.size()},
        {"train_neg", ds.train_neg.size()},
        {"test_pos", ds.test_pos.size()},
        {"test_neg", ds.test_neg.size()},
        {"rules", ds.truth.rules.size()},
    };
    return ds;
  }
  throw GenerationFailure("could not generate a " + std::string(category_name(spec.category)) +
                          " dataset within the size bounds");
}

std::vector<PlanEntry> experiment_plan(std::span<const Category> categories, std::span<const double> levels,
                                       std::size_t samples, std::uint64_t seed_base, const GenSpec& base) {
  std::vector<PlanEntry> out;
  for (Category c : categories) {
    for (double level : levels) {
      for (std::size_t s = 1; s <= samples; ++s) {
        PlanEntry e;
        char buf[64];
        std::snprintf(buf, sizeof buf, "_n%g_s%zu", level, s);
        e.name = std::string(category_slug(c)) + buf;
        e.spec = base;
        e.spec.category = c;
        e.spec.noise = e.spec.missing = e.spec.owa = level;
        e.spec.seed = mix_seed(seed_base ^ mix_seed(out.size() + 1));
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::vector<PlanEntry> default_plan(std::uint64_t seed_base) {
  return experiment_plan(kAllCategories, kDefaultLevels, kDefaultSamples, seed_base, GenSpec{});
}

}  // namespace ilpbench
