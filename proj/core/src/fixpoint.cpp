#include "ilpbench/fixpoint.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace ilpbench {

namespace {

using Sym = std::uint32_t;
using Tuple = std::vector<Sym>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = t.size();
    for (Sym s : t) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class SymbolTable {
 public:
  Sym intern(const std::string& name) {
    const auto [it, inserted] = ids_.try_emplace(name, static_cast<Sym>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::optional<Sym> find(const std::string& name) const {
    const auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& name(Sym s) const { return names_[s]; }

 private:
  std::unordered_map<std::string, Sym> ids_;
  std::vector<std::string> names_;
};

struct Relation {
  std::string name;
  std::size_t arity = 0;
  std::vector<Tuple> rows;
  std::unordered_set<Tuple, TupleHash> members;
  // Per argument position: constant -> ids of rows holding it there.
  std::vector<std::unordered_map<Sym, std::vector<std::uint32_t>>> by_arg;

  bool add(Tuple t) {
    if (!members.insert(t).second) return false;
    const auto id = static_cast<std::uint32_t>(rows.size());
    for (std::size_t i = 0; i < arity; ++i) by_arg[i][t[i]].push_back(id);
    rows.push_back(std::move(t));
    return true;
  }
};

struct CArg {
  bool is_var = false;
  std::uint32_t value = 0;  // variable slot or symbol
};

struct CAtom {
  std::size_t rel = 0;
  std::vector<CArg> args;
};

struct CRule {
  CAtom head;
  std::vector<CAtom> body;
  std::size_t slots = 0;
};

constexpr std::uint32_t kUnbound = std::numeric_limits<std::uint32_t>::max();

class Engine {
 public:
  Engine(const FactSet& bk, const Program& theory, const EvalLimits& limits,
         std::vector<Clause>* skipped)
      : limits_(limits) {
    for (const auto& atom : bk) insert_ground(atom);
    bk_size_ = order_.size();
    for (const auto& clause : theory.clauses) {
      if (!is_range_restricted(clause)) {
        if (skipped) skipped->push_back(clause);
        continue;
      }
      if (clause.is_fact()) {
        insert_ground(clause.head);
      } else {
        rules_.push_back(compile(clause));
      }
    }
  }

  void run() {
    std::vector<std::size_t> old_end(relations_.size(), 0);
    std::vector<std::size_t> end(relations_.size());
    for (std::size_t r = 0; r < relations_.size(); ++r) end[r] = relations_[r].rows.size();

    std::size_t round = 0;
    for (;;) {
      bool any_delta = false;
      for (std::size_t r = 0; r < relations_.size(); ++r) any_delta |= end[r] > old_end[r];
      if (!any_delta) break;
      if (++round > limits_.max_rounds) {
        throw BudgetExceeded("evaluation exceeded " + std::to_string(limits_.max_rounds) + " rounds");
      }
      pending_.clear();
      pending_set_.clear();
      for (const auto& rule : rules_) {
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
          const std::size_t rel = rule.body[i].rel;
          if (end[rel] == old_end[rel]) continue;
          evaluate(rule, i, old_end, end);
        }
      }
      for (auto& [rel, tuple] : pending_) {
        if (relations_[rel].add(tuple)) order_.emplace_back(rel, relations_[rel].rows.size() - 1);
      }
      old_end = end;
      end.resize(relations_.size());
      for (std::size_t r = 0; r < relations_.size(); ++r) end[r] = relations_[r].rows.size();
      old_end.resize(relations_.size(), 0);
    }
  }

  bool contains(const Atom& atom) const {
    const auto rel = relation_ids_.find({atom.predicate, atom.args.size()});
    if (rel == relation_ids_.end()) return false;
    Tuple t;
    t.reserve(atom.args.size());
    for (const auto& arg : atom.args) {
      const auto s = symbols_.find(arg.name());
      if (!s) return false;
      t.push_back(*s);
    }
    return relations_[rel->second].members.contains(t);
  }

  FactSet to_facts() const {
    FactSet out;
    for (const auto& [rel, row] : order_) {
      const Relation& r = relations_[rel];
      std::vector<Term> args;
      args.reserve(r.arity);
      for (Sym s : r.rows[row]) args.push_back(Term::constant(symbols_.name(s)));
      out.insert(Atom(r.name, std::move(args)));
    }
    return out;
  }

 private:
  std::size_t relation(const std::string& name, std::size_t arity) {
    const auto [it, inserted] = relation_ids_.try_emplace({name, arity}, relations_.size());
    if (inserted) {
      Relation r;
      r.name = name;
      r.arity = arity;
      r.by_arg.resize(arity);
      relations_.push_back(std::move(r));
    }
    return it->second;
  }

  void insert_ground(const Atom& atom) {
    const std::size_t rel = relation(atom.predicate, atom.args.size());
    Tuple t;
    t.reserve(atom.args.size());
    for (const auto& arg : atom.args) t.push_back(symbols_.intern(arg.name()));
    if (relations_[rel].add(std::move(t))) order_.emplace_back(rel, relations_[rel].rows.size() - 1);
  }

  CRule compile(const Clause& clause) {
    std::map<std::string, std::uint32_t> slots;
    auto compile_atom = [&](const Atom& atom) {
      CAtom out;
      out.rel = relation(atom.predicate, atom.args.size());
      for (const auto& arg : atom.args) {
        if (arg.is_variable()) {
          const auto [it, _] = slots.try_emplace(arg.name(), static_cast<std::uint32_t>(slots.size()));
          out.args.push_back({true, it->second});
        } else {
          out.args.push_back({false, symbols_.intern(arg.name())});
        }
      }
      return out;
    };
    CRule rule;
    for (const auto& atom : clause.body) rule.body.push_back(compile_atom(atom));
    rule.head = compile_atom(clause.head);
    rule.slots = slots.size();
    return rule;
  }

  // Semi-naive step for one rule with body position `delta_pos` reading only
  // new rows. Positions before it read old rows, positions after read all.
  void evaluate(const CRule& rule, std::size_t delta_pos, const std::vector<std::size_t>& old_end,
                const std::vector<std::size_t>& end) {
    std::vector<std::size_t> order;
    order.reserve(rule.body.size());
    order.push_back(delta_pos);
    for (std::size_t j = 0; j < rule.body.size(); ++j) {
      if (j != delta_pos) order.push_back(j);
    }
    std::vector<std::pair<std::size_t, std::size_t>> ranges(rule.body.size());
    for (std::size_t j = 0; j < rule.body.size(); ++j) {
      const std::size_t rel = rule.body[j].rel;
      if (j < delta_pos) {
        ranges[j] = {0, old_end[rel]};
      } else if (j == delta_pos) {
        ranges[j] = {old_end[rel], end[rel]};
      } else {
        ranges[j] = {0, end[rel]};
      }
    }
    std::vector<std::uint32_t> binding(rule.slots, kUnbound);
    join(rule, order, ranges, 0, binding);
  }

  void join(const CRule& rule, const std::vector<std::size_t>& order,
            const std::vector<std::pair<std::size_t, std::size_t>>& ranges, std::size_t depth,
            std::vector<std::uint32_t>& binding) {
    if (depth == order.size()) {
      emit(rule, binding);
      return;
    }
    const std::size_t pos = order[depth];
    const CAtom& atom = rule.body[pos];
    const Relation& rel = relations_[atom.rel];
    const auto [lo, hi] = ranges[pos];
    if (lo >= hi) return;

    // Pick the first bound argument to drive an index lookup.
    std::optional<std::size_t> key_pos;
    Sym key = 0;
    for (std::size_t a = 0; a < atom.args.size(); ++a) {
      const CArg& arg = atom.args[a];
      if (!arg.is_var) {
        key_pos = a;
        key = arg.value;
        break;
      }
      if (binding[arg.value] != kUnbound) {
        key_pos = a;
        key = binding[arg.value];
        break;
      }
    }

    auto try_row = [&](std::size_t row_id) {
      const Tuple& row = rel.rows[row_id];
      std::vector<std::uint32_t> newly;
      bool ok = true;
      for (std::size_t a = 0; a < atom.args.size() && ok; ++a) {
        const CArg& arg = atom.args[a];
        if (!arg.is_var) {
          ok = row[a] == arg.value;
        } else if (binding[arg.value] == kUnbound) {
          binding[arg.value] = row[a];
          newly.push_back(arg.value);
        } else {
          ok = binding[arg.value] == row[a];
        }
      }
      if (ok) join(rule, order, ranges, depth + 1, binding);
      for (auto slot : newly) binding[slot] = kUnbound;
    };

    if (key_pos) {
      const auto& index = rel.by_arg[*key_pos];
      const auto it = index.find(key);
      if (it == index.end()) return;
      for (std::uint32_t row_id : it->second) {
        if (row_id >= hi) break;  // row ids are ascending
        if (row_id >= lo) try_row(row_id);
      }
    } else {
      for (std::size_t row_id = lo; row_id < hi; ++row_id) try_row(row_id);
    }
  }

  void emit(const CRule& rule, const std::vector<std::uint32_t>& binding) {
    Tuple t;
    t.reserve(rule.head.args.size());
    for (const CArg& arg : rule.head.args) t.push_back(arg.is_var ? binding[arg.value] : arg.value);
    const Relation& rel = relations_[rule.head.rel];
    if (rel.members.contains(t)) return;
    if (!pending_set_.insert({rule.head.rel, t}).second) return;
    if (order_.size() - bk_size_ + pending_.size() + 1 > limits_.max_derived_facts) {
      throw BudgetExceeded("evaluation exceeded " + std::to_string(limits_.max_derived_facts) +
                           " derived facts");
    }
    pending_.emplace_back(rule.head.rel, std::move(t));
  }

  struct PendingHash {
    std::size_t operator()(const std::pair<std::size_t, Tuple>& p) const noexcept {
      return TupleHash{}(p.second) ^ (p.first * 0x9e3779b97f4a7c15ULL);
    }
  };

  EvalLimits limits_;
  SymbolTable symbols_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> relation_ids_;
  std::vector<Relation> relations_;
  std::vector<CRule> rules_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::size_t bk_size_ = 0;
  std::vector<std::pair<std::size_t, Tuple>> pending_;
  std::unordered_set<std::pair<std::size_t, Tuple>, PendingHash> pending_set_;
};

}  // namespace

FactSet least_model(const FactSet& bk, const Program& theory, const EvalLimits& limits,
                    std::vector<Clause>* skipped) {
  Engine engine(bk, theory, limits, skipped);
  engine.run();
  return engine.to_facts();
}

bool entails(const FactSet& bk, const Program& theory, const Atom& query, const EvalLimits& limits) {
  if (!query.is_ground()) throw std::invalid_argument("query is not ground: " + render_atom(query));
  Engine engine(bk, theory, limits, nullptr);
  engine.run();
  return engine.contains(query);
}

Classification classify_examples(const FactSet& bk, const Program& theory, std::span<const Atom> pos,
                                 std::span<const Atom> neg, const EvalLimits& limits) {
  std::unordered_set<Atom, AtomHash> positives;
  for (const auto& atom : pos) {
    if (!atom.is_ground()) throw std::invalid_argument("example is not ground: " + render_atom(atom));
    positives.insert(atom);
  }
  for (const auto& atom : neg) {
    if (!atom.is_ground()) throw std::invalid_argument("example is not ground: " + render_atom(atom));
    if (positives.contains(atom)) {
      throw OverlappingExamples("atom is both a positive and a negative example: " + render_atom(atom));
    }
  }

  Classification out;
  Engine engine(bk, theory, limits, &out.skipped);
  engine.run();
  for (const auto& atom : pos) {
    if (engine.contains(atom)) {
      ++out.counts.tp;
    } else {
      ++out.counts.fn;
      out.misclassified_pos.push_back(atom);
    }
  }
  for (const auto& atom : neg) {
    if (engine.contains(atom)) {
      ++out.counts.fp;
      out.misclassified_neg.push_back(atom);
    } else {
      ++out.counts.tn;
    }
  }
  return out;
}

}  // namespace ilpbench
