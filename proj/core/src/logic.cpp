#include "ilpbench/logic.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace ilpbench {

namespace {

bool is_ident_tail(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool tail_ok(std::string_view name) noexcept {
  return std::all_of(name.begin() + 1, name.end(), is_ident_tail);
}

void hash_combine(std::size_t& seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

bool is_constant_name(std::string_view name) noexcept {
  return !name.empty() && name.front() >= 'a' && name.front() <= 'z' && tail_ok(name);
}

bool is_variable_name(std::string_view name) noexcept {
  return !name.empty() && ((name.front() >= 'A' && name.front() <= 'Z') || name.front() == '_') &&
         tail_ok(name);
}

Term Term::constant(std::string name) {
  if (!is_constant_name(name)) throw std::invalid_argument("invalid constant name: " + name);
  return Term(Kind::kConstant, std::move(name));
}

Term Term::variable(std::string name) {
  if (!is_variable_name(name)) throw std::invalid_argument("invalid variable name: " + name);
  return Term(Kind::kVariable, std::move(name));
}

std::string Predicate::to_string() const { return name + "/" + std::to_string(arity); }

Predicate parse_predicate(std::string_view text) {
  const auto slash = text.rfind('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("expected name/arity");
  Predicate pred{std::string(text.substr(0, slash)), 0};
  const auto digits = text.substr(slash + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), pred.arity);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || !is_constant_name(pred.name)) {
    throw std::invalid_argument("expected name/arity, got '" + std::string(text) + "'");
  }
  return pred;
}

Atom::Atom(std::string pred, std::vector<Term> arguments)
    : predicate(std::move(pred)), args(std::move(arguments)) {}

bool Atom::is_ground() const noexcept {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Atom ground_atom(std::string predicate, const std::vector<std::string>& constants) {
  std::vector<Term> args;
  args.reserve(constants.size());
  for (const auto& c : constants) args.push_back(Term::constant(c));
  return Atom(std::move(predicate), std::move(args));
}

std::size_t AtomHash::operator()(const Atom& atom) const noexcept {
  std::size_t seed = std::hash<std::string>{}(atom.predicate);
  for (const auto& arg : atom.args) {
    hash_combine(seed, std::hash<std::string>{}(arg.name()));
    hash_combine(seed, static_cast<std::size_t>(arg.kind()));
  }
  return seed;
}

Program Program::normalized() const {
  Program out;
  std::set<Clause> seen;
  for (const auto& clause : clauses) {
    if (seen.insert(clause).second) out.clauses.push_back(clause);
  }
  return out;
}

FactSet::FactSet(std::initializer_list<Atom> atoms) {
  for (const auto& atom : atoms) insert(atom);
}

bool FactSet::insert(const Atom& atom) {
  if (!atom.is_ground()) throw std::invalid_argument("fact is not ground: " + render_atom(atom));
  if (!index_.insert(atom).second) return false;
  atoms_.push_back(atom);
  return true;
}

bool FactSet::erase(const Atom& atom) {
  if (index_.erase(atom) == 0) return false;
  atoms_.erase(std::find(atoms_.begin(), atoms_.end(), atom));
  return true;
}

bool operator==(const FactSet& a, const FactSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const Atom& atom) { return b.contains(atom); });
}

bool is_recursive_clause(const Clause& clause) {
  const auto head = clause.head.signature();
  return std::any_of(clause.body.begin(), clause.body.end(),
                     [&](const Atom& atom) { return atom.signature() == head; });
}

Program strip_recursive(const Program& program) {
  Program out;
  std::copy_if(program.clauses.begin(), program.clauses.end(), std::back_inserter(out.clauses),
               [](const Clause& c) { return !is_recursive_clause(c); });
  return out;
}

bool is_range_restricted(const Clause& clause) {
  for (const auto& arg : clause.head.args) {
    if (!arg.is_variable()) continue;
    const bool bound = std::any_of(clause.body.begin(), clause.body.end(), [&](const Atom& atom) {
      return std::find(atom.args.begin(), atom.args.end(), arg) != atom.args.end();
    });
    if (!bound) return false;
  }
  return true;
}

std::set<Predicate> predicates_of(const Program& program) {
  std::set<Predicate> out;
  for (const auto& clause : program.clauses) {
    out.insert(clause.head.signature());
    for (const auto& atom : clause.body) out.insert(atom.signature());
  }
  return out;
}

std::set<Predicate> predicates_of(const FactSet& facts) {
  std::set<Predicate> out;
  for (const auto& atom : facts) out.insert(atom.signature());
  return out;
}

std::vector<std::string> arity_conflicts(const Program& program) {
  std::map<std::string, std::set<std::size_t>> arities;
  for (const auto& p : predicates_of(program)) arities[p.name].insert(p.arity);
  std::vector<std::string> out;
  for (const auto& [name, set] : arities) {
    if (set.size() > 1) out.push_back(name);
  }
  return out;
}

std::string render_term(const Term& term) { return term.name(); }

std::string render_atom(const Atom& atom) {
  std::string out = atom.predicate;
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ',';
    out += atom.args[i].name();
  }
  out += ')';
  return out;
}

std::string render_clause(const Clause& clause) {
  std::string out = render_atom(clause.head);
  if (!clause.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (i) out += ',';
      out += render_atom(clause.body[i]);
    }
  }
  out += '.';
  return out;
}

std::string render_program(const Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.clauses.size(); ++i) {
    if (i) out += '\n';
    out += render_clause(program.clauses[i]);
  }
  return out;
}

std::string render_facts(const std::vector<Atom>& atoms) {
  std::string out;
  for (const auto& atom : atoms) {
    out += render_atom(atom);
    out += ".\n";
  }
  return out;
}

}  // namespace ilpbench
