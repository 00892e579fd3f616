#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ilpbench {

/// A first-order term without function symbols: a constant or a variable.
///
/// Constant names match `[a-z][A-Za-z0-9_]*`, variable names `[A-Z_][A-Za-z0-9_]*`.
/// The factories throw std::invalid_argument on a malformed name.
class Term {
 public:
  enum class Kind : unsigned char { kConstant, kVariable };

  static Term constant(std::string name);
  static Term variable(std::string name);

  Kind kind() const noexcept { return kind_; }
  bool is_variable() const noexcept { return kind_ == Kind::kVariable; }
  bool is_constant() const noexcept { return kind_ == Kind::kConstant; }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

bool is_constant_name(std::string_view name) noexcept;
bool is_variable_name(std::string_view name) noexcept;

/// Predicate symbol identified by name and arity (`p0/2`).
struct Predicate {
  std::string name;
  std::size_t arity = 0;

  std::string to_string() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

/// Parses `name/arity`. Throws std::invalid_argument.
Predicate parse_predicate(std::string_view text);

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  Atom() = default;
  Atom(std::string pred, std::vector<Term> arguments);

  Predicate signature() const { return {predicate, args.size()}; }
  bool is_ground() const noexcept;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Shorthand for building ground atoms: `ground_atom("parent", {"john", "mary"})`.
Atom ground_atom(std::string predicate, const std::vector<std::string>& constants);

struct AtomHash {
  std::size_t operator()(const Atom& atom) const noexcept;
};

/// A definite clause. An empty body makes it a fact.
struct Clause {
  Atom head;
  std::vector<Atom> body;

  bool is_fact() const noexcept { return body.empty(); }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;
};

struct Program {
  std::vector<Clause> clauses;

  bool empty() const noexcept { return clauses.empty(); }
  std::size_t size() const noexcept { return clauses.size(); }

  /// Drops exact duplicate clauses, keeping first occurrences.
  Program normalized() const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Insertion-ordered set of ground atoms.
class FactSet {
 public:
  FactSet() = default;
  FactSet(std::initializer_list<Atom> atoms);

  /// Returns false when the atom was already present. Throws
  /// std::invalid_argument for non-ground atoms.
  bool insert(const Atom& atom);
  bool erase(const Atom& atom);
  bool contains(const Atom& atom) const { return index_.contains(atom); }

  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  /// Set equality; insertion order is ignored.
  friend bool operator==(const FactSet& a, const FactSet& b);

 private:
  std::vector<Atom> atoms_;
  std::unordered_set<Atom, AtomHash> index_;
};

bool is_recursive_clause(const Clause& clause);
Program strip_recursive(const Program& program);
bool is_range_restricted(const Clause& clause);

std::set<Predicate> predicates_of(const Program& program);
std::set<Predicate> predicates_of(const FactSet& facts);

/// Predicates used with more than one arity.
std::vector<std::string> arity_conflicts(const Program& program);

std::string render_term(const Term& term);
std::string render_atom(const Atom& atom);
std::string render_clause(const Clause& clause);
/// One clause per line, no trailing newline; empty program renders as "".
std::string render_program(const Program& program);
/// One `.`-terminated atom per line, each line newline-terminated.
std::string render_facts(const std::vector<Atom>& atoms);

}  // namespace ilpbench
