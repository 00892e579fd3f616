#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilpbench/logic.hpp"

namespace ilpbench {

struct SourcePos {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Raised for text that is not a sequence of well-formed clauses (kSyntax),
/// or well-formed Prolog outside the definite Horn fragment (kUnsupported).
class ParseError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kUnsupported };

  ParseError(Kind kind, SourcePos pos, std::string token, std::string message);

  Kind kind() const noexcept { return kind_; }
  const SourcePos& position() const noexcept { return pos_; }
  const std::string& token() const noexcept { return token_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string token_;
  std::string message_;
};

/// Generic Prolog term as read from text, before any restriction to the
/// Horn fragment. `op_notation` marks compounds written with an operator.
struct SyntaxTerm {
  enum class Kind { kAtom, kVariable, kNumber, kString, kCompound };

  Kind kind = Kind::kAtom;
  std::string name;
  std::vector<SyntaxTerm> args;
  SourcePos pos;
  bool op_notation = false;
  bool quoted = false;

  bool is_callable() const noexcept { return kind == Kind::kAtom || kind == Kind::kCompound; }
  bool is(std::string_view functor, std::size_t arity) const noexcept {
    return is_callable() && name == functor && args.size() == arity;
  }
};

/// Reads `.`-terminated clause terms using the standard operator table.
/// Each returned term is a clause whose head is a predicate written in
/// functional notation (or a directive). Throws ParseError(kSyntax).
std::vector<SyntaxTerm> read_clause_terms(std::string_view text);

/// Converts one clause term to a definite clause. Throws ParseError(kUnsupported).
Clause to_clause(const SyntaxTerm& clause_term);

/// Strict parse: the whole text must be definite Horn clauses.
Program parse_program(std::string_view text);

struct LenientParse {
  Program program;
  std::vector<ParseError> rejected;
};

/// Keeps every clause inside the Horn fragment and records the rest.
/// Still throws ParseError(kSyntax) for ungrammatical text.
LenientParse parse_program_lenient(std::string_view text);

/// Parses a ground atom such as `p0(c1,c2)` (trailing `.` optional).
Atom parse_ground_atom(std::string_view text);

/// Parses a file of `.`-terminated ground atoms.
std::vector<Atom> parse_atom_list(std::string_view text);

std::string render_syntax(const SyntaxTerm& term);

/// Names of built-in predicates that to_clause rejects as goals.
bool is_builtin_name(std::string_view name);

}  // namespace ilpbench
