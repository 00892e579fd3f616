#pragma once

// Shared test inputs.

#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include "ilpbench/logic.hpp"
#include "ilpbench/reader.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench::fixtures {

inline FactSet family_bk() {
  return {ground_atom("parent", {"john", "mary"}), ground_atom("parent", {"mary", "susan"}),
          ground_atom("parent", {"john", "michael"}), ground_atom("parent", {"michael", "robert"})};
}

inline Program family_rules() {
  return parse_program(
      "ancestor(X,Y) :- parent(X,Y).\n"
      "ancestor(X,Y) :- parent(X,Z), ancestor(Z,Y).\n");
}

inline constexpr std::string_view kChainExample =
    "p5(X, Y) :- p0(X, Z), p2(Y, W).\n"
    "p0(X, Y) :- p3(X, Z), p4(W, Y).\n"
    "p3(X, Y) :- p6(X, Z), p7(W, Y).\n";

inline constexpr std::string_view kRdgExample =
    "p0(X0,X1) :- p1(X1,X2),p3(X0,X1).\n"
    "p3(X0,X1) :- p8(X0,X1),p6(X0,X1).\n"
    "p1(X1,X2) :- p7(X2,X1).\n";

inline constexpr std::string_view kDrdgExample =
    "p7(X0,X1) :- p5(X0,X1).\n"
    "p5(X0,X1) :- p0(X0,X1).\n"
    "p5(X0,X1) :- p8(X1,X0).\n";

// Model output that is not well-formed Prolog.
inline constexpr std::string_view kSyntacticSnippet =
    "theory :-\n"
    "    p(X, Y), pos(p0(X, Y)) - positive.\n"
    "    p(X, Y), neg(p0(X, Y)) - negative.\n"
    "    \\+ p(X, Y), pos(p0(X, Y)) - false.\n"
    "    \\+ p(X, Y), neg(p0(X, Y)) - true.\n";

// Well-formed, but invents predicates and leaves the Horn fragment.
inline constexpr std::string_view kLogicalSnippet =
    "theory :-\n"
    "    p(X, Y) :- p1(X, Y); p3(X, Y); \n"
    "    p4(X, Y); p7(X, Y); p8(X, Y); \n"
    "    p0(X, Y),\n"
    "    not neg(p(X, Y)),\n"
    "    (pos(p(X, Y)) - true; fail).\n";

inline constexpr std::string_view kProseResponse =
    "**Theory:**\n"
    "\n"
    "The facts in the knowledge base indicate that the predicate p9(cX, cY) is true for the following pairs of "
    "facts:\n"
    "\n"
    "- c41 and c17\n"
    "- c13 and c52\n"
    "- c54 and c7\n"
    "- c62 and c61\n"
    "- c71 and c75\n"
    "- c24 and c48\n"
    "- c79 and c67\n"
    "- c50 and c46\n"
    "- c70 and c60\n"
    "- c52 and c51\n"
    "- c81 and c71\n"
    "- c2 and c14\n"
    "- c30 and c44\n"
    "- c78 and c72\n"
    "- c81 and c35\n"
    "\n"
    "However, the predicate p9(c55, c48) is false.\n";

/// Small dataset built by hand around the family rules.
inline Dataset family_dataset() {
  Dataset d;
  d.bk = family_bk();
  d.truth.rules = family_rules();
  d.truth.target = {"ancestor", 2};
  d.truth.vocabulary = {{"ancestor", 2}, {"parent", 2}};
  d.train_pos = {ground_atom("ancestor", {"john", "mary"}), ground_atom("ancestor", {"john", "susan"})};
  d.train_neg = {ground_atom("ancestor", {"mary", "john"})};
  d.test_pos = {ground_atom("ancestor", {"john", "robert"})};
  d.test_neg = {ground_atom("ancestor", {"susan", "john"})};
  d.meta.target = d.truth.target;
  d.meta.vocabulary = d.truth.vocabulary;
  return d;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ilpbench-" + std::string(tag) + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace ilpbench::fixtures
