#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilpbench/logic.hpp"

namespace ilpbench {

/// Expressivity classes of the target rule set.
enum class Category { kChain, kChainRec, kRdg, kRdgRec, kDrdg, kDrdgRec, kMixed };

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::kChain, Category::kChainRec, Category::kRdg,  Category::kRdgRec,
    Category::kDrdg,  Category::kDrdgRec,  Category::kMixed};

/// Upper-case label, e.g. "CHAIN_REC".
std::string_view category_name(Category category);
/// Lower-case label used for directory names and CLI flags, e.g. "chain_rec".
std::string_view category_slug(Category category);
/// Accepts either form, case-insensitive, with '-' or '_'. Throws std::invalid_argument.
Category parse_category(std::string_view text);
bool requires_recursion(Category category);

struct SizeBounds {
  std::size_t min_facts = 50;
  std::size_t max_facts = 100;
  std::size_t support = 3;

  static SizeBounds xs() { return {50, 100, 3}; }
  friend bool operator==(const SizeBounds&, const SizeBounds&) = default;
};

/// Only "xs" is defined. Throws std::invalid_argument otherwise.
SizeBounds parse_size_preset(std::string_view name);

struct GenSpec {
  Category category = Category::kChain;
  double noise = 0.0;
  double missing = 0.0;
  double owa = 0.0;
  SizeBounds size = SizeBounds::xs();
  std::size_t mindags = 1;
  std::size_t maxdags = 1;
  std::uint64_t seed = 0;
  std::size_t min_predicates = 6;
  std::size_t max_predicates = 12;
  std::size_t max_body_atoms = 2;
  std::size_t constant_pool = 80;
  double train_fraction = 0.7;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundTruth {
  Program rules;
  Predicate target;
  /// Every predicate of the dataset vocabulary, including ones unused by the rules.
  std::vector<Predicate> vocabulary;
};

struct CategoryReport {
  bool ok = false;
  std::vector<std::string> violations;

  explicit operator bool() const noexcept { return ok; }
};

/// Structural validator for the category constraints. Recursive clauses are
/// exempt from the parent and alternative-rule limits.
CategoryReport check_category(const Program& rules, Category category);

/// Root predicates: heads that occur in no other predicate's rule body.
std::vector<Predicate> rule_roots(const Program& rules);

GroundTruth gen_ruleset(Category category, std::uint64_t seed, const GenSpec& shape);

struct GeneratedFacts {
  FactSet support;
  FactSet consequences;
};

/// least_model(support, rules) minus support.
FactSet consequences_of(const FactSet& support, const Program& rules);

/// Samples support facts by grounding derivations of the root until the
/// size bounds are met. Deterministic in `seed`.
GeneratedFacts gen_facts(const GroundTruth& truth, const GenSpec& spec, std::uint64_t seed);

/// ceil(rate * n), tolerant to floating-point representation error.
std::size_t corruption_count(double rate, std::size_t n);

/// Removes ceil(rate/2 * n) facts and adds as many irrelevant ones drawn from
/// the vocabulary and the constants already present.
FactSet apply_noise(const FactSet& facts, double rate, std::uint64_t seed, const GroundTruth& truth);

/// Drops ceil(rate * n) facts.
FactSet apply_missing(const FactSet& consequences, double rate, std::uint64_t seed);

struct OwaSplit {
  std::vector<Atom> kept;
  std::vector<Atom> withheld;
};

/// Withholds ceil(rate * n) target consequences.
OwaSplit apply_owa(const std::vector<Atom>& target_consequences, double rate, std::uint64_t seed);

inline constexpr std::string_view kGeneratorVersion = "ilpbench-synth/1";

struct DatasetMeta {
  Category category = Category::kChain;
  double noise = 0.0;
  double missing = 0.0;
  double owa = 0.0;
  std::uint64_t seed = 0;
  Predicate target;
  std::map<std::string, std::size_t> counts;
  std::string generator_version{kGeneratorVersion};
  std::vector<Predicate> vocabulary;
  SizeBounds size;
  double train_fraction = 0.7;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

struct Dataset {
  FactSet bk;
  std::vector<Atom> train_pos;
  std::vector<Atom> train_neg;
  std::vector<Atom> test_pos;
  std::vector<Atom> test_neg;
  GroundTruth truth;
  DatasetMeta meta;
};

/// gen_ruleset -> gen_facts -> apply_owa -> apply_missing -> apply_noise,
/// then negative sampling and a stratified split. Pure function of `spec`.
Dataset gen_dataset(const GenSpec& spec);

struct PlanEntry {
  std::string name;
  GenSpec spec;
};

/// One dataset per (category, level, sample); noise, missing and owa all
/// take the level's value.
std::vector<PlanEntry> experiment_plan(std::span<const Category> categories,
                                       std::span<const double> levels, std::size_t samples,
                                       std::uint64_t seed_base, const GenSpec& base = {});

inline constexpr std::array<double, 3> kDefaultLevels = {0.1, 0.2, 0.3};
inline constexpr std::size_t kDefaultSamples = 5;

/// All categories x {0.1, 0.2, 0.3} x 5 samples at XS size.
std::vector<PlanEntry> default_plan(std::uint64_t seed_base);

}  // namespace ilpbench
