#include "ilpbench/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include "ilpbench/reader.hpp"
#include "json_codec.hpp"

namespace ilpbench {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace detail {

ordered_json meta_json(const DatasetMeta& m) {
  ordered_json j;
  j["category"] = std::string(category_name(m.category));
  j["noise"] = m.noise;
  j["missing"] = m.missing;
  j["owa"] = m.owa;
  j["seed"] = m.seed;
  j["target"] = m.target.to_string();
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : m.counts) counts[k] = v;
  j["counts"] = counts;
  j["generator_version"] = m.generator_version;
  ordered_json vocab = ordered_json::array();
  for (const Predicate& p : m.vocabulary) vocab.push_back(p.to_string());
  j["vocabulary"] = vocab;
  j["size"] = {{"min_facts", m.size.min_facts}, {"max_facts", m.size.max_facts}, {"support", m.size.support}};
  j["train_fraction"] = m.train_fraction;
  return j;
}

DatasetMeta meta_from(const json& j) {
  DatasetMeta m;
  m.category = parse_category(j.at("category").get<std::string>());
  m.noise = j.at("noise").get<double>();
  m.missing = j.at("missing").get<double>();
  m.owa = j.at("owa").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.target = parse_predicate(j.at("target").get<std::string>());
  const json counts = j.value("counts", json::object());
  for (const auto& [k, v] : counts.items()) m.counts[k] = v.get<std::size_t>();
  m.generator_version = j.value("generator_version", std::string());
  for (const auto& p : j.value("vocabulary", json::array())) m.vocabulary.push_back(parse_predicate(p.get<std::string>()));
  if (j.contains("size")) {
    const json& s = j.at("size");
    m.size = {s.at("min_facts").get<std::size_t>(), s.at("max_facts").get<std::size_t>(),
              s.at("support").get<std::size_t>()};
  }
  m.train_fraction = j.value("train_fraction", 0.7);
  return m;
}

}  // namespace detail

std::string meta_to_json(const DatasetMeta& meta) { return detail::meta_json(meta).dump(2) + "\n"; }

DatasetMeta meta_from_json(std::string_view text) {
  try {
    return detail::meta_from(json::parse(text));
  } catch (const json::exception& e) {
    throw DatasetFormatError(std::string("meta.json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DatasetFormatError(std::string("meta.json: ") + e.what());
  }
}

void write_dataset(const fs::path& dir, const Dataset& d) {
  fs::create_directories(dir / "train");
  fs::create_directories(dir / "test");
  write_text_file(dir / "bk.pl", render_facts(d.bk.atoms()));
  std::string rules = render_program(d.truth.rules);
  if (!rules.empty()) rules += "\n";
  write_text_file(dir / "rules.pl", rules);
  write_text_file(dir / "train" / "pos.pl", render_facts(d.train_pos));
  write_text_file(dir / "train" / "neg.pl", render_facts(d.train_neg));
  write_text_file(dir / "test" / "pos.pl", render_facts(d.test_pos));
  write_text_file(dir / "test" / "neg.pl", render_facts(d.test_neg));
  write_text_file(dir / "meta.json", meta_to_json(d.meta));
}

namespace {

std::vector<Atom> read_atoms(const fs::path& path) {
  if (!fs::exists(path)) throw DatasetFormatError("missing dataset file " + path.string());
  try {
    return parse_atom_list(read_text_file(path));
  } catch (const std::exception& e) {
    throw DatasetFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

Dataset read_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DatasetFormatError("not a dataset directory: " + dir.string());
  Dataset d;
  for (const Atom& a : read_atoms(dir / "bk.pl")) d.bk.insert(a);
  d.train_pos = read_atoms(dir / "train" / "pos.pl");
  d.train_neg = read_atoms(dir / "train" / "neg.pl");
  d.test_pos = read_atoms(dir / "test" / "pos.pl");
  d.test_neg = read_atoms(dir / "test" / "neg.pl");
  const fs::path meta = dir / "meta.json";
  if (!fs::exists(meta)) throw DatasetFormatError("missing dataset file " + meta.string());
  d.meta = meta_from_json(read_text_file(meta));
  const fs::path rules = dir / "rules.pl";
  if (fs::exists(rules)) {
    try {
      d.truth.rules = parse_program(read_text_file(rules));
    } catch (const std::exception& e) {
      throw DatasetFormatError(rules.string() + ": " + e.what());
    }
  }
  d.truth.target = d.meta.target;
  d.truth.vocabulary = d.meta.vocabulary;
  return d;
}

}  // namespace ilpbench
