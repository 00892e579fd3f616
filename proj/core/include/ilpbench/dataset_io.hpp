#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ilpbench/synth.hpp"

namespace ilpbench {

class DatasetFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes bk.pl, rules.pl, train/{pos,neg}.pl, test/{pos,neg}.pl and
/// meta.json under `dir`, creating it when needed.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

/// Throws DatasetFormatError on a missing file or malformed content.
Dataset read_dataset(const std::filesystem::path& dir);

std::string meta_to_json(const DatasetMeta& meta);
DatasetMeta meta_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ilpbench
