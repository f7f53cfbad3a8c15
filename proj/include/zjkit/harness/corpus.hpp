#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zjkit/group_table.hpp"

namespace zjkit::harness {

struct CorpusConfig {
  std::size_t max_order = 0;  // 0: the order bound
  std::vector<std::uint64_t> primes{3, 5};
  std::optional<std::filesystem::path> ingest_dir;
};

struct CorpusEntry {
  GroupPtr group;
  std::vector<std::uint64_t> primes;  // configured odd primes dividing the order
  nlohmann::json provenance;          // construction descriptor or {"file": path}
};

/// Descriptors of the built-in groups, in corpus order.
std::vector<nlohmann::json> default_descriptors();

/// Built-in groups plus every *.json group file of the ingest directory
/// (sorted by file name), restricted to max_order and to groups whose order
/// is divisible by a configured prime. Throws ParseError naming the file.
std::vector<CorpusEntry> build_corpus(const CorpusConfig& config);

/// {"version": 1, "entries": [{"name", "order", "primes", "provenance",
/// "group"}]}; constructed groups are stored by descriptor, ingested ones as
/// Cayley tables.
nlohmann::json corpus_to_json(const std::vector<CorpusEntry>& corpus);
std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& doc);

/// Throws IoError when the file cannot be read and ParseError on bad content.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);

}  // namespace zjkit::harness
