#include "zjkit/harness/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "zjkit/config.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/group_io.hpp"
#include "zjkit/numeric.hpp"

namespace zjkit::harness {

using nlohmann::json;

namespace {

json family(const char* name, json fields = json::object()) {
  fields["family"] = name;
  return fields;
}

std::vector<std::uint64_t> primes_for(std::size_t order, const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> out;
  for (auto p : primes)
    if (p % 2 == 1 && is_prime(p) && order % p == 0) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<json> default_descriptors() {
  std::vector<json> out;
  // abelian 3-groups of order at most 81
  for (auto inv : std::vector<std::vector<int>>{{3}, {9}, {3, 3}, {27}, {9, 3}, {3, 3, 3}, {81},
                                                {27, 3}, {9, 9}, {9, 3, 3}, {3, 3, 3, 3}})
    out.push_back(family("abelian", {{"invariants", inv}}));
  const json heis = family("heisenberg", {{"p", 3}});
  const json wreath = family("wreath", {{"p", 3}});
  const json qd3 = family("qd", {{"p", 3}});
  const json z2 = family("cyclic", {{"n", 2}});
  const json z3 = family("cyclic", {{"n", 3}});
  const json s3 = family("symmetric", {{"n", 3}});
  out.push_back(heis);
  out.push_back(family("extraspecial", {{"p", 3}, {"exponent", 9}}));
  out.push_back(wreath);
  out.push_back(family("direct", {{"factors", {heis, z3}}}));
  out.push_back(s3);
  out.push_back(family("alternating", {{"n", 4}}));
  out.push_back(family("symmetric", {{"n", 4}}));
  out.push_back(family("alternating", {{"n", 5}}));
  out.push_back(family("sl2", {{"p", 3}}));
  out.push_back(family("semidirect", {{"normal", family("elementary", {{"p", 3}, {"k", 2}})},
                                      {"acting", z2},
                                      {"action", "invert-generators"}}));
  out.push_back(family("semidirect", {{"normal", heis}, {"acting", z2}, {"action", "invert-generators"}}));
  out.push_back(family("direct", {{"factors", {s3, z3}}}));
  out.push_back(qd3);
  out.push_back(family("direct", {{"factors", {qd3, z2}}}));
  out.push_back(family("direct", {{"factors", {wreath, z3}}}));
  out.push_back(family("direct", {{"factors", {heis, family("cyclic", {{"n", 9}})}}}));
  return out;
}

std::vector<CorpusEntry> build_corpus(const CorpusConfig& config) {
  const std::size_t max_order = config.max_order ? std::min(config.max_order, order_bound()) : order_bound();
  std::vector<CorpusEntry> out;
  for (const json& d : default_descriptors()) {
    const auto order = descriptor_order(d);
    if (order > max_order) continue;
    auto primes = primes_for(order, config.primes);
    if (primes.empty()) continue;
    out.push_back({build(d), std::move(primes), d});
  }
  if (config.ingest_dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(*config.ingest_dir, ec))
      throw IoError("ingest directory not found: " + config.ingest_dir->string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(*config.ingest_dir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      GroupPtr g = load_group_file(f);
      if (g->order() > max_order) continue;
      auto primes = primes_for(g->order(), config.primes);
      if (primes.empty()) continue;
      out.push_back({std::move(g), std::move(primes), json{{"file", f.string()}}});
    }
  }
  return out;
}

json corpus_to_json(const std::vector<CorpusEntry>& corpus) {
  json entries = json::array();
  for (const auto& e : corpus) {
    json group;
    if (e.provenance.contains("family")) {
      group = {{"name", e.group->name()}, {"kind", "construction"}, {"construction", e.provenance}};
    } else {
      group = group_to_cayley_json(*e.group);
    }
    entries.push_back({{"name", e.group->name()},
                       {"order", e.group->order()},
                       {"primes", e.primes},
                       {"provenance", e.provenance},
                       {"group", group}});
  }
  return {{"version", 1}, {"entries", entries}};
}

std::vector<CorpusEntry> corpus_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("entries") || !doc.at("entries").is_array())
    throw ParseError("corpus: missing \"entries\" array");
  std::vector<CorpusEntry> out;
  for (const json& e : doc.at("entries")) {
    try {
      GroupPtr g = group_from_json(e.at("group"));
      if (g->order() != e.at("order").get<std::size_t>())
        throw ParseError("corpus entry " + g->name() + ": order mismatch");
      auto primes = e.at("primes").get<std::vector<std::uint64_t>>();
      for (auto p : primes)
        if (!is_prime(p) || g->order() % p != 0)
          throw ParseError("corpus entry " + g->name() + ": prime does not divide the order");
      out.push_back({std::move(g), std::move(primes), e.value("provenance", json::object())});
    } catch (const json::exception& ex) {
      throw ParseError(std::string("corpus entry: ") + ex.what());
    }
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ParseError(path.string() + ": " + ex.what());
  }
  try {
    return corpus_from_json(doc);
  } catch (const ParseError& ex) {
    throw ParseError(path.string() + ": " + ex.what());
  }
}

}  // namespace zjkit::harness
