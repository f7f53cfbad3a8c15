#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "zjkit/harness/corpus.hpp"

namespace fixtures {

/// The default corpus, built once per test binary.
inline const std::vector<zjkit::harness::CorpusEntry>& corpus() {
  static const std::vector<zjkit::harness::CorpusEntry> c = zjkit::harness::build_corpus({});
  return c;
}

inline zjkit::GroupPtr group(const std::string& name) {
  for (const auto& e : corpus())
    if (e.group->name() == name) return e.group;
  throw std::runtime_error("no corpus group " + name);
}

/// Corpus groups of order <= bound.
inline std::vector<zjkit::GroupPtr> groups_up_to(std::size_t bound) {
  std::vector<zjkit::GroupPtr> out;
  for (const auto& e : corpus())
    if (e.group->order() <= bound) out.push_back(e.group);
  return out;
}

/// Corpus p-groups (any prime) of order <= bound.
inline std::vector<zjkit::GroupPtr> p_groups_up_to(std::size_t bound) {
  std::vector<zjkit::GroupPtr> out;
  for (const auto& e : corpus()) {
    std::size_t n = e.group->order(), p = e.primes.front();
    while (n % p == 0) n /= p;
    if (n == 1 && e.group->order() <= bound) out.push_back(e.group);
  }
  return out;
}

}  // namespace fixtures
