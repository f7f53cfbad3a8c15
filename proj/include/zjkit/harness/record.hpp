#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zjkit::harness {

using ojson = nlohmann::ordered_json;

/// One verification outcome. A record whose hypotheses all hold must have a
/// true conclusion; anything else is an invariant violation.
struct Record {
  std::string group;
  std::size_t order = 0;
  std::uint64_t p = 0;
  std::string d = "-";
  std::string check;
  std::string variant;  // functor, kind or other sub-case; empty when none
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::optional<bool> conclusion;  // nullopt: nothing to conclude (no instances)
  ojson witness;                   // null when there is nothing to show
  std::string toggle;              // probe mode: the hypothesis switched off
  double ms = -1;

  Record& hyp(std::string clause, bool value) {
    hypotheses.emplace_back(std::move(clause), value);
    return *this;
  }
  bool hypotheses_hold() const;
  bool violates() const { return hypotheses_hold() && conclusion == false; }
};

ojson record_to_json(const Record& r, bool timings);
Record record_from_json(const ojson& j);

}  // namespace zjkit::harness
