#include "zjkit/harness/record.hpp"

#include <algorithm>
#include <cmath>

#include "zjkit/error.hpp"

namespace zjkit::harness {

bool Record::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.second; });
}

ojson record_to_json(const Record& r, bool timings) {
  ojson j;
  j["group"] = r.group;
  j["order"] = r.order;
  j["p"] = r.p;
  j["D"] = r.d;
  j["check"] = r.check;
  if (!r.variant.empty()) j["variant"] = r.variant;
  ojson hyp = ojson::object();
  for (const auto& [k, v] : r.hypotheses) hyp[k] = v;
  j["hypotheses"] = hyp;
  j["conclusion"] = r.conclusion ? ojson(*r.conclusion) : ojson(nullptr);
  j["witness"] = r.witness;
  if (!r.toggle.empty()) j["toggle"] = r.toggle;
  if (timings && r.ms >= 0) j["ms"] = std::round(r.ms * 1000.0) / 1000.0;
  return j;
}

Record record_from_json(const ojson& j) {
  try {
    Record r;
    r.group = j.at("group").get<std::string>();
    r.order = j.at("order").get<std::size_t>();
    r.p = j.at("p").get<std::uint64_t>();
    r.d = j.at("D").get<std::string>();
    r.check = j.at("check").get<std::string>();
    r.variant = j.value("variant", "");
    for (const auto& [k, v] : j.at("hypotheses").items()) r.hypotheses.emplace_back(k, v.get<bool>());
    if (!j.at("conclusion").is_null()) r.conclusion = j.at("conclusion").get<bool>();
    r.witness = j.at("witness");
    r.toggle = j.value("toggle", "");
    if (j.contains("ms")) r.ms = j.at("ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
}

}  // namespace zjkit::harness
