#include "zjkit/group_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "zjkit/config.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"

namespace zjkit {
namespace {

using nlohmann::json;

unsigned highest_point(const std::string& text) {
  unsigned best = 0;
  std::uint64_t v = 0;
  bool in_num = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      v = v * 10 + static_cast<unsigned>(c - '0');
      in_num = true;
    } else {
      if (in_num) best = std::max<unsigned>(best, static_cast<unsigned>(std::min<std::uint64_t>(v, 1u << 20)));
      v = 0;
      in_num = false;
    }
  }
  if (in_num) best = std::max<unsigned>(best, static_cast<unsigned>(std::min<std::uint64_t>(v, 1u << 20)));
  return best;
}

GroupPtr from_cayley(const std::string& name, const json& table) {
  if (!table.is_array() || table.empty()) throw ParseError(name + ": \"table\" must be a non-empty array of rows");
  const std::size_t n = table.size();
  require_within_bound(n, "cayley table");
  std::vector<Elem> mul;
  mul.reserve(n * n);
  for (const auto& row : table) {
    if (!row.is_array() || row.size() != n) throw ParseError(name + ": \"table\" must be square");
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ParseError(name + ": table entries must be non-negative integers");
      mul.push_back(v.get<Elem>());
    }
  }
  auto g = std::make_shared<const GroupTable>(name, n, std::move(mul));
  if (!g->verify_associativity()) throw ParseError(name + ": table is not associative");
  return g;
}

}  // namespace

GroupPtr group_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("group document must be a JSON object");
  try {
    const std::string name = doc.value("name", std::string("unnamed"));
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "cayley") return from_cayley(name, doc.at("table"));
    if (kind == "permgens") {
      std::vector<std::string> texts = doc.at("gens").get<std::vector<std::string>>();
      unsigned degree = doc.contains("degree") ? doc.at("degree").get<unsigned>() : 0;
      for (const auto& t : texts) degree = std::max(degree, highest_point(t));
      std::vector<Permutation> gens;
      for (const auto& t : texts) gens.push_back(parse_cycles(t, degree));
      return from_permutations(name, gens);
    }
    if (kind == "construction") {
      json d = doc.at("construction");
      if (doc.contains("name") && !d.contains("name")) d["name"] = name;
      return build(d);
    }
    throw ParseError("unknown group kind \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed group document: ") + e.what());
  }
}

GroupPtr load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
  try {
    return group_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json group_to_cayley_json(const GroupTable& g) {
  json rows = json::array();
  for (Elem a = 0; a < g.order(); ++a) {
    auto r = g.row(a);
    rows.push_back(std::vector<Elem>(r.begin(), r.end()));
  }
  return json{{"name", g.name()}, {"kind", "cayley"}, {"table", std::move(rows)}};
}

}  // namespace zjkit
