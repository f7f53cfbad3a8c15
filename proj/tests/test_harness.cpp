#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/harness/campaign.hpp"
#include "zjkit/harness/corpus.hpp"
#include "zjkit/harness/verifiers.hpp"
#include "zjkit/numeric.hpp"

using namespace zjkit;
using namespace zjkit::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("zjkit_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<CorpusEntry> small_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : fixtures::corpus())
    if (e.group->order() <= 27 && e.group->name() != "Z27") out.push_back(e);
  return out;
}

std::string dump(const std::vector<Record>& records) {
  std::ostringstream s;
  for (const Record& r : records) s << record_to_json(r, false).dump() << '\n';
  return s.str();
}

std::vector<Record> records_for(const std::string& group, std::uint64_t p, const std::string& check) {
  Analysis a(fixtures::group(group), p, DMode::Full);
  return run_check(check, a);
}

Record with_d(const std::vector<Record>& rs, const std::string& d) {
  for (const Record& r : rs)
    if (r.d == d) return r;
  throw std::runtime_error("no record with D = " + d);
}

bool clause(const Record& r, const std::string& name) {
  for (const auto& [k, v] : r.hypotheses)
    if (k == name) return v;
  throw std::runtime_error("no clause " + name);
}

}  // namespace

TEST_CASE("default corpus") {
  const auto& c = fixtures::corpus();
  bool qd_seen = false;
  for (const auto& e : c) {
    for (auto p : e.primes) {
      CHECK(p % 2 == 1);
      CHECK(e.group->order() % p == 0);
    }
    CHECK(e.primes == [&] {
      std::vector<std::uint64_t> ps;
      for (auto p : prime_divisors(e.group->order()))
        if (p == 3 || p == 5) ps.push_back(p);
      return ps;
    }());
    if (e.group->name() == "Qd(3)") {
      qd_seen = true;
      CHECK(e.group->order() == 9 * special_linear_2(3)->order());
    }
  }
  CHECK(qd_seen);
  for (const char* name : {"Heis27", "Extraspecial27e9", "Z3wrZ3", "Sym3", "A4", "Sym4", "A5", "SL(2,3)", "Qd(3)xZ2",
                           "Z3xZ3:Z2", "Heis27:Z2", "Sym3xZ3"})
    CHECK_NOTHROW(fixtures::group(name));
  // every abelian group of order <= 81 with p = 3
  std::size_t abelian3 = 0;
  for (const auto& e : c)
    if (e.provenance.value("family", "") == "abelian" || e.provenance.value("family", "") == "cyclic") ++abelian3;
  CHECK(abelian3 >= 11);

  CorpusConfig small;
  small.max_order = 27;
  for (const auto& e : build_corpus(small)) CHECK(e.group->order() <= 27);
}

TEST_CASE("corpus serialization and ingestion") {
  const fs::path dir = scratch("corpus");
  const auto json = corpus_to_json(small_corpus());
  std::ofstream(dir / "c.json") << json.dump();
  const auto back = load_corpus(dir / "c.json");
  REQUIRE(back.size() == small_corpus().size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].group->name() == small_corpus()[i].group->name());
    CHECK(back[i].primes == small_corpus()[i].primes);
  }

  std::ofstream(dir / "broken.json") << "{\"entries\": [";
  try {
    load_corpus(dir / "broken.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
  CHECK_THROWS_AS(load_corpus(dir / "missing.json"), IoError);

  const fs::path ingest = dir / "ingest";
  fs::create_directories(ingest);
  std::ofstream(ingest / "d9.json") << R"({"name":"D9","kind":"construction","construction":{"family":"dihedral","n":9}})";
  CorpusConfig config;
  config.max_order = 18;
  config.ingest_dir = ingest;
  const auto with_ingest = build_corpus(config);
  CHECK(with_ingest.back().group->name() == "D9");
  CHECK(with_ingest.back().group->order() == 18);

  std::ofstream(ingest / "e_bad.json") << "{\n\"name\": \"x\",\n";
  try {
    build_corpus(config);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("e_bad.json") != std::string::npos);
  }
  config.ingest_dir = dir / "nope";
  CHECK_THROWS_AS(build_corpus(config), IoError);
  fs::remove_all(dir);
}

TEST_CASE("record round trip") {
  Record r;
  r.group = "A4";
  r.order = 12;
  r.p = 3;
  r.d = "P";
  r.check = "B";
  r.variant = "o";
  r.hyp("p-stable", true).hyp("D strongly closed", false);
  r.conclusion = true;
  r.witness = {{"x", 1}};
  r.ms = 1.5;
  const auto j = record_to_json(r, false);
  CHECK_FALSE(j.contains("ms"));
  CHECK(record_to_json(r, true).contains("ms"));
  const Record back = record_from_json(j);
  CHECK(back.group == r.group);
  CHECK(back.hypotheses == r.hypotheses);
  CHECK(back.conclusion == r.conclusion);
  CHECK(back.variant == "o");
  CHECK_FALSE(back.violates());
  CHECK_THROWS_AS(record_from_json(ojson{{"group", "x"}}), ParseError);

  Record bad = r;
  bad.hypotheses = {{"a", true}};
  bad.conclusion = false;
  CHECK(bad.violates());
  bad.conclusion = std::nullopt;
  CHECK_FALSE(bad.violates());
}

TEST_CASE("check list parsing") {
  CHECK(parse_check_list("all")->size() == all_check_ids().size());
  CHECK(*parse_check_list("F,B") == std::vector<std::string>{"B", "F"});
  CHECK_FALSE(parse_check_list("B,nope").has_value());
  CHECK(all_check_ids().size() == 21);
}

TEST_CASE("normality of ZJ subgroups relative to D") {
  const auto inv = records_for("Z3xZ3:Z2", 3, "B");
  const Record& r = with_d(inv, "P");
  CHECK(r.hypotheses_hold());
  CHECK(r.conclusion == true);

  const Record& q = with_d(records_for("Qd(3)", 3, "B"), "P");
  CHECK_FALSE(clause(q, "p-stable"));
  CHECK_FALSE(q.violates());

  for (const Record& h : records_for("Heis27", 3, "B")) {
    CHECK(h.hypotheses_hold());
    CHECK(h.conclusion == true);
  }
}

TEST_CASE("strongly closed sets as D") {
  const auto t32 = records_for("Z3xZ3:Z2", 3, "T3.2");
  CHECK(t32.size() > 3);  // D = P and the scanned strongly closed sets, per kind
  for (const Record& r : t32) CHECK_FALSE(r.violates());

  for (const Record& r : records_for("Heis27", 3, "T3.6"))
    if (r.d == "P") CHECK(r.conclusion == true);
  for (const Record& r : records_for("A4", 3, "T3.6")) CHECK_FALSE(r.violates());
  const auto a5 = records_for("A5", 5, "T3.6");
  REQUIRE_FALSE(a5.empty());
  for (const Record& r : a5) CHECK_FALSE(clause(r, "p-constrained"));
}

TEST_CASE("fusion control and p-nilpotency records") {
  CHECK(with_d(records_for("Heis27", 3, "E"), "P").conclusion == true);
  const Record& a4e = with_d(records_for("A4", 3, "E"), "P");
  CHECK_FALSE(a4e.violates());
  CHECK_FALSE(clause(with_d(records_for("Qd(3)", 3, "E"), "P"), "p-stable"));

  const Record& a4f = with_d(records_for("A4", 3, "F"), "P");
  CHECK(a4f.hypotheses_hold());
  CHECK(a4f.conclusion == true);
  CHECK_FALSE(clause(with_d(records_for("Qd(3)", 3, "F"), "P"), "Qd(p)-free"));
  CHECK(with_d(records_for("Sym3", 3, "F"), "P").conclusion == true);

  const Record& a4h = with_d(records_for("A4", 3, "H"), "P");
  CHECK(a4h.hypotheses_hold());
  CHECK(a4h.conclusion == true);
  const Record& a5h = with_d(records_for("A5", 5, "H"), "P");
  CHECK_FALSE(clause(a5h, "some normalizer p-nilpotent"));
  CHECK_FALSE(a5h.conclusion.value());
  CHECK_FALSE(a5h.violates());
}

TEST_CASE("Omega(D) variants") {
  const Record& heis = with_d(records_for("Heis27", 3, "C"), "P");
  CHECK(clause(heis, "exp(Omega(D)) = p"));
  CHECK(heis.conclusion == true);
  const Record& wr = with_d(records_for("Z3wrZ3", 3, "CorF"), "P");
  CHECK_FALSE(clause(wr, "exp(Omega(D)) = p"));
  CHECK_FALSE(wr.violates());
}

TEST_CASE("scans on small p-groups") {
  const Subgroup w = Subgroup::whole(fixtures::group("Z3wrZ3"));
  const auto a = replacement_scan(w);
  CHECK(a.passed());
  CHECK(a.satisfying > 0);
  const auto s = segment_scan(Subgroup::whole(fixtures::group("Heis27")));
  CHECK(s.passed());
  CHECK(s.satisfying > 0);
  CHECK(rank_scan(w).passed());
}

TEST_CASE("campaign results are independent of the job count") {
  const auto corpus = small_corpus();
  CampaignConfig one;
  one.jobs = 1;
  CampaignConfig two = one;
  two.jobs = 3;
  const auto r1 = run_campaign(corpus, one);
  const auto r2 = run_campaign(corpus, two);
  CHECK(dump(r1) == dump(r2));
  CHECK(count_violations(r1) == 0);

  const auto rows = summarize(r1);
  CHECK(rows.back().check == "total");
  CHECK(rows.back().records == r1.size());
  CHECK(format_table(rows).find("violations") != std::string::npos);
  CHECK(summary_json(rows).size() == rows.size());
}

TEST_CASE("empty corpus gives an empty report") {
  const auto records = run_campaign({}, CampaignConfig{});
  CHECK(records.empty());
  std::ostringstream out;
  write_report(out, report_header("verify", all_check_ids(), DMode::Full), records, false);
  std::istringstream in(out.str());
  const Report rep = parse_report(in, "mem");
  CHECK(rep.records.empty());
  CHECK(rep.header.contains("generated"));
}

TEST_CASE("cache directory") {
  const fs::path dir = scratch("cache");
  std::vector<CorpusEntry> corpus;
  for (const char* name : {"Sym3", "Heis27"})
    for (const auto& e : fixtures::corpus())
      if (e.group->name() == name) corpus.push_back(e);
  CampaignConfig config;
  config.cache_dir = dir / "c";
  const auto first = run_campaign(corpus, config);
  std::size_t files = 0;
  for (const auto& f : fs::directory_iterator(dir / "c")) files += f.path().extension() == ".jsonl";
  CHECK(files == 2);
  const auto second = run_campaign(corpus, config);
  CHECK(dump(first) == dump(second));

  // a corrupted entry is an I/O error
  for (const auto& f : fs::directory_iterator(dir / "c")) {
    std::ofstream(f.path(), std::ios::trunc) << "{not json\n";
    break;
  }
  CHECK_THROWS_AS(run_campaign(corpus, config), IoError);

  // a cache path that is a file
  std::ofstream(dir / "plain") << "x";
  config.cache_dir = dir / "plain";
  CHECK_THROWS_AS(run_campaign(corpus, config), IoError);
  fs::remove_all(dir);
}

TEST_CASE("report files") {
  const fs::path dir = scratch("report");
  std::vector<Record> rs = run_campaign(small_corpus(), [] {
    CampaignConfig c;
    c.checks = {"B", "F"};
    return c;
  }());
  write_report_file(dir / "r.jsonl", report_header("verify", {"B", "F"}, DMode::Full), rs, true);
  const Report back = read_report(dir / "r.jsonl");
  CHECK(back.records.size() == rs.size());
  CHECK(back.header.at("checks").size() == 2);
  std::ofstream(dir / "bad.jsonl") << "{\"zjkit_report\":1}\n{\"group\":1}\n";
  try {
    read_report(dir / "bad.jsonl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.jsonl:2") != std::string::npos);
  }
  CHECK_THROWS_AS(read_report(dir / "none.jsonl"), IoError);
  CHECK_THROWS_AS(write_report_file(dir / "no" / "such" / "r.jsonl", ojson::object(), rs, false), IoError);
  fs::remove_all(dir);
}

TEST_CASE("probes keep only records with the toggled clause off") {
  std::vector<CorpusEntry> corpus;
  for (const auto& e : fixtures::corpus())
    if (e.group->name() == "A4" || e.group->name() == "Heis27" || e.group->name() == "Z3wrZ3") corpus.push_back(e);
  for (Toggle t : {Toggle::StrongClosure, Toggle::Stability, Toggle::Omega}) {
    const auto rs = run_probe(corpus, t, 1);
    for (const Record& r : rs) {
      CHECK(r.toggle == toggle_name(t));
      CHECK_FALSE(r.hypotheses_hold());
    }
    if (t != Toggle::Stability) CHECK_FALSE(rs.empty());
  }
  CHECK(parse_toggle("omega") == Toggle::Omega);
  CHECK_FALSE(parse_toggle("x").has_value());
}
