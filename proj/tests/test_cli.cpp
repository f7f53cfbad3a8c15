#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "zjkit_cli_test";

int run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string("\"") + ZJKIT_CLI + "\" " + args + " >" + out + " 2>" + (kDir / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string body(const std::string& report) { return report.substr(report.find('\n') + 1); }

struct Dir {
  Dir() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
  }
  ~Dir() { fs::remove_all(kDir); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  Dir d;
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify") == 2);
  CHECK(run("corpus --out " + (kDir / "c.json").string() + " --primes 2") == 2);
  CHECK(run("corpus --out " + (kDir / "c.json").string() + " --max-order 12") == 0);
  CHECK(run("verify --corpus " + (kDir / "c.json").string() + " --checks Z") == 2);
  CHECK(run("verify --corpus " + (kDir / "c.json").string() + " --d-mode half") == 2);
  CHECK(run("report --in x --format xml") == 2);
  CHECK(run("probe --toggle nothing --corpus x") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("I/O and parse errors exit with 3") {
  Dir d;
  CHECK(run("verify --corpus " + (kDir / "none.json").string()) == 3);
  std::ofstream(kDir / "bad.json") << "[";
  CHECK(run("verify --corpus " + (kDir / "bad.json").string()) == 3);
  CHECK(slurp(kDir / "err.txt").find("bad.json") != std::string::npos);
  CHECK(run("report --in " + (kDir / "none.jsonl").string()) == 3);
  CHECK(run("corpus --max-order 12 --out " + (kDir / "no" / "c.json").string()) == 3);
  CHECK(run("corpus --ingest " + (kDir / "nodir").string() + " --out " + (kDir / "c.json").string()) == 3);
}

TEST_CASE("empty corpus gives a header-only report and exit 0") {
  Dir d;
  std::ofstream(kDir / "empty.json") << R"({"entries": []})";
  CHECK(run("verify --corpus " + (kDir / "empty.json").string(), (kDir / "r.jsonl").string()) == 0);
  const std::string report = slurp(kDir / "r.jsonl");
  CHECK(report.find("zjkit_report") != std::string::npos);
  CHECK(body(report).empty());
  CHECK(run("report --in " + (kDir / "r.jsonl").string()) == 0);
}

TEST_CASE("corrupted cache directory is an I/O error") {
  Dir d;
  const std::string corpus = (kDir / "c.json").string();
  REQUIRE(run("corpus --max-order 6 --out " + corpus) == 0);
  const fs::path cache = kDir / "cache";
  CHECK(run("verify --corpus " + corpus + " --checks B --cache-dir " + cache.string()) == 0);
  for (const auto& f : fs::directory_iterator(cache)) std::ofstream(f.path(), std::ios::trunc) << "{\"group\":";
  CHECK(run("verify --corpus " + corpus + " --checks B --cache-dir " + cache.string()) == 3);
  CHECK(slurp(kDir / "err.txt").find(cache.string()) != std::string::npos);
}

TEST_CASE("verify, report and probe on a small corpus") {
  Dir d;
  const std::string corpus = (kDir / "c.json").string();
  REQUIRE(run("corpus --max-order 27 --out " + corpus) == 0);
  const std::string r1 = (kDir / "r1.jsonl").string(), r2 = (kDir / "r2.jsonl").string();
  CHECK(run("verify --corpus " + corpus + " --checks B,E,F,H,C --out " + r1) == 0);
  CHECK(run("verify --corpus " + corpus + " --checks B,E,F,H,C --jobs 2 --out " + r2) == 0);
  CHECK(body(slurp(r1)) == body(slurp(r2)));
  CHECK(body(slurp(r1)).find("\"ms\"") == std::string::npos);
  CHECK(run("verify --corpus " + corpus + " --checks B --timings", (kDir / "t.jsonl").string()) == 0);
  CHECK(slurp(kDir / "t.jsonl").find("\"ms\"") != std::string::npos);

  CHECK(run("report --in " + r1, (kDir / "table.txt").string()) == 0);
  CHECK(slurp(kDir / "table.txt").find("total") != std::string::npos);
  CHECK(run("report --in " + r1 + " --format json", (kDir / "s.json").string()) == 0);
  CHECK(slurp(kDir / "s.json").find("\"summary\"") != std::string::npos);

  for (const char* t : {"strong-closure", "stability", "omega"})
    CHECK(run(std::string("probe --toggle ") + t + " --corpus " + corpus + " --out " + (kDir / "p.jsonl").string()) == 0);
}

TEST_CASE("a violating report exits with 1") {
  Dir d;
  std::ofstream(kDir / "v.jsonl")
      << R"({"zjkit_report":1})" << '\n'
      << R"({"group":"G","order":3,"p":3,"D":"P","check":"B","hypotheses":{"h":true},"conclusion":false,"witness":null})"
      << '\n';
  CHECK(run("report --in " + (kDir / "v.jsonl").string()) == 1);
}
