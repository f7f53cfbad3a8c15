// zjkit command line: corpus, verify, report, probe.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "zjkit/error.hpp"
#include "zjkit/harness/campaign.hpp"
#include "zjkit/harness/corpus.hpp"
#include "zjkit/numeric.hpp"

using namespace zjkit;
using namespace zjkit::harness;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 2 || !zjkit::is_prime(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad prime list: " + text);
    }
  }
  if (out.empty()) throw UsageError("empty prime list");
  return out;
}

void emit(const std::string& out_path, const ojson& header, const std::vector<Record>& records, bool timings) {
  if (out_path.empty() || out_path == "-")
    write_report(std::cout, header, records, timings);
  else
    write_report_file(out_path, header, records, timings);
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zjkit: ZJ-type normal subgroups and fusion control on finite groups"};
  app.require_subcommand(1);

  std::size_t max_order = 0;
  std::string primes_text = "3,5";
  std::string ingest_dir, corpus_out;
  auto* corpus_cmd = app.add_subcommand("corpus", "build a group corpus");
  corpus_cmd->add_option("--max-order", max_order, "largest group order (default: the order bound)");
  corpus_cmd->add_option("--primes", primes_text, "comma separated odd primes");
  corpus_cmd->add_option("--ingest", ingest_dir, "directory of group JSON files to add");
  corpus_cmd->add_option("--out", corpus_out, "output file")->required();

  std::string corpus_in, checks_text = "all", d_mode_text = "full", report_out;
  unsigned jobs = default_jobs();
  bool timings = false;
  std::string cache_dir;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification campaign");
  verify_cmd->add_option("--corpus", corpus_in, "corpus file")->required();
  verify_cmd->add_option("--checks", checks_text, "comma separated check ids or 'all'");
  verify_cmd->add_option("--d-mode", d_mode_text, "full | sylow-only");
  verify_cmd->add_option("--out", report_out, "report file (default: stdout)");
  verify_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--timings", timings, "include per-record wall time");
  verify_cmd->add_option("--cache-dir", cache_dir, "reuse per-group results from this directory");

  std::string report_in, format = "table";
  auto* report_cmd = app.add_subcommand("report", "summarize a report");
  report_cmd->add_option("--in", report_in, "report file")->required();
  report_cmd->add_option("--format", format, "table | json")->check(CLI::IsMember({"table", "json"}));

  std::string toggle_text, probe_corpus, probe_out;
  unsigned probe_jobs = default_jobs();
  auto* probe_cmd = app.add_subcommand("probe", "drop one hypothesis and search for counterexamples");
  probe_cmd->add_option("--toggle", toggle_text, "strong-closure | stability | omega")
      ->required()
      ->check(CLI::IsMember({"strong-closure", "stability", "omega"}));
  probe_cmd->add_option("--corpus", probe_corpus, "corpus file")->required();
  probe_cmd->add_option("--out", probe_out, "report file (default: stdout)");
  probe_cmd->add_option("--jobs", probe_jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*corpus_cmd) {
      CorpusConfig config;
      config.max_order = max_order;
      config.primes = parse_primes(primes_text);
      if (!ingest_dir.empty()) config.ingest_dir = ingest_dir;
      const auto corpus = build_corpus(config);
      std::ofstream out(corpus_out, std::ios::trunc);
      if (!out) throw IoError("cannot write " + corpus_out);
      out << corpus_to_json(corpus).dump(1) << '\n';
      if (!out) throw IoError("cannot write " + corpus_out);
      std::cerr << "corpus: " << corpus.size() << " groups -> " << corpus_out << '\n';
      return 0;
    }

    if (*verify_cmd) {
      CampaignConfig config;
      const auto checks = parse_check_list(checks_text);
      if (!checks) throw UsageError("unknown check in: " + checks_text);
      const auto mode = parse_d_mode(d_mode_text);
      if (!mode) throw UsageError("unknown d-mode: " + d_mode_text);
      config.checks = *checks;
      config.mode = *mode;
      config.jobs = jobs;
      if (!cache_dir.empty()) config.cache_dir = cache_dir;
      const auto corpus = load_corpus(corpus_in);
      const auto records = run_campaign(corpus, config);
      emit(report_out, report_header("verify", config.checks, config.mode), records, timings);
      const std::size_t violations = count_violations(records);
      std::cerr << "verify: " << records.size() << " records, " << violations << " violations\n";
      return violations ? kExitViolation : 0;
    }

    if (*report_cmd) {
      const Report rep = read_report(report_in);
      const auto rows = summarize(rep.records);
      if (format == "json")
        std::cout << ojson{{"summary", summary_json(rows)}}.dump(1) << '\n';
      else
        std::cout << format_table(rows);
      return count_violations(rep.records) ? kExitViolation : 0;
    }

    if (*probe_cmd) {
      const Toggle toggle = *parse_toggle(toggle_text);
      const auto corpus = load_corpus(probe_corpus);
      const auto records = run_probe(corpus, toggle, probe_jobs);
      emit(probe_out, report_header(std::string("probe:") + toggle_name(toggle), {}, DMode::Full), records, false);
      std::cerr << "probe " << toggle_name(toggle) << ": " << records.size() << " records, "
                << count_counterexamples(records) << " counterexamples\n";
      return count_violations(records) ? kExitViolation : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return 0;
}
