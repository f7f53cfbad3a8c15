#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zjkit/harness/corpus.hpp"
#include "zjkit/harness/record.hpp"
#include "zjkit/harness/verifiers.hpp"

namespace zjkit::harness {

struct CampaignConfig {
  std::vector<std::string> checks = all_check_ids();
  DMode mode = DMode::Full;
  unsigned jobs = 1;
  /// Per (group, prime) JSONL files keyed by table, prime, checks and mode.
  std::optional<std::filesystem::path> cache_dir;
};

/// Parses "A,B,all" style lists into check ids in report order. Returns
/// nullopt on an unknown id.
std::optional<std::vector<std::string>> parse_check_list(std::string_view text);

/// Every check over every (entry, prime) pair. Records come back in pair
/// order, then check order, whatever the job count. Throws IoError for cache
/// problems.
std::vector<Record> run_campaign(const std::vector<CorpusEntry>& corpus, const CampaignConfig& config);

/// Records of the given checks for one pair, with per-record wall time.
/// Errors raised by a check become failing records.
std::vector<Record> run_pair(Analysis& a, const std::vector<std::string>& checks);

enum class Toggle { StrongClosure, Stability, Omega };
std::optional<Toggle> parse_toggle(std::string_view text);
const char* toggle_name(Toggle t);

/// Hypothesis-necessity mode: records with the toggled clause false, tagged
/// with the toggle.
std::vector<Record> run_probe(const std::vector<CorpusEntry>& corpus, Toggle toggle, unsigned jobs);
/// Probe records whose conclusion fails while every other clause holds.
std::size_t count_counterexamples(const std::vector<Record>& records);

/// First line of a report file.
ojson report_header(std::string_view kind, const std::vector<std::string>& checks, DMode mode);
void write_report(std::ostream& out, const ojson& header, const std::vector<Record>& records, bool timings);
/// Writes to a file; throws IoError naming the path.
void write_report_file(const std::filesystem::path& path, const ojson& header, const std::vector<Record>& records,
                       bool timings);

struct Report {
  ojson header;
  std::vector<Record> records;
};
/// Throws IoError when unreadable, ParseError (with the line number) on bad
/// content.
Report read_report(const std::filesystem::path& path);
Report parse_report(std::istream& in, const std::string& label);

struct CheckSummary {
  std::string check;
  std::size_t records = 0;
  std::size_t hypotheses = 0;   // hypotheses satisfied
  std::size_t conclusions = 0;  // conclusion true
  std::size_t vacuous = 0;      // no instances
  std::size_t violations = 0;
};
/// One row per check id present, in report order, plus a final "total" row.
std::vector<CheckSummary> summarize(const std::vector<Record>& records);
std::size_t count_violations(const std::vector<Record>& records);
std::string format_table(const std::vector<CheckSummary>& rows);
ojson summary_json(const std::vector<CheckSummary>& rows);

}  // namespace zjkit::harness
