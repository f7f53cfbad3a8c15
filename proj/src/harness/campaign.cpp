#include "zjkit/harness/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "zjkit/error.hpp"
#include "zjkit/subgroup.hpp"
#include "zjkit/thompson.hpp"

namespace zjkit::harness {

namespace fs = std::filesystem;

namespace {

struct Pair {
  const CorpusEntry* entry;
  std::uint64_t p;
};

std::vector<Pair> pairs_of(const std::vector<CorpusEntry>& corpus) {
  std::vector<Pair> out;
  for (const CorpusEntry& e : corpus)
    for (std::uint64_t p : e.primes) out.push_back({&e, p});
  return out;
}

// Runs fn on every pair with up to `jobs` threads; results keep pair order.
// The first exception (in pair order) is rethrown.
std::vector<Record> for_pairs(const std::vector<Pair>& pairs, unsigned jobs,
                              const std::function<std::vector<Record>(const Pair&)>& fn) {
  std::vector<std::vector<Record>> results(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < pairs.size();) {
      try {
        results[i] = fn(pairs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::vector<Record> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (Record& r : results[i]) out.push_back(std::move(r));
  }
  return out;
}

// FNV-1a over the table, prime, checks and mode.
struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* data, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) h = (h ^ c[i]) * 1099511628211ull;
  }
  template <class T>
  void value(const T& v) {
    bytes(&v, sizeof v);
  }
  void text(std::string_view s) {
    value(s.size());
    bytes(s.data(), s.size());
  }
};

std::string cache_key(const GroupTable& t, std::uint64_t p, const std::vector<std::string>& checks, DMode mode) {
  Fnv f;
  f.text("zjkit-cache-v1");
  f.text(t.name());
  f.value(t.order());
  for (Elem a = 0; a < t.order(); ++a) {
    const auto row = t.row(a);
    f.bytes(row.data(), row.size_bytes());
  }
  f.value(p);
  for (const auto& c : checks) f.text(c);
  f.text(d_mode_name(mode));
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << f.h;
  return s.str();
}

std::optional<std::vector<Record>> load_cached(const fs::path& file) {
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  if (!fs::is_regular_file(file, ec)) throw IoError("corrupted cache entry (not a file): " + file.string());
  std::ifstream in(file);
  if (!in) throw IoError("cannot read cache file: " + file.string());
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  bool complete = false;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      const ojson j = ojson::parse(line);
      if (j.contains("zjkit_cache_end")) {
        complete = true;
        break;
      }
      out.push_back(record_from_json(j));
    } catch (const std::exception& e) {
      throw IoError("corrupted cache file " + file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!complete) throw IoError("corrupted cache file " + file.string() + ": truncated");
  return out;
}

void store_cached(const fs::path& file, const std::vector<Record>& records) {
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write cache file: " + tmp.string());
    for (const Record& r : records) out << record_to_json(r, true).dump() << '\n';
    out << ojson{{"zjkit_cache_end", records.size()}}.dump() << '\n';
    if (!out) throw IoError("cannot write cache file: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) throw IoError("cannot write cache file: " + file.string() + ": " + ec.message());
}

void prepare_cache_dir(const fs::path& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw IoError("cache dir is not a directory: " + dir.string());
    return;
  }
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache dir " + dir.string() + ": " + ec.message());
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool clause(const Record& r, std::string_view name, bool fallback) {
  for (const auto& [k, v] : r.hypotheses)
    if (k == name) return v;
  return fallback;
}

std::vector<Record> keep_toggled(std::vector<Record> records, std::string_view clause_name, Toggle t) {
  std::vector<Record> out;
  for (Record& r : records) {
    if (clause(r, clause_name, true)) continue;
    r.toggle = toggle_name(t);
    out.push_back(std::move(r));
  }
  return out;
}

// B and C without the Omega step or the exponent clause.
std::vector<Record> omega_probe(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("B", a.describe(d.mask()));
    r.variant = "Z(J_r), Z(J_e)";
    r.hyp("p-stable", a.p_stable())
        .hyp("C(O_p) <= O_p", a.self_centralizing())
        .hyp("D strongly closed", a.strongly_closed(d.mask()))
        .hyp("omega", false);
    const Subgroup zr = center(thompson_subgroup(d, AbelianKind::Rank));
    const Subgroup ze = center(thompson_subgroup(d, AbelianKind::Elementary));
    const bool nr = is_normal_in(zr, a.g()), ne = is_normal_in(ze, a.g());
    r.conclusion = nr && ne;
    r.witness = {{"Z(J_r) normal", nr}, {"Z(J_e) normal", ne}};
    r.toggle = toggle_name(Toggle::Omega);
    out.push_back(std::move(r));
  }
  for (Record& r : keep_toggled(run_pair(a, {"C"}), "exp(Omega(D)) = p", Toggle::Omega)) out.push_back(std::move(r));
  return out;
}

std::vector<Subgroup> non_closed_subgroups(Analysis& a) {
  std::vector<Subgroup> out;
  if (a.sylow().size() > kSubgroupSylowMax) return out;
  for (const Subgroup& s : *a.ctx().p_subgroups())
    if (!s.is_trivial() && !a.strongly_closed(s.mask())) out.push_back(s);
  return out;
}

}  // namespace

std::optional<std::vector<std::string>> parse_check_list(std::string_view text) {
  std::vector<bool> wanted(all_check_ids().size(), false);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    if (item == "all") {
      std::fill(wanted.begin(), wanted.end(), true);
    } else {
      const auto& ids = all_check_ids();
      const auto it = std::find(ids.begin(), ids.end(), item);
      if (it == ids.end()) return std::nullopt;
      wanted[it - ids.begin()] = true;
    }
    start = end + 1;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < wanted.size(); ++i)
    if (wanted[i]) out.push_back(all_check_ids()[i]);
  return out;
}

std::vector<Record> run_pair(Analysis& a, const std::vector<std::string>& checks) {
  using clock = std::chrono::steady_clock;
  std::vector<Record> out;
  for (const std::string& id : checks) {
    const auto start = clock::now();
    std::vector<Record> recs;
    try {
      recs = run_check(id, a);
    } catch (const Error& e) {
      Record r = a.record(id);
      r.conclusion = false;
      r.witness = {{"error", e.what()}};
      recs = {r};
    }
    const double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    for (Record& r : recs) {
      r.ms = recs.empty() ? 0 : ms / static_cast<double>(recs.size());
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Record> run_campaign(const std::vector<CorpusEntry>& corpus, const CampaignConfig& config) {
  if (config.cache_dir) prepare_cache_dir(*config.cache_dir);
  return for_pairs(pairs_of(corpus), config.jobs, [&](const Pair& pr) {
    std::optional<fs::path> file;
    if (config.cache_dir) {
      file = *config.cache_dir / (cache_key(*pr.entry->group, pr.p, config.checks, config.mode) + ".jsonl");
      if (auto cached = load_cached(*file)) return std::move(*cached);
    }
    Analysis a(pr.entry->group, pr.p, config.mode);
    std::vector<Record> recs = run_pair(a, config.checks);
    if (file) store_cached(*file, recs);
    return recs;
  });
}

std::optional<Toggle> parse_toggle(std::string_view text) {
  if (text == "strong-closure") return Toggle::StrongClosure;
  if (text == "stability") return Toggle::Stability;
  if (text == "omega") return Toggle::Omega;
  return std::nullopt;
}

const char* toggle_name(Toggle t) {
  switch (t) {
    case Toggle::StrongClosure: return "strong-closure";
    case Toggle::Stability: return "stability";
    case Toggle::Omega: return "omega";
  }
  return "?";
}

std::vector<Record> run_probe(const std::vector<CorpusEntry>& corpus, Toggle toggle, unsigned jobs) {
  return for_pairs(pairs_of(corpus), jobs, [&](const Pair& pr) {
    Analysis a(pr.entry->group, pr.p, DMode::Full);
    switch (toggle) {
      case Toggle::StrongClosure:
        a.override_d_subgroups(non_closed_subgroups(a));
        return keep_toggled(run_pair(a, {"B", "E", "F", "H"}), "D strongly closed", toggle);
      case Toggle::Stability:
        return keep_toggled(run_pair(a, {"opg", "T3.2", "B", "C", "E"}), "p-stable", toggle);
      case Toggle::Omega:
        return omega_probe(a);
    }
    return std::vector<Record>{};
  });
}

std::size_t count_counterexamples(const std::vector<Record>& records) {
  return std::count_if(records.begin(), records.end(), [](const Record& r) {
    const auto off = std::count_if(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return !h.second; });
    return r.conclusion == false && off == 1;
  });
}

ojson report_header(std::string_view kind, const std::vector<std::string>& checks, DMode mode) {
  return {{"zjkit_report", 1}, {"kind", kind}, {"generated", timestamp()}, {"checks", checks},
          {"d_mode", d_mode_name(mode)}};
}

void write_report(std::ostream& out, const ojson& header, const std::vector<Record>& records, bool timings) {
  out << header.dump() << '\n';
  for (const Record& r : records) out << record_to_json(r, timings).dump() << '\n';
}

void write_report_file(const fs::path& path, const ojson& header, const std::vector<Record>& records, bool timings) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_report(out, header, records, timings);
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

Report parse_report(std::istream& in, const std::string& label) {
  Report rep;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const ojson::exception& e) {
      throw ParseError(label + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (j.is_object() && j.contains("zjkit_report")) {
      rep.header = std::move(j);
      continue;
    }
    try {
      rep.records.push_back(record_from_json(j));
    } catch (const ParseError& e) {
      throw ParseError(label + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rep;
}

Report read_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_report(in, path.string());
}

std::vector<CheckSummary> summarize(const std::vector<Record>& records) {
  std::vector<CheckSummary> rows;
  CheckSummary total{"total"};
  auto row_for = [&](const std::string& id) -> CheckSummary& {
    for (auto& r : rows)
      if (r.check == id) return r;
    rows.push_back({id});
    return rows.back();
  };
  for (const Record& r : records) {
    for (CheckSummary* s : {&row_for(r.check), &total}) {
      ++s->records;
      s->hypotheses += r.hypotheses_hold();
      s->conclusions += r.conclusion == true;
      s->vacuous += !r.conclusion.has_value();
      s->violations += r.violates();
    }
  }
  const auto& ids = all_check_ids();
  auto rank = [&](const std::string& id) { return std::find(ids.begin(), ids.end(), id) - ids.begin(); };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return rank(a.check) < rank(b.check); });
  rows.push_back(total);
  return rows;
}

std::size_t count_violations(const std::vector<Record>& records) {
  return std::count_if(records.begin(), records.end(), [](const Record& r) { return r.violates(); });
}

std::string format_table(const std::vector<CheckSummary>& rows) {
  std::ostringstream s;
  auto line = [&](const std::string& c, auto a, auto b, auto d, auto e, auto f) {
    s << std::left << std::setw(11) << c << std::right << std::setw(9) << a << std::setw(12) << b << std::setw(12)
      << d << std::setw(9) << e << std::setw(12) << f << '\n';
  };
  line("check", "records", "hypotheses", "conclusion", "vacuous", "violations");
  for (const auto& r : rows) line(r.check, r.records, r.hypotheses, r.conclusions, r.vacuous, r.violations);
  return s.str();
}

ojson summary_json(const std::vector<CheckSummary>& rows) {
  ojson out = ojson::array();
  for (const auto& r : rows)
    out.push_back({{"check", r.check},
                   {"records", r.records},
                   {"hypotheses_satisfied", r.hypotheses},
                   {"conclusion_true", r.conclusions},
                   {"vacuous", r.vacuous},
                   {"violations", r.violations}});
  return out;
}

}  // namespace zjkit::harness
