#include "smeforge/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>
#include <set>

#include "json.hpp"
#include "smeforge/error.hpp"

namespace smeforge {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw Error(ErrorCode::SchemaError, "rational must be non-negative with positive denominator");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw Error(ErrorCode::SchemaError, "malformed rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string truncate_decimal(const Rational& value, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const std::int64_t scaled = value.num() * scale / value.den();  // integer division floors for non-negatives
  std::string out = std::to_string(scaled / scale);
  if (digits > 0) {
    std::string frac = std::to_string(scaled % scale);
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return out;
}

// --- corpus file -------------------------------------------------------------

Corpus load_corpus(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed corpus document: ") + e.what());
  }
  Corpus corpus;
  try {
    for (const auto& s : doc.at("sdms")) {
      SdmCorpusEntry entry;
      entry.name = s.at("name").get<std::string>();
      for (const auto& t : s.at("tasks"))
        entry.tasks.push_back({t.at("name").get<std::string>(), t.at("fragments").get<std::vector<std::string>>()});
      corpus.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("corpus: ") + e.what());
  }

  std::set<std::string> names;
  for (const auto& entry : corpus.entries) {
    if (!names.insert(entry.name).second)
      throw Error(ErrorCode::IntegrityError, "duplicate SDM name '" + entry.name + "'", {entry.name});
    if (entry.tasks.empty())
      throw Error(ErrorCode::IntegrityError, "SDM '" + entry.name + "' has no tasks", {entry.name});
    std::set<std::string> task_names;
    for (const auto& t : entry.tasks)
      if (!task_names.insert(t.name).second)
        throw Error(ErrorCode::IntegrityError, "SDM '" + entry.name + "' repeats task '" + t.name + "'",
                    {entry.name, t.name});
  }
  return corpus;
}

std::string save_corpus(const Corpus& corpus) {
  nlohmann::ordered_json sdms = nlohmann::ordered_json::array();
  for (const auto& entry : corpus.entries) {
    nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
    for (const auto& t : entry.tasks) tasks.push_back({{"name", t.name}, {"fragments", t.fragments}});
    sdms.push_back({{"name", entry.name}, {"tasks", std::move(tasks)}});
  }
  nlohmann::ordered_json doc;
  doc["sdms"] = std::move(sdms);
  return doc.dump(2) + "\n";
}

// --- fragment sets -------------------------------------------------------------

FragmentSet FragmentSet::task_fragments(const Repository& repository) {
  FragmentSet set;
  for (const auto& [id, f] : repository.fragments()) {
    if (f.origin == Origin::OpfBaseline)
      set.baseline.insert(id);
    else if (f.kind == FragmentKind::Task)
      set.members.insert(id);
  }
  return set;
}

FragmentSet FragmentSet::from_ids(const Repository& repository, const std::set<std::string>& ids) {
  FragmentSet set;
  for (const auto& id : ids) {
    const auto* f = repository.find(id);
    if (!f) throw Error(ErrorCode::UnknownFragment, "unknown fragment '" + id + "'", {id});
    (f->origin == Origin::SoExtension ? set.members : set.baseline).insert(id);
  }
  for (const auto& [id, f] : repository.fragments())
    if (f.origin == Origin::OpfBaseline) set.baseline.insert(id);
  return set;
}

// --- coverage --------------------------------------------------------------------

MethodCoverage method_coverage(const SdmCorpusEntry& entry, const FragmentSet& fragments) {
  if (fragments.smf() == 0) throw Error(ErrorCode::EmptyFragmentSet, "fragment set has no so-extension fragments");
  if (entry.tasks.empty())
    throw Error(ErrorCode::IntegrityError, "SDM '" + entry.name + "' has no tasks", {entry.name});
  bool fully_covered = true;
  for (const auto& task : entry.tasks) {
    if (task.fragments.empty()) fully_covered = false;
    for (const auto& id : task.fragments)
      if (!fragments.resolves(id))
        throw Error(ErrorCode::UnknownFragment, "task '" + task.name + "' maps unknown fragment '" + id + "'",
                    {task.name, id});
  }
  MethodCoverage mc;
  mc.mc_exact = Rational(static_cast<std::int64_t>(entry.nt()), static_cast<std::int64_t>(fragments.smf()));
  mc.mc_display = truncate_decimal(mc.mc_exact, 3);
  mc.fully_covered = fully_covered;
  return mc;
}

CoverageReport domain_coverage(const Corpus& corpus, const FragmentSet& fragments) {
  CoverageReport report;
  report.dc = 1;
  report.dc_literal = 1;
  for (const auto& entry : corpus.entries) {
    MethodCoverage mc;
    try {
      mc = method_coverage(entry, fragments);
    } catch (const Error& e) {
      std::vector<std::string> subjects{entry.name};
      subjects.insert(subjects.end(), e.subjects().begin(), e.subjects().end());
      throw Error(e.code(), "SDM '" + entry.name + "': " + e.what(), std::move(subjects));
    }
    report.per_sdm.push_back({entry.name, entry.nt(), fragments.smf(), mc.mc_exact, mc.mc_display, mc.fully_covered});
    if (!mc.fully_covered) report.dc = 0;
    if (!(mc.mc_exact == Rational(1, 1))) report.dc_literal = 0;
  }
  return report;
}

std::string render_coverage(const CoverageReport& report, ReportFormat format) {
  if (format == ReportFormat::Machine) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.per_sdm) {
      rows.push_back({{"name", r.name},
                      {"nt", r.nt},
                      {"smf", r.smf},
                      {"mc_exact", r.mc_exact.to_string()},
                      {"mc_display", r.mc_display},
                      {"fully_covered", r.fully_covered}});
    }
    nlohmann::ordered_json doc;
    doc["per_sdm"] = std::move(rows);
    doc["dc"] = report.dc;
    doc["dc_literal"] = report.dc_literal;
    return doc.dump(2) + "\n";
  }

  std::size_t width = 3;
  for (const auto& r : report.per_sdm) width = std::max(width, r.name.size());
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %3s  %3s  %s\n", static_cast<int>(width), "SDM", "NT", "SMF", "MC");
  out += line;
  for (const auto& r : report.per_sdm) {
    std::snprintf(line, sizeof line, "%-*s  %3zu  %3zu  %zu/%zu (%s)\n", static_cast<int>(width), r.name.c_str(), r.nt,
                  r.smf, r.nt, r.smf, r.mc_display.c_str());
    out += line;
  }
  out += "DC = " + std::to_string(report.dc) + "\n";
  out += "DC (all MC = 1) = " + std::to_string(report.dc_literal) + "\n";
  return out;
}

CoverageReport parse_coverage_report(std::string_view machine_document) {
  try {
    const auto doc = nlohmann::json::parse(machine_document);
    CoverageReport report;
    for (const auto& r : doc.at("per_sdm")) {
      report.per_sdm.push_back({r.at("name").get<std::string>(), r.at("nt").get<std::size_t>(),
                                r.at("smf").get<std::size_t>(), Rational::parse(r.at("mc_exact").get<std::string>()),
                                r.at("mc_display").get<std::string>(), r.at("fully_covered").get<bool>()});
    }
    report.dc = doc.at("dc").get<int>();
    report.dc_literal = doc.at("dc_literal").get<int>();
    return report;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("coverage report: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("coverage report: ") + e.what());
  }
}

std::string corpus_report(const Corpus& corpus, const FragmentSet& fragments, ReportFormat format) {
  return render_coverage(domain_coverage(corpus, fragments), format);
}

}  // namespace smeforge
