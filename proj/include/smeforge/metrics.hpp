#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/repository.hpp"

namespace smeforge {

// Non-negative fraction kept in lowest terms.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "3/16"; whole numbers render without a denominator.
  std::string to_string() const;
  /// Parses "a/b" or "a". Throws Error{SchemaError}.
  static Rational parse(std::string_view text);

  bool operator==(const Rational&) const = default;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// floor(value * 10^digits) / 10^digits, printed with exactly `digits`
/// decimals: 3/16 -> "0.187".
std::string truncate_decimal(const Rational& value, int digits);

struct CorpusTask {
  std::string name;
  std::vector<std::string> fragments;

  bool operator==(const CorpusTask&) const = default;
};

struct SdmCorpusEntry {
  std::string name;
  std::vector<CorpusTask> tasks;

  std::size_t nt() const noexcept { return tasks.size(); }
  bool operator==(const SdmCorpusEntry&) const = default;
};

struct Corpus {
  std::vector<SdmCorpusEntry> entries;

  std::size_t n() const noexcept { return entries.size(); }
  bool operator==(const Corpus&) const = default;
};

/// Throws Error{ParseError | SchemaError | IntegrityError}.
Corpus load_corpus(std::string_view document);
std::string save_corpus(const Corpus& corpus);

// The fragment set under evaluation. Only so-extension fragments count
// towards SMF; opf-baseline ids are accepted in mappings but never counted.
struct FragmentSet {
  std::set<std::string> members;   // so-extension fragments; SMF = members.size()
  std::set<std::string> baseline;  // opf-baseline ids mappings may cite

  std::size_t smf() const noexcept { return members.size(); }
  bool resolves(const std::string& id) const { return members.count(id) || baseline.count(id); }

  /// so-extension Task fragments as members, every opf-baseline id as baseline.
  static FragmentSet task_fragments(const Repository& repository);
  /// Splits `ids` by origin. Throws Error{UnknownFragment}.
  static FragmentSet from_ids(const Repository& repository, const std::set<std::string>& ids);
};

struct MethodCoverage {
  Rational mc_exact;
  std::string mc_display;
  bool fully_covered = false;

  bool operator==(const MethodCoverage&) const = default;
};

/// MC = NT / SMF. Throws Error{EmptyFragmentSet} when SMF = 0 and
/// Error{UnknownFragment} when a mapping cites an id outside the set.
MethodCoverage method_coverage(const SdmCorpusEntry& entry, const FragmentSet& fragments);

struct SdmCoverage {
  std::string name;
  std::size_t nt = 0;
  std::size_t smf = 0;
  Rational mc_exact;
  std::string mc_display;
  bool fully_covered = false;

  bool operator==(const SdmCoverage&) const = default;
};

struct CoverageReport {
  std::vector<SdmCoverage> per_sdm;
  int dc = 0;          // 1 iff every SDM task maps to at least one fragment
  int dc_literal = 0;  // 1 iff every MC equals exactly 1

  bool operator==(const CoverageReport&) const = default;
};

/// Errors from individual entries are rethrown with the entry name
/// prepended to the subjects.
CoverageReport domain_coverage(const Corpus& corpus, const FragmentSet& fragments);

enum class ReportFormat { Table, Machine };

std::string render_coverage(const CoverageReport& report, ReportFormat format);
CoverageReport parse_coverage_report(std::string_view machine_document);

std::string corpus_report(const Corpus& corpus, const FragmentSet& fragments, ReportFormat format);

}  // namespace smeforge
