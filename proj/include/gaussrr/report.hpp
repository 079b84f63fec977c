#pragma once

// Rendering layer shared by the command-line tool and the test harness:
// stable machine-readable reports (schema_version 1), human-readable text,
// and the corpus verification runner.  Structured output never contains
// wall-clock timings, so equal inputs and seeds give byte-identical bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaussrr/cycles.hpp"
#include "gaussrr/euler.hpp"
#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"

namespace gaussrr {

enum class OutputFormat { Text, Structured };

inline constexpr int kSchemaVersion = 1;

// Raised by the corpus runner for unreadable or unparseable entries; the
// message names the offending line.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string render_gdeg_report(const LaurentPolynomial& f, const GaussDegreeReport& report,
                               const GdegConfig& cfg, OutputFormat format);

std::string render_chi_report(const LaurentPolynomial& f, const ChiReport& chi,
                              const NondegeneracyReport& nondegeneracy, OutputFormat format);

std::string render_cycle_report(const LagrangianCycle& cycle, const CycleChiReport& result,
                                const GdegConfig& cfg, OutputFormat format);

struct CorpusEntryResult {
  int line = 0;            // 1-based line number in the corpus text
  bool is_cycle = false;
  std::string input;       // canonical polynomial / cycle serialization
  IdentityVerdict verdict = IdentityVerdict::NotApplicable;  // polynomial entries
  std::int64_t gdeg = 0;
  std::int64_t chi = 0;
  std::int64_t signed_chi = 0;
  bool agreed = false;
  std::optional<std::int64_t> bkk;
  std::string note;
  double runtime_seconds = 0.0;  // surfaced in text output only
};

struct CorpusRunResult {
  std::vector<CorpusEntryResult> entries;
  bool all_verified = true;      // every applicable entry equal (or agreed, for cycles)
  bool any_disagreement = false; // some entry failed to reach sample agreement
};

// Runs every corpus entry: '#' comments and blank lines are skipped, lines
// starting with '{' are cycle documents, everything else is a Laurent
// polynomial in `dimension` variables put through the two-sided identity
// check.  Throws CorpusError on malformed entries.
CorpusRunResult run_corpus(const std::string& corpus_text, int dimension, const GdegConfig& cfg);

std::string render_corpus_report(const CorpusRunResult& run, int dimension,
                                 const GdegConfig& cfg, OutputFormat format);

}  // namespace gaussrr
