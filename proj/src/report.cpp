#include "gaussrr/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace gaussrr {

namespace {

using nlohmann::ordered_json;

const char* method_name(ChiMethod method) {
  switch (method) {
    case ChiMethod::Khovanskii:
      return "khovanskii";
    case ChiMethod::Pick:
      return "pick";
    default:
      return "one_dim";
  }
}

const char* nondegeneracy_name(NondegeneracyVerdict verdict) {
  switch (verdict) {
    case NondegeneracyVerdict::Nondegenerate:
      return "nondegenerate";
    case NondegeneracyVerdict::Degenerate:
      return "degenerate";
    default:
      return "inconclusive";
  }
}

const char* verdict_name(IdentityVerdict verdict) {
  switch (verdict) {
    case IdentityVerdict::Equal:
      return "equal";
    case IdentityVerdict::NotEqual:
      return "not_equal";
    default:
      return "not_applicable";
  }
}

ordered_json path_stats_to_json(const PathStats& stats) {
  ordered_json out;
  out["converged"] = stats.converged;
  out["diverged"] = stats.diverged;
  out["failed"] = stats.failed;
  return out;
}

ordered_json complex_vector_to_json(const Eigen::VectorXcd& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

ordered_json nondegeneracy_to_json(const NondegeneracyReport& report) {
  ordered_json out;
  out["verdict"] = nondegeneracy_name(report.verdict);
  ordered_json faces = ordered_json::array();
  for (const LatticeVector& vertex : report.face_vertices) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i < vertex.size(); ++i) row.push_back(vertex(i));
    faces.push_back(std::move(row));
  }
  out["face_vertices"] = std::move(faces);
  out["face_is_full_polytope"] = report.face_is_full_polytope;
  out["witness"] = report.witness ? complex_vector_to_json(*report.witness) : ordered_json();
  out["note"] = report.note;
  return out;
}

std::string format_complex_value(const Complex& value) {
  std::ostringstream out;
  out << std::setprecision(15) << value.real();
  if (value.imag() != 0.0) {
    out << (value.imag() > 0 ? "+" : "") << std::setprecision(15) << value.imag() << "i";
  }
  return out.str();
}

std::string witness_text(const Eigen::VectorXcd& witness) {
  std::string out = "(";
  for (int i = 0; i < witness.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_complex_value(witness(i));
  }
  out += ")";
  return out;
}

std::string sample_line(const SampleRecord& sample) {
  std::ostringstream out;
  out << "  gamma_seed=" << sample.gamma_seed << "  count=" << sample.count
      << "  valid=" << (sample.valid ? "yes" : "no")
      << "  singular=" << (sample.singular_seen ? "yes" : "no") << "  paths="
      << sample.paths.converged << "/" << sample.paths.diverged << "/" << sample.paths.failed;
  return out.str();
}

std::string dump_line(const ordered_json& doc) { return doc.dump() + "\n"; }

}  // namespace

//---------------------------------------------------------------------------
// Single-computation reports.
//---------------------------------------------------------------------------

std::string render_gdeg_report(const LaurentPolynomial& f, const GaussDegreeReport& report,
                               const GdegConfig& cfg, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "gdeg";
    doc["n"] = f.dimension();
    doc["seed"] = cfg.seed;
    doc["samples_required"] = cfg.samples;
    doc["input"] = gaussrr::format(f);
    doc["gdeg"] = report.gdeg;
    doc["agreed"] = report.agreed;
    doc["bkk"] = report.bkk ? ordered_json(*report.bkk) : ordered_json();
    doc["degenerate_newton"] = report.degenerate_newton;
    doc["warning"] = report.warning;
    ordered_json samples = ordered_json::array();
    for (const SampleRecord& sample : report.samples) {
      ordered_json record;
      record["gamma_seed"] = sample.gamma_seed;
      record["count"] = sample.count;
      record["valid"] = sample.valid;
      record["singular_seen"] = sample.singular_seen;
      record["paths"] = path_stats_to_json(sample.paths);
      samples.push_back(std::move(record));
    }
    doc["samples"] = std::move(samples);
    doc["path_stats"] = path_stats_to_json(report.path_stats);
    return dump_line(doc);
  }

  std::ostringstream out;
  out << "input: " << gaussrr::format(f) << "\n";
  out << "n: " << f.dimension() << "   seed: " << cfg.seed << "\n";
  out << "gdeg: " << report.gdeg << "   agreed: " << (report.agreed ? "yes" : "no") << "\n";
  if (report.bkk) out << "bkk bound: " << *report.bkk << "\n";
  if (!report.warning.empty()) out << "warning: " << report.warning << "\n";
  for (const SampleRecord& sample : report.samples) out << sample_line(sample) << "\n";
  return out.str();
}

std::string render_chi_report(const LaurentPolynomial& f, const ChiReport& chi,
                              const NondegeneracyReport& nondegeneracy, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "chi";
    doc["n"] = f.dimension();
    doc["input"] = gaussrr::format(f);
    doc["chi"] = chi.chi;
    doc["method"] = method_name(chi.method);
    doc["nondegeneracy"] = nondegeneracy_to_json(nondegeneracy);
    return dump_line(doc);
  }

  std::ostringstream out;
  out << "input: " << gaussrr::format(f) << "\n";
  out << "n: " << f.dimension() << "\n";
  out << "chi: " << chi.chi << "   method: " << method_name(chi.method) << "\n";
  out << "nondegeneracy: " << nondegeneracy_name(nondegeneracy.verdict);
  if (!nondegeneracy.note.empty()) out << " (" << nondegeneracy.note << ")";
  out << "\n";
  if (nondegeneracy.witness) {
    out << "witness: " << witness_text(*nondegeneracy.witness) << "\n";
  }
  return out.str();
}

std::string render_cycle_report(const LagrangianCycle& cycle, const CycleChiReport& result,
                                const GdegConfig& cfg, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "cycle";
    doc["n"] = cycle.dimension();
    doc["seed"] = cfg.seed;
    doc["cycle"] = serialize_cycle(cycle);
    doc["chi"] = result.chi;
    doc["all_agreed"] = result.all_agreed;
    ordered_json components = ordered_json::array();
    for (const ComponentChiRecord& record : result.components) {
      ordered_json entry;
      entry["mult"] = record.multiplicity;
      entry["gdeg"] = record.gdeg;
      entry["agreed"] = record.agreed;
      entry["exact"] = record.exact;
      components.push_back(std::move(entry));
    }
    doc["components"] = std::move(components);
    return dump_line(doc);
  }

  std::ostringstream out;
  out << "cycle: " << serialize_cycle(cycle) << "\n";
  out << "chi: " << result.chi << "   all_agreed: " << (result.all_agreed ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < result.components.size(); ++i) {
    const ComponentChiRecord& record = result.components[i];
    out << "  component " << i << ": mult=" << record.multiplicity << "  gdeg=" << record.gdeg
        << "  " << (record.exact ? "exact" : (record.agreed ? "agreed" : "DISAGREED")) << "\n";
  }
  return out.str();
}

//---------------------------------------------------------------------------
// Corpus runner.
//---------------------------------------------------------------------------

namespace {

std::string trimmed(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

CorpusEntryResult run_polynomial_entry(const std::string& text, int line, int dimension,
                                       const GdegConfig& cfg) {
  LaurentPolynomial f = parse(text, dimension);
  CorpusEntryResult entry;
  entry.line = line;
  entry.input = gaussrr::format(f);
  const IdentityCheckReport report = verify_chi_identity(f, cfg);
  entry.verdict = report.verdict;
  entry.gdeg = report.gdeg;
  entry.chi = report.chi;
  entry.signed_chi = report.signed_chi;
  entry.agreed = report.gdeg_report.agreed;
  entry.bkk = report.gdeg_report.bkk;
  entry.note = report.note;
  return entry;
}

CorpusEntryResult run_cycle_entry(const std::string& text, int line, const GdegConfig& cfg) {
  const LagrangianCycle cycle = parse_cycle(text);
  CorpusEntryResult entry;
  entry.line = line;
  entry.is_cycle = true;
  entry.input = serialize_cycle(cycle);
  const CycleChiReport result = evaluate_cycle(cycle, cfg);
  entry.chi = result.chi;
  entry.agreed = result.all_agreed;
  if (!result.all_agreed) entry.note = "a component's samples did not agree";
  return entry;
}

}  // namespace

CorpusRunResult run_corpus(const std::string& corpus_text, int dimension, const GdegConfig& cfg) {
  CorpusRunResult run;
  std::istringstream stream(corpus_text);
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::string line = trimmed(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto started = std::chrono::steady_clock::now();
    CorpusEntryResult entry;
    try {
      entry = line.front() == '{' ? run_cycle_entry(line, line_number, cfg)
                                  : run_polynomial_entry(line, line_number, dimension, cfg);
    } catch (const ParseError& error) {
      throw CorpusError("line " + std::to_string(line_number) + ": " + error.what());
    } catch (const CycleParseError& error) {
      throw CorpusError("line " + std::to_string(line_number) + ": " + error.what());
    } catch (const std::invalid_argument& error) {
      throw CorpusError("line " + std::to_string(line_number) + ": " + error.what());
    }
    entry.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (!entry.agreed) {
      run.any_disagreement = true;
      run.all_verified = false;
    } else if (entry.is_cycle) {
      // agreement is the only requirement for a cycle entry
    } else if (entry.verdict == IdentityVerdict::NotEqual) {
      run.all_verified = false;
    }
    run.entries.push_back(std::move(entry));
  }
  return run;
}

std::string render_corpus_report(const CorpusRunResult& run, int dimension,
                                 const GdegConfig& cfg, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["n"] = dimension;
    doc["seed"] = cfg.seed;
    doc["samples_required"] = cfg.samples;
    doc["entry_count"] = run.entries.size();
    doc["all_verified"] = run.all_verified;
    ordered_json entries = ordered_json::array();
    for (const CorpusEntryResult& entry : run.entries) {
      ordered_json record;
      record["line"] = entry.line;
      record["kind"] = entry.is_cycle ? "cycle" : "polynomial";
      record["input"] = entry.input;
      if (entry.is_cycle) {
        record["verdict"] = entry.agreed ? "agreed" : "disagreed";
        record["gdeg"] = ordered_json();
        record["chi"] = entry.chi;
        record["signed_chi"] = ordered_json();
      } else {
        record["verdict"] = verdict_name(entry.verdict);
        record["gdeg"] = entry.gdeg;
        record["chi"] = entry.chi;
        record["signed_chi"] = entry.signed_chi;
      }
      record["agreed"] = entry.agreed;
      record["bkk"] = entry.bkk ? ordered_json(*entry.bkk) : ordered_json();
      record["note"] = entry.note;
      entries.push_back(std::move(record));
    }
    doc["entries"] = std::move(entries);
    return dump_line(doc);
  }

  std::ostringstream out;
  out << std::left << std::setw(5) << "line" << std::setw(6) << "kind" << std::setw(34) << "input"
      << std::setw(6) << "gdeg" << std::setw(6) << "chi" << std::setw(16) << "verdict"
      << std::setw(8) << "agreed" << std::setw(6) << "bkk" << "time(s)" << "\n";
  out << std::string(94, '-') << "\n";
  for (const CorpusEntryResult& entry : run.entries) {
    std::string shown = entry.input;
    if (shown.size() > 32) shown = shown.substr(0, 29) + "...";
    out << std::left << std::setw(5) << entry.line << std::setw(6)
        << (entry.is_cycle ? "cyc" : "poly") << std::setw(34) << shown;
    if (entry.is_cycle) {
      out << std::setw(6) << "-" << std::setw(6) << entry.chi << std::setw(16)
          << (entry.agreed ? "agreed" : "disagreed");
    } else {
      out << std::setw(6) << entry.gdeg << std::setw(6) << entry.chi << std::setw(16)
          << verdict_name(entry.verdict);
    }
    out << std::setw(8) << (entry.agreed ? "yes" : "no") << std::setw(6);
    if (entry.bkk) {
      out << *entry.bkk;
    } else {
      out << "-";
    }
    out << std::fixed << std::setprecision(2) << entry.runtime_seconds << "\n";
    out.unsetf(std::ios::fixed);
    if (!entry.note.empty()) out << "      note: " << entry.note << "\n";
  }
  std::size_t verified = 0;
  std::size_t applicable = 0;
  for (const CorpusEntryResult& entry : run.entries) {
    const bool not_applicable =
        !entry.is_cycle && entry.verdict == IdentityVerdict::NotApplicable && entry.agreed;
    if (not_applicable) continue;
    ++applicable;
    if (entry.agreed && (entry.is_cycle || entry.verdict == IdentityVerdict::Equal)) ++verified;
  }
  out << verified << "/" << applicable << " applicable entries verified";
  if (run.entries.size() != applicable) {
    out << " (" << run.entries.size() - applicable << " not applicable)";
  }
  out << "\n";
  return out.str();
}

}  // namespace gaussrr
