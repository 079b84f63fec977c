// Tests for the rendering layer and the corpus runner: schema stability,
// byte-identical structured output, and corpus error reporting.

#include <string>

#include "doctest.h"
#include "gaussrr/cycles.hpp"
#include "gaussrr/euler.hpp"
#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"
#include "gaussrr/report.hpp"
#include "json.hpp"

using namespace gaussrr;

namespace {

GdegConfig default_config() { return GdegConfig{}; }

}  // namespace

TEST_CASE("structured gdeg report carries the schema fields") {
  const GdegConfig cfg = default_config();
  const LaurentPolynomial f = parse("1 + x + y", 2);
  const GaussDegreeReport report = gaussian_degree_hypersurface(f, cfg);
  const std::string bytes = render_gdeg_report(f, report, cfg, OutputFormat::Structured);
  REQUIRE(bytes.back() == '\n');
  const nlohmann::json doc = nlohmann::json::parse(bytes);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("command") == "gdeg");
  CHECK(doc.at("n") == 2);
  CHECK(doc.at("seed") == 42);
  CHECK(doc.at("input") == "1 + x + y");
  CHECK(doc.at("gdeg") == 1);
  CHECK(doc.at("agreed") == true);
  CHECK(doc.at("bkk") == 1);
  CHECK(doc.at("samples").is_array());
  CHECK(doc.at("samples").size() >= 3);
  for (const auto& sample : doc.at("samples")) {
    CHECK(sample.contains("gamma_seed"));
    CHECK(sample.contains("count"));
    CHECK(sample.contains("valid"));
  }
}

TEST_CASE("structured output is byte-identical across repeated runs") {
  const GdegConfig cfg = default_config();
  const LaurentPolynomial f = parse("1 + x + y + 3*x*y", 2);
  const std::string a = render_gdeg_report(f, gaussian_degree_hypersurface(f, cfg), cfg,
                                           OutputFormat::Structured);
  const std::string b = render_gdeg_report(f, gaussian_degree_hypersurface(f, cfg), cfg,
                                           OutputFormat::Structured);
  CHECK(a == b);
}

TEST_CASE("text gdeg report mentions the headline number") {
  const GdegConfig cfg = default_config();
  const LaurentPolynomial f = parse("1 + x + y", 2);
  const GaussDegreeReport report = gaussian_degree_hypersurface(f, cfg);
  const std::string text = render_gdeg_report(f, report, cfg, OutputFormat::Text);
  CHECK(text.find("gdeg") != std::string::npos);
  CHECK(text.find("1") != std::string::npos);
}

TEST_CASE("structured chi report includes the nondegeneracy block") {
  const LaurentPolynomial f = parse("1 + x + y + x*y", 2);
  const GdegConfig cfg = default_config();
  const NondegeneracyReport nondeg = nondegeneracy_check(f, cfg);
  const ChiReport chi = chi_nondegenerate_hypersurface(f);
  const std::string bytes = render_chi_report(f, chi, nondeg, OutputFormat::Structured);
  const nlohmann::json doc = nlohmann::json::parse(bytes);
  CHECK(doc.at("command") == "chi");
  CHECK(doc.at("chi") == -2);
  CHECK(doc.at("nondegeneracy").at("verdict") == "degenerate");
  CHECK(doc.at("nondegeneracy").at("face_is_full_polytope") == true);
  CHECK(doc.at("nondegeneracy").contains("witness"));
}

TEST_CASE("cycle report sums the components") {
  const GdegConfig cfg = default_config();
  const LagrangianCycle cycle = parse_cycle(
      R"({"n": 2, "components": [{"point": [1, 1], "mult": 2}, {"point": [2, 3], "mult": 3}]})");
  const CycleChiReport result = evaluate_cycle(cycle, cfg);
  const std::string bytes = render_cycle_report(cycle, result, cfg, OutputFormat::Structured);
  const nlohmann::json doc = nlohmann::json::parse(bytes);
  CHECK(doc.at("command") == "cycle");
  CHECK(doc.at("chi") == 5);
  CHECK(doc.at("all_agreed") == true);
  CHECK(doc.at("components").size() == 2);
  CHECK(doc.at("components")[0].at("exact") == true);
}

TEST_CASE("corpus runner handles comments, cycles, and polynomials") {
  const std::string corpus =
      "# comment line\n"
      "\n"
      "1 + x + y\n"
      "{\"n\": 2, \"components\": [{\"point\": [1, 1], \"mult\": 2}]}\n"
      "1 + x + y + x*y\n";
  const GdegConfig cfg = default_config();
  const CorpusRunResult run = run_corpus(corpus, 2, cfg);
  REQUIRE(run.entries.size() == 3);

  CHECK(run.entries[0].line == 3);
  CHECK_FALSE(run.entries[0].is_cycle);
  CHECK(run.entries[0].verdict == IdentityVerdict::Equal);
  CHECK(run.entries[0].gdeg == 1);
  CHECK(run.entries[0].signed_chi == 1);

  CHECK(run.entries[1].line == 4);
  CHECK(run.entries[1].is_cycle);
  CHECK(run.entries[1].chi == 2);
  CHECK(run.entries[1].agreed);

  // Degenerate polynomial: not applicable, but not a failure either.
  CHECK(run.entries[2].line == 5);
  CHECK(run.entries[2].verdict == IdentityVerdict::NotApplicable);

  CHECK(run.all_verified);
  CHECK_FALSE(run.any_disagreement);
}

TEST_CASE("corpus runner reports malformed lines with their numbers") {
  const GdegConfig cfg = default_config();
  CHECK_THROWS_WITH_AS(static_cast<void>(run_corpus("# ok\n1 + (x\n", 2, cfg)),
                       doctest::Contains("line 2"), CorpusError);
  CHECK_THROWS_AS(static_cast<void>(run_corpus("{\"n\": 2}\n", 2, cfg)), CorpusError);
}

TEST_CASE("corpus structured report is byte-identical across runs") {
  const std::string corpus = "1 + x + y\n1 + x + y + 3*x*y\n";
  const GdegConfig cfg = default_config();
  const CorpusRunResult first = run_corpus(corpus, 2, cfg);
  const CorpusRunResult second = run_corpus(corpus, 2, cfg);
  const std::string a = render_corpus_report(first, 2, cfg, OutputFormat::Structured);
  const std::string b = render_corpus_report(second, 2, cfg, OutputFormat::Structured);
  CHECK(a == b);

  const nlohmann::json doc = nlohmann::json::parse(a);
  CHECK(doc.at("command") == "verify");
  CHECK(doc.at("entry_count") == 2);
  CHECK(doc.at("all_verified") == true);
  CHECK(doc.at("entries").size() == 2);
  CHECK(doc.at("entries")[0].at("verdict") == "equal");
}

TEST_CASE("text corpus report summarizes the verification") {
  const GdegConfig cfg = default_config();
  const CorpusRunResult run = run_corpus("1 + x + y\n", 2, cfg);
  const std::string text = render_corpus_report(run, 2, cfg, OutputFormat::Text);
  CHECK(text.find("verified") != std::string::npos);
}
