// Command-line front end: single computations (gdeg, chi), corpus
// verification, and Lagrangian-cycle evaluation.  Exit codes: 0 success,
// 1 usage/parse/IO error, 2 numerical verification failure (sample
// disagreement or a failed identity).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gaussrr/cycles.hpp"
#include "gaussrr/euler.hpp"
#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"
#include "gaussrr/polytope.hpp"
#include "gaussrr/report.hpp"

namespace {

using namespace gaussrr;

struct CommonOptions {
  int dimension = 2;
  std::uint64_t seed = 42;
  int samples = 3;
  std::string format = "text";
  double tolerance = 0.0;  // 0 keeps the built-in defaults
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_dimension) {
  if (with_dimension) {
    cmd->add_option("-n,--dimension", opts.dimension, "ambient torus dimension (default 2)")
        ->check(CLI::Range(1, 3));
  }
  cmd->add_option("--seed", opts.seed, "base random seed (default 42)");
  cmd->add_option("--samples", opts.samples,
                  "independent gamma draws that must agree (default 3, minimum 3)")
      ->check(CLI::Range(3, 64));
  cmd->add_option("--format", opts.format, "output format: text | structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--tol", opts.tolerance, "corrector tolerance override")
      ->check(CLI::PositiveNumber);
}

GdegConfig make_config(const CommonOptions& opts) {
  GdegConfig cfg;
  cfg.seed = opts.seed;
  cfg.samples = opts.samples;
  if (opts.tolerance > 0.0) {
    cfg.tracker.corrector_tolerance = opts.tolerance;
    cfg.tracker.endpoint_tolerance = opts.tolerance / 10.0;
  }
  return cfg;
}

OutputFormat output_format(const CommonOptions& opts) {
  return opts.format == "structured" ? OutputFormat::Structured : OutputFormat::Text;
}

bool read_file(const std::string& path, std::string& contents) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  contents = buffer.str();
  return true;
}

int run_gdeg(const std::string& text, const CommonOptions& opts) {
  const GdegConfig cfg = make_config(opts);
  try {
    const LaurentPolynomial f = parse(text, opts.dimension);
    GaussDegreeReport report;
    try {
      report = gaussian_degree_hypersurface(f, cfg);
    } catch (const MonomialInputError&) {
      report.gdeg = 0;
      report.agreed = true;
      report.warning = "single-term input defines the empty variety";
    }
    std::cout << render_gdeg_report(f, report, cfg, output_format(opts));
    return report.agreed ? 0 : 2;
  } catch (const ParseError& error) {
    std::cerr << "syntax error: " << error.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

int run_chi(const std::string& text, const CommonOptions& opts) {
  const GdegConfig cfg = make_config(opts);
  try {
    const LaurentPolynomial f = parse(text, opts.dimension);
    ChiReport chi;
    NondegeneracyReport nondegeneracy;
    try {
      nondegeneracy = nondegeneracy_check(f, cfg);
      chi = (f.dimension() == 2 && newton_polytope(f).affine_dimension() == 2)
                ? chi_curve_pick(f)
                : chi_nondegenerate_hypersurface(f);
      if (nondegeneracy.verdict == NondegeneracyVerdict::Nondegenerate) {
        chi.nondegenerate = true;
      } else if (nondegeneracy.verdict == NondegeneracyVerdict::Degenerate) {
        chi.nondegenerate = false;
      }
    } catch (const MonomialInputError&) {
      chi.chi = 0;
      chi.method = f.dimension() == 1 ? ChiMethod::OneDim : ChiMethod::Khovanskii;
      nondegeneracy.note = "single-term input defines the empty variety";
    }
    std::cout << render_chi_report(f, chi, nondegeneracy, output_format(opts));
    return 0;
  } catch (const ParseError& error) {
    std::cerr << "syntax error: " << error.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

int run_verify(const std::string& path, const CommonOptions& opts) {
  const GdegConfig cfg = make_config(opts);
  std::string corpus;
  if (!read_file(path, corpus)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return 1;
  }
  try {
    const CorpusRunResult run = run_corpus(corpus, opts.dimension, cfg);
    std::cout << render_corpus_report(run, opts.dimension, cfg, output_format(opts));
    if (run.any_disagreement) return 2;
    return run.all_verified ? 0 : 2;
  } catch (const CorpusError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

int run_cycle(const std::string& path, const CommonOptions& opts) {
  const GdegConfig cfg = make_config(opts);
  std::string document;
  if (!read_file(path, document)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return 1;
  }
  try {
    const LagrangianCycle cycle = parse_cycle(document);
    const CycleChiReport result = evaluate_cycle(cycle, cfg);
    std::cout << render_cycle_report(cycle, result, cfg, output_format(opts));
    return result.all_agreed ? 0 : 2;
  } catch (const CycleParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gaussian degrees of torus subvarieties, with combinatorial "
      "Euler-characteristic verification"};
  app.require_subcommand(1);

  CommonOptions gdeg_opts, chi_opts, verify_opts, cycle_opts;
  std::string gdeg_poly, chi_poly, verify_path, cycle_path;

  CLI::App* gdeg = app.add_subcommand(
      "gdeg", "numerical Gaussian degree of a hypersurface conormal cycle");
  gdeg->add_option("polynomial", gdeg_poly, "Laurent polynomial")->required();
  add_common_flags(gdeg, gdeg_opts, true);

  CLI::App* chi = app.add_subcommand(
      "chi", "combinatorial Euler characteristic and nondegeneracy verdict");
  chi->add_option("polynomial", chi_poly, "Laurent polynomial")->required();
  add_common_flags(chi, chi_opts, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "verify the degree/Euler-characteristic identity over a corpus file");
  verify->add_option("corpus", verify_path, "corpus file: one polynomial or cycle document per line")
      ->required();
  add_common_flags(verify, verify_opts, true);

  CLI::App* cycle = app.add_subcommand(
      "cycle", "evaluate chi of a Lagrangian-cycle document via component degrees");
  cycle->add_option("document", cycle_path, "cycle document file (carries its own dimension)")
      ->required();
  add_common_flags(cycle, cycle_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gdeg->parsed()) return run_gdeg(gdeg_poly, gdeg_opts);
    if (chi->parsed()) return run_chi(chi_poly, chi_opts);
    if (verify->parsed()) return run_verify(verify_path, verify_opts);
    return run_cycle(cycle_path, cycle_opts);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
