#include "spectral_minmax/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectral_minmax/errors.hpp"
#include "spectral_minmax/io.hpp"
#include "spectral_minmax/majorization.hpp"
#include "spectral_minmax/minmax_verifier.hpp"
#include "spectral_minmax/random.hpp"
#include "spectral_minmax/suite.hpp"

namespace spectral_minmax::cli {

namespace {

// Where a verification's matrices come from.
struct MatrixSource {
  std::string matrix_file;
  std::string matrix_b_file;
  std::vector<std::string> random_spec;  // "n=<N>" "seed=<S>"
};

struct VerifyFlags {
  MatrixSource source;
  std::size_t j = 1;
  std::size_t i = 1;
  std::string intervals;
  std::optional<double> t0;
  std::optional<double> t1;
  std::size_t trials = 1000;
  std::size_t inner = 50;
  std::uint64_t seed = 0;
  std::string out_file;
  bool perturb = false;
  bool indefinite = false;
};

struct RandomSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

RandomSpec parse_random(const std::vector<std::string>& tokens) {
  RandomSpec spec;
  bool have_n = false;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ValidationError("--random expects key=value, got \"" + tok + "\"");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      if (key == "n") {
        spec.n = static_cast<std::size_t>(v);
        have_n = true;
      } else if (key == "seed") {
        spec.seed = v;
      } else {
        throw ValidationError("--random: unknown key \"" + key + "\"");
      }
    } catch (const std::logic_error&) {
      throw ValidationError("--random: \"" + tok + "\" is not a non-negative integer");
    }
  }
  if (!have_n || spec.n == 0) throw ValidationError("--random needs n=<N> with N >= 1");
  return spec;
}

Hermitian load_matrix(const std::string& path) { return io::hermitian_from_json(io::read_json_file(path)); }

Hermitian primary_matrix(const MatrixSource& src) {
  if (!src.matrix_file.empty()) return load_matrix(src.matrix_file);
  if (!src.random_spec.empty()) {
    const auto spec = parse_random(src.random_spec);
    return random_hermitian(spec.n, spec.seed);
  }
  throw ValidationError("give --matrix <file> or --random n=<N> seed=<S>");
}

// Second matrix for the two-matrix checks. Random mode draws it from the
// stream following the first one.
Hermitian secondary_matrix(const MatrixSource& src, const Hermitian& a, bool positive_shift,
                           bool indefinite) {
  if (!src.matrix_b_file.empty()) return load_matrix(src.matrix_b_file);
  if (src.random_spec.empty()) throw ValidationError("give --matrix-b <file> or use --random");
  const auto spec = parse_random(src.random_spec);
  Rng rng(spec.seed + 1);
  if (positive_shift && !indefinite) {
    const ComplexMatrix c = gaussian_matrix(a.dim(), 1, rng) / std::sqrt(static_cast<double>(a.dim()));
    return Hermitian::symmetrized(a.matrix() + c * c.adjoint());
  }
  const Hermitian h = random_hermitian(a.dim(), rng);
  return positive_shift ? a + h : h;
}

std::vector<verify::IndexInterval> parse_intervals(const std::string& text) {
  std::vector<verify::IndexInterval> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        const auto v = std::stoul(item);
        out.push_back({v, v});
      } else {
        out.push_back({std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1))});
      }
    } catch (const std::logic_error&) {
      throw ValidationError("--intervals: cannot parse \"" + item + "\"");
    }
  }
  if (out.empty()) throw ValidationError("--intervals must list at least one lo:hi range");
  return out;
}

int emit_report(const VerificationReport& report, const VerifyFlags& flags, std::ostream& out) {
  const auto doc = report.to_json();
  if (!flags.out_file.empty()) {
    std::ofstream f(flags.out_file);
    if (!f) throw ValidationError("cannot write " + flags.out_file);
    f << doc.dump(2) << '\n';
    out << report.theorem << " n=" << report.n << ' ' << to_string(report.status)
        << " margin=" << format_double(report.margin) << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
  return report.status == ReportStatus::Fail ? kExitVerificationFailed : kExitOk;
}

// Thresholds between consecutive eigenvalues isolating indices i..i+j-1.
std::pair<double, double> index_thresholds(const Hermitian& a, std::size_t i, std::size_t j) {
  const auto values = eigh(a).values;
  const std::size_t n = values.size();
  if (i < 1 || j < 1 || i + j - 1 > n) {
    throw ArgumentError("indices i = " + std::to_string(i) + ", j = " + std::to_string(j) +
                        " do not fit n = " + std::to_string(n));
  }
  const double t0 = i == 1 ? values.front() - 1.0 : 0.5 * (values[i - 2] + values[i - 1]);
  const double t1 = i + j - 1 == n ? values.back() + 1.0 : 0.5 * (values[i + j - 2] + values[i + j - 1]);
  return {t0, t1};
}

void add_verify_flags(CLI::App* cmd, VerifyFlags& f) {
  auto* matrix = cmd->add_option("--matrix", f.source.matrix_file, "matrix JSON file");
  auto* random = cmd->add_option("--random", f.source.random_spec, "random Hermitian: n=<N> seed=<S>")
                     ->expected(1, 2);
  matrix->excludes(random);
  cmd->add_option("--trials", f.trials, "random trials (outer trials for cf/wielandt)");
  cmd->add_option("--seed", f.seed, "seed for the trial streams");
  cmd->add_option("--out", f.out_file, "write the JSON report here");
  cmd->add_flag("--perturb", f.perturb, "separate repeated eigenvalues before verifying");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral distributions, quantiles and trace minmax verification", "spectral-minmax"};
  app.require_subcommand(1);

  std::string measure_file;
  std::size_t grid = 100;
  auto* quantile_cmd = app.add_subcommand("quantile", "tabulate X(s) at s = k/N as CSV");
  quantile_cmd->add_option("measure", measure_file, "measure JSON file")->required();
  quantile_cmd->add_option("--grid", grid, "number of grid points N")->check(CLI::PositiveNumber);

  std::string matrix_file;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and atom table of a Hermitian matrix");
  spectrum_cmd->add_option("matrix", matrix_file, "matrix JSON file")->required();

  std::size_t discretize_n = 0;
  auto* discretize_cmd = app.add_subcommand("discretize", "n equal atoms at the quantile midpoints");
  discretize_cmd->add_option("measure", measure_file, "measure JSON file")->required();
  discretize_cmd->add_option("--n", discretize_n, "number of atoms")->required()->check(CLI::PositiveNumber);

  std::uint64_t suite_seed = 42;
  std::string suite_out;
  std::vector<int> suite_criteria;
  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance battery");
  suite_cmd->add_option("--seed", suite_seed, "battery seed");
  suite_cmd->add_option("--out", suite_out, "write the JSON report here");
  suite_cmd->add_option("--criteria", suite_criteria, "subset of criteria 1-8")
      ->check(CLI::Range(1, suite::kCriterionCount))
      ->delimiter(',');

  std::string generate_kind = "hermitian";
  std::size_t generate_n = 8;
  std::uint64_t generate_seed = 0;
  std::size_t generate_panels = 4096;
  double generate_radius = 2.0;
  auto* generate_cmd = app.add_subcommand("generate", "write a random matrix or a semicircle measure as JSON");
  generate_cmd->add_option("kind", generate_kind, "hermitian | semicircle")
      ->check(CLI::IsMember({"hermitian", "semicircle"}));
  generate_cmd->add_option("--n", generate_n, "matrix dimension")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", generate_seed, "matrix seed");
  generate_cmd->add_option("--panels", generate_panels, "semicircle panels")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--radius", generate_radius, "semicircle radius")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "verify one minmax identity");
  verify_cmd->require_subcommand(1);
  VerifyFlags flags;

  auto* kyfan_cmd = verify_cmd->add_subcommand("kyfan", "min tau(a p) over rank(p) >= j");
  add_verify_flags(kyfan_cmd, flags);
  kyfan_cmd->add_option("--j", flags.j, "rank bound j")->check(CLI::PositiveNumber);
  bool exact_rank = false;
  kyfan_cmd->add_flag("--exact-rank", exact_rank, "constrain rank(p) = j instead of >= j");

  auto* cf_cmd = verify_cmd->add_subcommand("cf", "Courant-Fischer-Weyl sup-inf");
  add_verify_flags(cf_cmd, flags);
  cf_cmd->add_option("--i", flags.i, "first eigenvalue index")->check(CLI::PositiveNumber);
  cf_cmd->add_option("--j", flags.j, "number of eigenvalues")->check(CLI::PositiveNumber);
  cf_cmd->add_option("--inner", flags.inner, "inner samples per run");

  auto* wielandt_cmd = verify_cmd->add_subcommand("wielandt", "Wielandt inf-sup over chains");
  add_verify_flags(wielandt_cmd, flags);
  wielandt_cmd->add_option("--intervals", flags.intervals, "index ranges lo:hi,lo:hi")->required();
  wielandt_cmd->add_option("--inner", flags.inner, "inner samples per run");

  auto* conditional_cmd =
      verify_cmd->add_subcommand("conditional", "minimum over q below a spectral projection");
  add_verify_flags(conditional_cmd, flags);
  conditional_cmd->add_option("--t0", flags.t0, "lower threshold");
  conditional_cmd->add_option("--t1", flags.t1, "upper threshold");
  conditional_cmd->add_option("--i", flags.i, "first eigenvalue index (when thresholds are omitted)");
  conditional_cmd->add_option("--j", flags.j, "number of eigenvalues (when thresholds are omitted)");

  auto* lidskii_cmd = verify_cmd->add_subcommand("lidskii", "X_{a+b} majorized by X_a + X_b");
  add_verify_flags(lidskii_cmd, flags);
  lidskii_cmd->add_option("--matrix-b", flags.source.matrix_b_file, "second matrix JSON file");

  auto* domination_cmd = verify_cmd->add_subcommand("domination", "a <= b implies lambda_j(a) <= lambda_j(b)");
  add_verify_flags(domination_cmd, flags);
  domination_cmd->add_option("--matrix-b", flags.source.matrix_b_file, "second matrix JSON file");
  domination_cmd->add_flag("--indefinite", flags.indefinite, "random mode: b = a + h with h indefinite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*quantile_cmd) {
      const auto q = measures::quantile_of(measures::cdf_of(io::measure_from_json(io::read_json_file(measure_file))));
      out << "s,X(s)\n";
      for (std::size_t k = 0; k < grid; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(grid);
        out << format_double(s) << ',' << format_double(q(s)) << '\n';
      }
      return kExitOk;
    }
    if (*spectrum_cmd) {
      const Hermitian a = load_matrix(matrix_file);
      const auto eig = eigh(a);
      out << "index,eigenvalue\n";
      for (std::size_t k = 0; k < eig.values.size(); ++k) {
        out << k + 1 << ',' << format_double(eig.values[k]) << '\n';
      }
      out << "\nlocation,weight\n";
      const auto dist = spectral_distribution(a, eig);
      for (const auto& atom : dist.atoms()) {
        out << format_double(atom.location) << ',' << format_double(atom.weight) << '\n';
      }
      return kExitOk;
    }
    if (*discretize_cmd) {
      const auto mu = io::measure_from_json(io::read_json_file(measure_file));
      out << io::measure_to_json(measures::discretize(mu, discretize_n)).dump(2) << '\n';
      return kExitOk;
    }
    if (*generate_cmd) {
      if (generate_kind == "semicircle") {
        out << io::measure_to_json(measures::CompactMeasure::semicircle(generate_radius, generate_panels)).dump()
            << '\n';
      } else {
        out << io::matrix_to_json(random_hermitian(generate_n, generate_seed).matrix()).dump(2) << '\n';
      }
      return kExitOk;
    }
    if (*suite_cmd) {
      std::vector<suite::CriterionResult> results;
      if (suite_criteria.empty()) {
        for (int id = 1; id <= suite::kCriterionCount; ++id) suite_criteria.push_back(id);
      }
      for (int id : suite_criteria) {
        results.push_back(suite::run_criterion(id, suite_seed));
        err << "criterion " << id << (results.back().pass ? " PASS" : " FAIL") << '\n';
      }
      out << suite::format_table(results);
      const auto doc = suite::report_json(suite_seed, results);
      if (!suite_out.empty()) {
        std::ofstream f(suite_out);
        if (!f) throw ValidationError("cannot write " + suite_out);
        f << doc.dump(2) << '\n';
      }
      return doc["pass"].get<bool>() ? kExitOk : kExitVerificationFailed;
    }

    const verify::Options options{flags.perturb};
    const Hermitian a = primary_matrix(flags.source);
    if (*kyfan_cmd) {
      const auto constraint = exact_rank ? verify::RankConstraint::Exactly : verify::RankConstraint::AtLeast;
      return emit_report(verify::verify_kyfan(a, flags.j, flags.trials, flags.seed, constraint, options),
                         flags, out);
    }
    if (*cf_cmd) {
      return emit_report(
          verify::verify_courant_fischer(a, flags.i, flags.j, flags.trials, flags.inner, flags.seed, options),
          flags, out);
    }
    if (*wielandt_cmd) {
      return emit_report(verify::verify_wielandt(a, parse_intervals(flags.intervals), flags.trials,
                                                 flags.inner, flags.seed, options),
                         flags, out);
    }
    if (*conditional_cmd) {
      double t0 = 0.0;
      double t1 = 0.0;
      if (flags.t0 && flags.t1) {
        t0 = *flags.t0;
        t1 = *flags.t1;
      } else if (flags.t0 || flags.t1) {
        throw ValidationError("give both --t0 and --t1, or neither");
      } else {
        std::tie(t0, t1) = index_thresholds(a, flags.i, flags.j);
      }
      return emit_report(verify::verify_conditional_min(a, t0, t1, flags.trials, flags.seed, options),
                         flags, out);
    }
    if (*lidskii_cmd) {
      const Hermitian b = secondary_matrix(flags.source, a, false, false);
      return emit_report(majorization::lidskii_check(a, b), flags, out);
    }
    if (*domination_cmd) {
      const Hermitian b = secondary_matrix(flags.source, a, true, flags.indefinite);
      return emit_report(majorization::domination_check(a, b), flags, out);
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    // Validation, argument, ordering, granularity, degeneracy and
    // certificate errors all reject the given input.
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << app.help();
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace spectral_minmax::cli
