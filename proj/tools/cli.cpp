#include "cli.hpp"

#include "uebk/basis_io.hpp"
#include "uebk/constructors.hpp"
#include "uebk/error.hpp"
#include "uebk/lifting.hpp"
#include "uebk/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace uebk::cli {

namespace {

struct Options {
  std::vector<int> dims;
  int k = 0;
  std::string variant = "general";
  std::uint64_t seed = 0;
  std::string name;
  std::string in = "-";
  std::string out = "-";
  std::string mode = "cert+search";
  int restarts = 0;
  double tol = 1e-8;
  bool prop2 = false;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    buf << file.rdbuf();
  }
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  file << text;
}

BasisCandidate named_example(const std::string& name) {
  if (name == "eq6") return eq6_ueb2_2x2();
  if (name == "eq9") return eq9_nonpattern_ueb2();
  if (name == "eq14") return eq14_ueb2_2x3();
  if (name == "tiles") return tiles_upb_3x3();
  if (name == "pyramid") return pyramid_upb_3x3();
  if (name == "umeb23") return umeb_2x3();
  if (name == "hs-fixture") return three_qubit_hs_fixture();
  throw Error(ErrorKind::InvalidParameters, "unknown example '" + name + "'");
}

std::string inspect(const BasisCandidate& b) {
  std::ostringstream out;
  out << std::setprecision(6) << "dims:";
  for (std::size_t i = 0; i < b.dims.size(); ++i) out << (i ? "x" : " ") << b.dims[i];
  out << "\nk: " << b.k << "\nmembers: " << b.size() << "\nspecial: " << (b.claimed_special ? "yes" : "no") << "\n";
  for (const auto& [key, value] : b.provenance) out << "provenance." << key << ": " << value << "\n";
  for (int i = 0; i < b.size(); ++i) {
    SchmidtDetection det = detect_schmidt_form(b.members[i]);
    out << "member " << i << ": " << to_string(det.outcome);
    if (det.form) {
      out << ", " << det.form->k() << " branches [";
      for (int j = 0; j < det.form->k(); ++j) out << (j ? ", " : "") << det.form->coefficients[j];
      out << "]";
    } else if (!det.reason.empty()) {
      out << " (" << det.reason << ")";
    }
    out << "\n";
  }
  return out.str();
}

int error_exit(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidBasisFile:
    case ErrorKind::LiftBlocked:
    case ErrorKind::InvalidInput:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, lift and verify unextendible bases of fixed Schmidt number", "uebk"};
  app.require_subcommand(1);
  Options o;

  auto* construct = app.add_subcommand("construct", "bipartite UEBk from tiles and a decomposed core block");
  construct->add_option("--dims", o.dims, "D1,D2")->delimiter(',')->required()->expected(2);
  construct->add_option("--k", o.k, "Schmidt number")->required();
  construct->add_option("--variant", o.variant, "general | catalog | v1 | v2 | v3");
  auto* seed_opt = construct->add_option("--seed", o.seed, "draw random isometries from this seed");
  construct->add_option("--out", o.out, "output file (default stdout)");

  auto* example = app.add_subcommand("example", "named example basis");
  example->add_option("--name", o.name, "eq6 | eq9 | eq14 | tiles | pyramid | umeb23 | hs-fixture")
      ->required()
      ->check(CLI::IsMember({"eq6", "eq9", "eq14", "tiles", "pyramid", "umeb23", "hs-fixture"}));
  example->add_option("--out", o.out, "output file (default stdout)");

  auto* suebk3 = app.add_subcommand("suebk3", "tripartite SUEBk with equal coefficients");
  suebk3->add_option("--dims", o.dims, "D1,D2,D3")->delimiter(',')->required()->expected(3);
  suebk3->add_option("--k", o.k, "Schmidt number")->required();
  suebk3->add_option("--out", o.out, "output file (default stdout)");

  auto* lift = app.add_subcommand("lift", "append parties one at a time");
  lift->add_option("--in", o.in, "input file (default stdin)");
  lift->add_option("--dims", o.dims, "D[,D...]")->delimiter(',')->required();
  lift->add_option("--out", o.out, "output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "check orthonormality, member Schmidt numbers and unextendibility");
  verify_cmd->add_option("--in", o.in, "input file (default stdin)");
  verify_cmd->add_option("--mode", o.mode, "cert | cert+search | search")
      ->check(CLI::IsMember({"cert", "cert+search", "search"}));
  verify_cmd->add_option("--seed", o.seed, "search seed");
  verify_cmd->add_option("--restarts", o.restarts, "search restarts (default 100 bipartite, 200 otherwise)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", o.tol, "search acceptance tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--prop2", o.prop2, "also test Schmidt numbers above k in the complement");
  auto* verify_out = verify_cmd->add_option("--out", o.out, "write the basis with an embedded verification summary");

  auto* inspect_cmd = app.add_subcommand("inspect", "summarize a basis file");
  inspect_cmd->add_option("--in", o.in, "input file (default stdin)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (construct->parsed()) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = o.seed;
      BasisCandidate b = construct_bipartite_uebk(o.dims[0], o.dims[1], o.k, parse_core_variant(o.variant), seed);
      write_output(o.out, serialize(b), out);
      return kExitOk;
    }
    if (example->parsed()) {
      write_output(o.out, serialize(named_example(o.name)), out);
      return kExitOk;
    }
    if (suebk3->parsed()) {
      write_output(o.out, serialize(suebk_tripartite(o.dims[0], o.dims[1], o.dims[2], o.k)), out);
      return kExitOk;
    }
    if (lift->parsed()) {
      ParsedBasis parsed = parse(read_input(o.in, in));
      write_output(o.out, serialize(lift_chain(parsed.basis, o.dims)), out);
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      ParsedBasis parsed = parse(read_input(o.in, in));
      VerifyOptions vo;
      vo.mode = parse_verify_mode(o.mode);
      vo.seed = o.seed;
      vo.restarts = o.restarts;
      vo.tol = o.tol;
      vo.prop2 = o.prop2;
      VerificationReport report = verify(parsed.basis, vo);
      if (verify_out->count() > 0 && o.out != "-") {
        write_output(o.out, serialize(parsed.basis, VerificationSummary::from(report)), out);
      }
      out << format_report(parsed.basis, report);
      return report.exit_code();
    }
    if (inspect_cmd->parsed()) {
      out << inspect(parse(read_input(o.in, in)).basis);
      return kExitOk;
    }
  } catch (const Error& e) {
    return error_exit(e, err);
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace uebk::cli
