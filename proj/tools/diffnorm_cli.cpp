// diffnorm: spectral norms and characteristic polynomials of difference
// matrices [x_i - x_j], with exact and numeric verification.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "diffnorm/cli.hpp"

namespace {

using diffnorm::cli::CommandRequest;
using diffnorm::cli::Format;
using diffnorm::cli::SourceFamily;

const std::map<std::string, SourceFamily> kFamilies{
    {"fibonacci", SourceFamily::fibonacci},
    {"lucas", SourceFamily::lucas},
    {"recurrence", SourceFamily::recurrence},
};

const std::map<std::string, Format> kFormats{
    {"text", Format::text},
    {"csv", Format::csv},
    {"json", Format::json},
};

struct Options {
  std::string seq;
  std::string file;
  std::string family;
  std::string coeffs;
  std::string init;
  std::string format = "text";
};

void add_source_options(CLI::App* sub, Options& opt, CommandRequest& req) {
  sub->add_option("--seq", opt.seq, "literal integers, e.g. \"1,1,2,3\"");
  sub->add_option("--file", opt.file, "file of integers (commas/newlines)");
  sub->add_option("--family", opt.family, "fibonacci | lucas | recurrence")
      ->check(CLI::IsMember({"fibonacci", "lucas", "recurrence"}));
  sub->add_option("--n", req.n, "sequence length for --family");
  sub->add_option("--coeffs", opt.coeffs, "recurrence coefficients c_1,...,c_k");
  sub->add_option("--init", opt.init, "recurrence initial terms x_1,...,x_k");
}

void add_format_option(CLI::App* sub, Options& opt) {
  sub->add_option("--format", opt.format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral norms of difference matrices [x_i - x_j]"};
  app.require_subcommand(1);

  CommandRequest req;
  Options opt;

  auto* norm = app.add_subcommand("norm", "exact s^2, spectral and Frobenius norms");
  add_source_options(norm, opt, req);
  add_format_option(norm, opt);

  auto* charpoly = app.add_subcommand("charpoly", "trinomial characteristic polynomial");
  add_source_options(charpoly, opt, req);
  add_format_option(charpoly, opt);

  auto* verify = app.add_subcommand("verify", "randomized exact + numeric audit");
  verify->add_option("--max-n", req.max_n, "largest sequence length")->required();
  verify->add_option("--tol", req.tol, "numeric tolerance (default 1e-9)");
  verify->add_option("--cases", req.cases, "random sequences (default 200)");
  verify->add_option("--seed", req.seed, "RNG seed (default 20240611)");
  add_format_option(verify, opt);

  auto* table = app.add_subcommand("table", "norms of Fibonacci/Lucas matrices for n = 1..max-n");
  table->add_option("--family", opt.family, "fibonacci | lucas")
      ->required()
      ->check(CLI::IsMember({"fibonacci", "lucas"}));
  table->add_option("--max-n", req.max_n, "largest n")->required();
  add_format_option(table, opt);

  auto* erratum = app.add_subcommand("erratum", "printed norm formulas vs brute force");
  erratum->add_option("--family", opt.family, "fibonacci | lucas")
      ->required()
      ->check(CLI::IsMember({"fibonacci", "lucas"}));
  erratum->add_option("--max-n", req.max_n, "largest n")->required();
  add_format_option(erratum, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : diffnorm::cli::kExitUsage;
  }

  req.subcommand = app.get_subcommands().front()->get_name();
  if (!opt.seq.empty()) req.seq_literal = opt.seq;
  if (!opt.file.empty()) req.file = opt.file;
  if (!opt.family.empty()) req.family = kFamilies.at(opt.family);
  if (!opt.coeffs.empty()) req.coeffs = opt.coeffs;
  if (!opt.init.empty()) req.init = opt.init;
  req.format = kFormats.at(opt.format);

  const auto report = diffnorm::cli::run(req);
  std::cout << report.output;
  std::cerr << report.diagnostics;
  return report.exit_code;
}
