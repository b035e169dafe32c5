#pragma once

// Request/report layer behind the diffnorm command-line tool. Argument
// parsing lives in tools/; everything here is I/O-free apart from reading a
// sequence file, so the whole command surface is testable in-process.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "diffnorm/core.hpp"
#include "diffnorm/diffmatrix.hpp"
#include "diffnorm/oracle.hpp"
#include "diffnorm/sampling.hpp"
#include "diffnorm/sequences.hpp"
#include "diffnorm/spectral.hpp"

namespace diffnorm::cli {

using Json = nlohmann::ordered_json;

class ParseError : public InvalidSequence {
 public:
  ParseError(const std::string& token, std::size_t position)
      : InvalidSequence("not an integer: '" + token + "' at token " +
                        std::to_string(position)),
        token_(token),
        position_(position) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

/// Integers separated by commas and/or whitespace; blank lines are ignored.
/// Positions in errors are 1-based token numbers.
inline IntegerSequence parse_sequence_text(std::string_view text,
                                           std::string label = "literal") {
  std::vector<BigInt> values;
  std::size_t position = 0;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    const std::string token(text.substr(i, j - i));
    ++position;
    const std::size_t digits_from = token[0] == '-' || token[0] == '+' ? 1 : 0;
    bool ok = token.size() > digits_from;
    for (std::size_t k = digits_from; ok && k < token.size(); ++k) {
      ok = token[k] >= '0' && token[k] <= '9';
    }
    if (!ok) throw ParseError(token, position);
    values.emplace_back(token[0] == '+' ? token.substr(1) : token);
    i = j;
  }
  if (values.empty()) throw InvalidSequence("no integers in sequence text");
  return IntegerSequence(std::move(label), std::move(values));
}

/// Comma-separated decimal terms; inverse of parse_sequence_text.
inline std::string render_sequence(const IntegerSequence& seq) {
  std::string out;
  for (const auto& t : seq.terms()) {
    if (!out.empty()) out += ',';
    out += t.str();
  }
  return out;
}

enum class Format { text, csv, json };

enum class SourceFamily { fibonacci, lucas, recurrence };

struct CommandRequest {
  std::string subcommand;  // norm | charpoly | verify | table | erratum

  std::optional<std::string> seq_literal;
  std::optional<std::string> file;
  std::optional<SourceFamily> family;
  std::optional<std::string> coeffs;  // recurrence family only
  std::optional<std::string> init;

  std::size_t n = 0;
  std::size_t max_n = 0;
  double tol = 1e-9;
  std::size_t cases = 200;
  std::uint64_t seed = kDefaultSeed;
  Format format = Format::text;
};

struct RunReport {
  int exit_code = 0;
  std::string output;       // payload for stdout
  std::string diagnostics;  // for stderr
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string_view to_string(SourceFamily f) {
  switch (f) {
    case SourceFamily::fibonacci: return "fibonacci";
    case SourceFamily::lucas: return "lucas";
    case SourceFamily::recurrence: return "recurrence";
  }
  return "";
}

inline std::string_view to_string(Format f) {
  switch (f) {
    case Format::text: return "text";
    case Format::csv: return "csv";
    case Format::json: return "json";
  }
  return "";
}

namespace detail {

// Shortest round-trip decimal, always with a fraction or exponent ("2.0").
inline std::string fmt_double(double v) { return Json(v).dump(); }

inline std::string fmt_rational(const BigRational& q) { return q.str(); }

inline Json request_echo(const CommandRequest& req) {
  Json in = Json::object();
  if (req.seq_literal) in["seq"] = *req.seq_literal;
  if (req.file) in["file"] = *req.file;
  if (req.family) in["family"] = to_string(*req.family);
  if (req.coeffs) in["coeffs"] = *req.coeffs;
  if (req.init) in["init"] = *req.init;
  if (req.n != 0) in["n"] = req.n;
  if (req.max_n != 0) in["max_n"] = req.max_n;
  if (req.subcommand == "verify") {
    in["tol"] = req.tol;
    in["cases"] = req.cases;
    in["seed"] = req.seed;
  }
  in["format"] = to_string(req.format);
  return in;
}

inline IntegerSequence resolve_sequence(const CommandRequest& req) {
  const int sources = (req.seq_literal ? 1 : 0) + (req.file ? 1 : 0) +
                      (req.family ? 1 : 0);
  if (sources != 1) {
    throw UsageError("exactly one of --seq, --file, --family is required");
  }
  if (req.seq_literal) return parse_sequence_text(*req.seq_literal);
  if (req.file) {
    std::ifstream in(*req.file, std::ios::binary);
    if (!in) throw UsageError("cannot read sequence file: " + *req.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sequence_text(buf.str(), "file");
  }
  if (req.n == 0) throw UsageError("--family needs --n >= 1");
  switch (*req.family) {
    case SourceFamily::fibonacci: return fibonacci(req.n);
    case SourceFamily::lucas: return lucas(req.n);
    case SourceFamily::recurrence: {
      if (!req.coeffs || !req.init) {
        throw UsageError("--family recurrence needs --coeffs and --init");
      }
      const auto c = parse_sequence_text(*req.coeffs);
      const auto i = parse_sequence_text(*req.init);
      return linear_recurrence(c.terms(), i.terms(), req.n);
    }
  }
  throw UsageError("unknown family");
}

inline Family require_named_family(const CommandRequest& req) {
  if (!req.family || *req.family == SourceFamily::recurrence) {
    throw UsageError(req.subcommand + " needs --family fibonacci|lucas");
  }
  if (req.max_n == 0) throw UsageError(req.subcommand + " needs --max-n >= 1");
  return *req.family == SourceFamily::fibonacci ? Family::fibonacci
                                                : Family::lucas;
}

inline Json envelope(const CommandRequest& req, Json results, Json verdicts) {
  Json out = Json::object();
  out["command"] = req.subcommand;
  out["input"] = request_echo(req);
  out["results"] = std::move(results);
  out["verdicts"] = std::move(verdicts);
  return out;
}

inline std::string key_value_lines(
    const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : rows) {
    out += k;
    out.append(width + 2 - k.size(), ' ');
    out += v;
    out += '\n';
  }
  return out;
}

inline std::string aligned_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      line.append(width[c] - r[c].size(), ' ');
      line += r[c];
    }
    out += line + '\n';
  }
  return out;
}

inline std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) out += ',';
      out += r[c];
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- norm

inline RunReport run_norm(const CommandRequest& req) {
  const auto seq = resolve_sequence(req);
  const auto summary = spectral_summary(seq);

  // The oracle is skipped, not failed, when the entries leave double range.
  std::optional<double> oracle;
  std::string oracle_verdict = "skipped";
  try {
    oracle = numeric_spectral_norm(build(seq));
    const double rel = std::abs(*oracle - summary.spectral_norm) /
                       std::max(1.0, summary.spectral_norm);
    oracle_verdict = rel <= req.tol ? "match" : "mismatch";
  } catch (const PrecisionError&) {
  }

  RunReport rep;
  rep.exit_code = oracle_verdict == "mismatch" ? kExitMismatch : kExitOk;
  if (req.format == Format::json) {
    Json res = Json::object();
    res["label"] = seq.label();
    res["n"] = summary.n;
    res["s_squared"] = summary.s_squared.str();
    res["spectral_norm"] = summary.spectral_norm;
    res["frobenius_norm"] = summary.frobenius_norm;
    res["paper_printed_value"] = summary.paper_printed_value.str();
    res["numeric_spectral_norm"] = oracle ? Json(*oracle) : Json(nullptr);
    Json verdicts = Json::object();
    verdicts["oracle_norm_agreement"] = oracle_verdict;
    rep.output = envelope(req, std::move(res), std::move(verdicts)).dump(2) + "\n";
  } else if (req.format == Format::csv) {
    rep.output = csv({{"n", "s_squared", "spectral_norm", "frobenius_norm",
                       "paper_printed_value", "numeric_spectral_norm"},
                      {std::to_string(summary.n), summary.s_squared.str(),
                       fmt_double(summary.spectral_norm),
                       fmt_double(summary.frobenius_norm),
                       summary.paper_printed_value.str(),
                       oracle ? fmt_double(*oracle) : std::string()}});
  } else {
    rep.output = key_value_lines({
        {"sequence", seq.label() + " (n=" + std::to_string(summary.n) + ")"},
        {"s_squared", summary.s_squared.str()},
        {"spectral_norm", fmt_double(summary.spectral_norm)},
        {"frobenius_norm", fmt_double(summary.frobenius_norm)},
        {"paper_printed_value", summary.paper_printed_value.str()},
        {"numeric_spectral_norm",
         (oracle ? fmt_double(*oracle) : std::string("n/a")) + " (" +
             oracle_verdict + ")"},
    });
  }
  return rep;
}

// ------------------------------------------------------------ charpoly

inline RunReport run_charpoly(const CommandRequest& req) {
  const auto seq = resolve_sequence(req);
  const auto cp = char_poly(seq);
  const auto brute = pairwise_square_sum_bruteforce(seq);
  const std::string verdict = cp.s_squared == brute ? "match" : "mismatch";

  RunReport rep;
  rep.exit_code = verdict == "match" ? kExitOk : kExitMismatch;
  const auto herm = CharPoly::Form::hermitian;
  const auto skew = CharPoly::Form::skew;
  if (req.format == Format::json) {
    Json res = Json::object();
    res["n"] = cp.n;
    res["s_squared"] = cp.s_squared.str();
    res["a1"] = cp.a1().str();
    res["a2_hermitian"] = cp.a2(herm).str();
    res["a2_skew"] = cp.a2(skew).str();
    res["char_poly_hermitian"] = cp.render(herm);
    res["char_poly_skew"] = cp.render(skew);
    Json verdicts = Json::object();
    verdicts["minor_sum_equals_pair_sum"] = verdict;
    rep.output = envelope(req, std::move(res), std::move(verdicts)).dump(2) + "\n";
  } else if (req.format == Format::csv) {
    rep.output = csv({{"n", "s_squared", "a1", "a2_hermitian", "a2_skew"},
                      {std::to_string(cp.n), cp.s_squared.str(), cp.a1().str(),
                       cp.a2(herm).str(), cp.a2(skew).str()}});
  } else {
    rep.output = key_value_lines({
        {"n", std::to_string(cp.n)},
        {"s_squared", cp.s_squared.str()},
        {"char_poly(iA_x)", cp.render(herm)},
        {"char_poly(A_x)", cp.render(skew)},
        {"minor sum vs pair sum", verdict},
    });
  }
  return rep;
}

// --------------------------------------------------------------- table

inline RunReport run_table(const CommandRequest& req) {
  const Family fam = require_named_family(req);
  std::vector<SpectralSummary> rows;
  rows.reserve(req.max_n);
  for (std::size_t n = 1; n <= req.max_n; ++n) {
    rows.push_back(spectral_summary(family_sequence(fam, n)));
  }

  RunReport rep;
  if (req.format == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row = Json::object();
      row["n"] = r.n;
      row["s_squared"] = r.s_squared.str();
      row["paper_printed_value"] = r.paper_printed_value.str();
      row["spectral_norm"] = r.spectral_norm;
      row["frobenius_norm"] = r.frobenius_norm;
      arr.push_back(std::move(row));
    }
    Json res = Json::object();
    res["family"] = to_string(fam);
    res["rows"] = std::move(arr);
    rep.output = envelope(req, std::move(res), Json::object()).dump(2) + "\n";
    return rep;
  }
  std::vector<std::vector<std::string>> cells;
  if (req.format == Format::csv) {
    cells.push_back({"n", "s_squared", "spectral_norm", "frobenius_norm"});
  } else {
    cells.push_back({"n", "paper_printed_value", "spectral_norm", "frobenius_norm"});
  }
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.n), r.s_squared.str(),
                     fmt_double(r.spectral_norm), fmt_double(r.frobenius_norm)});
  }
  rep.output = req.format == Format::csv ? csv(cells) : aligned_table(cells);
  return rep;
}

// ------------------------------------------------------------- erratum

inline RunReport run_erratum(const CommandRequest& req) {
  const Family fam = require_named_family(req);
  const auto report = erratum_report(fam, req.max_n);

  RunReport rep;
  rep.exit_code = report.all_match() ? kExitOk : kExitMismatch;

  std::size_t printed_bad = 0;
  std::size_t corrected_bad = 0;
  std::size_t direct_bad = 0;
  for (const auto& r : report.rows) {
    printed_bad += r.verdict_printed == Verdict::mismatch;
    corrected_bad += r.verdict_corrected == Verdict::mismatch;
    direct_bad += !r.direct_matches();
  }
  auto overall = [](std::size_t bad) { return bad == 0 ? "match" : "mismatch"; };

  if (req.format == Format::json) {
    Json arr = Json::array();
    for (const auto& r : report.rows) {
      Json row = Json::object();
      row["n"] = r.n;
      row["ground_truth"] = r.ground_truth.str();
      row["direct"] = r.direct_formula.str();
      row["cased_printed"] = fmt_rational(r.cased_formula_as_printed);
      row["cased_corrected"] = fmt_rational(r.cased_formula_sign_corrected);
      row["verdict_printed"] = to_string(r.verdict_printed);
      row["verdict_corrected"] = to_string(r.verdict_corrected);
      arr.push_back(std::move(row));
    }
    Json res = Json::object();
    res["family"] = to_string(fam);
    res["rows"] = std::move(arr);
    Json verdicts = Json::object();
    verdicts["direct"] = overall(direct_bad);
    verdicts["cased_printed"] = overall(printed_bad);
    verdicts["cased_corrected"] = overall(corrected_bad);
    rep.output = envelope(req, std::move(res), std::move(verdicts)).dump(2) + "\n";
    return rep;
  }
  std::vector<std::vector<std::string>> cells{
      {"n", "ground_truth", "direct", "cased_printed", "cased_corrected",
       "verdict_printed", "verdict_corrected"}};
  for (const auto& r : report.rows) {
    cells.push_back({std::to_string(r.n), r.ground_truth.str(),
                     r.direct_formula.str(),
                     fmt_rational(r.cased_formula_as_printed),
                     fmt_rational(r.cased_formula_sign_corrected),
                     std::string(to_string(r.verdict_printed)),
                     std::string(to_string(r.verdict_corrected))});
  }
  if (req.format == Format::csv) {
    rep.output = csv(cells);
  } else {
    rep.output = aligned_table(cells);
    rep.output += "\nfamily " + std::string(to_string(fam)) + ": direct " +
                  overall(direct_bad) + ", cased printed " + overall(printed_bad) +
                  " (" + std::to_string(printed_bad) + " of " +
                  std::to_string(report.rows.size()) + " rows differ), cased corrected " +
                  overall(corrected_bad) + "\n";
  }
  return rep;
}

// -------------------------------------------------------------- verify

struct CheckTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;

  void record(bool ok) { ok ? ++passed : ++failed; }
  bool ok() const { return failed == 0; }
};

/// Largest n for which every principal minor is enumerated.
inline constexpr std::size_t kExhaustiveMinorLimit = 7;
inline constexpr std::int64_t kVerifyValueBound = 10'000;

inline std::vector<CheckTally> difference_matrix_audit(const std::vector<IntegerSequence>& inputs,
                                             double tol) {
  CheckTally closed{"closed_equals_bruteforce"};
  CheckTally coeffs{"minor_sum_coefficients"};
  CheckTally rank{"rank_dichotomy"};
  CheckTally minors{"minor_vanishing"};
  CheckTally cubic{"cubic_identity"};
  CheckTally norm{"oracle_norm_agreement"};
  CheckTally printed{"printed_value_is_squared_norm"};
  CheckTally shape{"spectrum_shape"};

  for (const auto& seq : inputs) {
    const auto m = build(seq);
    const BigInt s2 = pairwise_square_sum_bruteforce(seq);
    closed.record(pairwise_square_sum_closed(seq) == s2);
    coeffs.record(sum_principal_minors(m, 1) == 0 &&
                  sum_principal_minors(m, 2) == s2);

    const std::size_t r = exact_rank(m.entries());
    const std::size_t expected = seq.is_constant() ? 0 : 2;
    rank.record(r == expected && exact_rank(row_difference_transform(m)) == r);

    if (seq.size() <= kExhaustiveMinorLimit) {
      bool all_zero = true;
      for (std::size_t k = 3; k <= seq.size(); ++k) {
        for_each_index_set(seq.size(), k, [&](const IndexSet& s) {
          if (principal_minor(m, s) != 0) all_zero = false;
        });
      }
      minors.record(all_zero);
    } else {
      ++minors.skipped;
    }

    cubic.record(cubic_identity_holds(m));

    try {
      const double exact = std::sqrt(s2.convert_to<double>());
      const double numeric = numeric_spectral_norm(m);
      norm.record(std::abs(numeric - exact) / std::max(1.0, exact) <= tol);
      const double s2d = s2.convert_to<double>();
      printed.record(std::abs(numeric * numeric - s2d) / std::max(1.0, s2d) <=
                     2 * tol + 1e-15);
      shape.record(spectrum_check(seq, tol));
    } catch (const PrecisionError&) {
      ++norm.skipped;
      ++printed.skipped;
      ++shape.skipped;
    }
  }
  return {closed, coeffs, rank, minors, cubic, norm, printed, shape};
}

inline std::vector<IntegerSequence> verify_inputs(const CommandRequest& req) {
  std::vector<IntegerSequence> inputs;
  for (std::size_t n = 2; n <= req.max_n; ++n) {
    inputs.push_back(fibonacci(n));
    inputs.push_back(lucas(n));
    inputs.emplace_back("constant", std::vector<BigInt>(n, BigInt(7)));
  }
  std::mt19937_64 rng(req.seed);
  for (std::size_t c = 0; c < req.cases; ++c) {
    inputs.push_back(random_sequence(rng, 2, req.max_n, kVerifyValueBound));
  }
  return inputs;
}

inline RunReport run_verify(const CommandRequest& req) {
  if (req.max_n < 2) throw UsageError("verify needs --max-n >= 2");
  if (!(req.tol > 0.0)) throw UsageError("--tol must be positive");
  const auto tallies = difference_matrix_audit(verify_inputs(req), req.tol);

  RunReport rep;
  bool all_ok = true;
  for (const auto& t : tallies) all_ok = all_ok && t.ok();
  rep.exit_code = all_ok ? kExitOk : kExitMismatch;

  if (req.format == Format::json) {
    Json checks = Json::array();
    Json verdicts = Json::object();
    for (const auto& t : tallies) {
      Json c = Json::object();
      c["name"] = t.name;
      c["passed"] = t.passed;
      c["failed"] = t.failed;
      c["skipped"] = t.skipped;
      checks.push_back(std::move(c));
      verdicts[t.name] = t.ok() ? "match" : "mismatch";
    }
    Json res = Json::object();
    res["checks"] = std::move(checks);
    rep.output = envelope(req, std::move(res), std::move(verdicts)).dump(2) + "\n";
    return rep;
  }
  std::vector<std::vector<std::string>> cells{
      {"check", "passed", "failed", "skipped", "verdict"}};
  for (const auto& t : tallies) {
    cells.push_back({t.name, std::to_string(t.passed), std::to_string(t.failed),
                     std::to_string(t.skipped), t.ok() ? "match" : "mismatch"});
  }
  rep.output = req.format == Format::csv ? csv(cells) : aligned_table(cells);
  return rep;
}

}  // namespace detail

/// Dispatches one request. Library errors are mapped to exit codes here:
/// input/usage problems to 2, numeric oracle failures to 3.
inline RunReport run(const CommandRequest& req) {
  try {
    if (req.subcommand == "norm") return detail::run_norm(req);
    if (req.subcommand == "charpoly") return detail::run_charpoly(req);
    if (req.subcommand == "table") return detail::run_table(req);
    if (req.subcommand == "erratum") return detail::run_erratum(req);
    if (req.subcommand == "verify") return detail::run_verify(req);
    throw UsageError("unknown subcommand '" + req.subcommand + "'");
  } catch (const NumericError& e) {
    return {kExitNumeric, "", std::string("numeric failure: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace diffnorm::cli
