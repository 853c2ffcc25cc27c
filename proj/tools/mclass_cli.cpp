// mclass: command-line front end. Every command reads JSON function
// documents and writes one JSON report envelope. Errors go to stderr as a
// JSON error object with a non-zero exit status; no report is written.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mclass/io/document.hpp"
#include "mclass/io/reports.hpp"
#include "mclass/reconstruction.hpp"
#include "mclass/symmetry.hpp"

namespace {

using nlohmann::json;
using namespace mclass;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitAmbiguous = 4;

struct Input {
  std::string path;
  std::string bytes;
  io::FunctionDocument doc;
};

Input load(const std::string& path) {
  std::string bytes;
  if (path == "-") {
    bytes.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io::ParseError("cannot read '" + path + "'", "");
    bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  auto doc = io::parse_document(bytes);
  return {path, std::move(bytes), std::move(doc)};
}

io::InputDigest digest(const std::string& name, const Input& in) {
  return {name, io::sha256_hex(in.bytes)};
}

// "0.05", "1/20" or "1" as an exact rational.
Rational parse_fraction_flag(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text, false);
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t decimals = text.size() - dot - 1;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(decimals));
  return parse_rational(digits.empty() ? "0" : digits, false) / Rational(scale);
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
  }
  std::filesystem::rename(tmp, out_path);
}

struct Options {
  std::string input;
  std::string other;
  std::string out;
  std::string mode = "canonical";
  std::size_t k = 2;
  std::size_t n_samples = 2000;
  std::size_t depth = 8;
  std::uint64_t seed = 0;
  std::string tol = "0.05";
  std::string min_class_mass = "0.01";
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t length = 0;  // 0: collision_search_length
  std::size_t trials = 10000;
  bool diagnostic = false;
  bool fixed_depth = false;
};

json cmd_purify(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  const auto [pure, maps] = purify(in.doc.require_matrix());
  return {{"document", io::to_json(pure, in.doc.numeric)}, {"factor_maps", io::to_json(maps)},
          {"was_pure", is_pure(in.doc.require_matrix())}};
}

json cmd_iso(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input f = load(o.input);
  const Input g = load(o.other);
  inputs.push_back(digest("f", f));
  inputs.push_back(digest("g", g));
  const FiniteFunction& ff = f.doc.require_matrix();
  const FiniteFunction& gg = g.doc.require_matrix();
  if (o.mode == "canonical") {
    const auto witness = isomorphic(ff, gg);
    json result = {{"mode", "canonical"}, {"isomorphic", witness.has_value()}};
    if (witness) {
      const auto fp = purify(ff).pure;
      const auto gp = purify(gg).pure;
      json row_pairs = json::array();
      json col_pairs = json::array();
      for (std::size_t x = 0; x < witness->rows.size(); ++x) {
        row_pairs.push_back({fp.x_space().atom_ids()[x], gp.x_space().atom_ids()[witness->rows[x]]});
      }
      for (std::size_t y = 0; y < witness->cols.size(); ++y) {
        col_pairs.push_back({fp.y_space().atom_ids()[y], gp.y_space().atom_ids()[witness->cols[y]]});
      }
      result["witness"] = io::to_json(*witness);
      result["witness"]["row_atoms"] = row_pairs;
      result["witness"]["col_atoms"] = col_pairs;
    } else {
      result["witness"] = nullptr;
    }
    return result;
  }
  const auto df = exact_corner_distribution(ff, o.k, o.budget);
  const auto dg = exact_corner_distribution(gg, o.k, o.budget);
  json result = {{"mode", "corners"}, {"k", o.k}, {"isomorphic", df == dg},
                 {"total_variation", format_rational(total_variation(df, dg))}};
  result["distinguishing_corner"] = nullptr;
  std::map<std::vector<Label>, std::pair<Rational, Rational>> merged;
  for (const auto& [m, p] : df.entries) merged[m].first = p;
  for (const auto& [m, p] : dg.entries) merged[m].second = p;
  for (const auto& [m, pq] : merged) {
    if (pq.first != pq.second) {
      json matrix = json::array();
      for (std::size_t i = 0; i < o.k; ++i) {
        matrix.push_back(std::vector<Label>(m.begin() + static_cast<std::ptrdiff_t>(i * o.k),
                                            m.begin() + static_cast<std::ptrdiff_t>((i + 1) * o.k)));
      }
      result["distinguishing_corner"] = {{"corner", io::corner_key(m, o.k)},
                                         {"matrix", matrix},
                                         {"p_f", format_rational(pq.first)},
                                         {"p_g", format_rational(pq.second)}};
      break;
    }
  }
  return result;
}

json cmd_matdist(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  if (in.doc.matrix) return io::to_json(exact_corner_distribution(*in.doc.matrix, o.k, o.budget));
  return io::to_json(exact_tensor_corner(*in.doc.tensor, o.k, o.budget));
}

json cmd_sample(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  if (in.doc.matrix) return io::to_json(sample_matrix(*in.doc.matrix, o.n_samples, o.seed));
  return io::to_json(sample_tensor(*in.doc.tensor, o.n_samples, o.seed));
}

json cmd_reconstruct(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  const FiniteFunction& f = in.doc.require_matrix();
  const auto report = reconstruction_check(f, o.n_samples, o.depth, o.seed, parse_fraction_flag(o.tol),
                                           parse_fraction_flag(o.min_class_mass), !o.fixed_depth);
  json result = io::to_json(report);
  if (in.doc.numeric) {
    const auto model = empirical_joint(sample_matrix(f, o.n_samples, o.seed), report.depth_used, true);
    result["empirical_model"] = io::to_json(model);
  }
  return result;
}

json cmd_congruence(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  const FiniteFunction pure = purify(in.doc.require_matrix()).pure;
  json result = io::to_json(congruence_group(in.doc.require_matrix()));
  result["pure_x_atoms"] = pure.x_space().atom_ids();
  result["pure_y_atoms"] = pure.y_space().atom_ids();
  return result;
}

json cmd_simplicity(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  const FiniteFunction& f = in.doc.require_matrix();
  const auto group = congruence_group(f);
  json result = {{"simple", group.order() == 1},
                 {"group_order", group.order()},
                 {"pure", is_pure(f)},
                 {"completely_pure", is_pure(f) && group.order() == 1}};
  const std::size_t length = o.length == 0 ? collision_search_length(f, o.trials) : o.length;
  const auto witness = collision_witness(f, length, o.trials, o.seed);
  result["collision_search"] = {{"length", length}, {"trials", o.trials}};
  result["collision_witness"] = witness ? io::to_json(*witness) : json(nullptr);
  if (o.diagnostic) result["diagnostic"] = io::to_json(empirical_simplicity_diagnostic(f, o.k, o.budget));
  return result;
}

json cmd_definetti(const Options& o, std::vector<io::InputDigest>& inputs) {
  const Input in = load(o.input);
  inputs.push_back(digest("f", in));
  const auto r = sample_matrix(in.doc.require_matrix(), o.n_samples, o.seed);
  const Rational stat = definetti_diagnostic(r, o.depth);
  return {{"statistic", format_rational(stat)}, {"statistic_approx", to_double(stat)}};
}

int report_error(const std::string& kind, const std::string& message, json details, int code) {
  details["exit_code"] = code;
  std::cerr << io::dump(io::error_object(kind, message, std::move(details)));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, purification, isomorphism, reconstruction and simplicity for finite "
               "functions of two (or n) variables. Documents and flags: docs/format.md"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));
  Options o;

  auto add_common = [&](CLI::App* sub, bool seed) {
    sub->add_option("input", o.input, "Function document (JSON), '-' for stdin")->required();
    sub->add_option("--out", o.out, "Write the report here instead of stdout");
    if (seed) sub->add_option("--seed", o.seed, "64-bit seed of the counter-based generator")->capture_default_str();
  };

  auto* purify_cmd = app.add_subcommand("purify", "Merge equal rows and columns; report the pure factor");
  add_common(purify_cmd, false);

  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism of two documents");
  add_common(iso_cmd, false);
  iso_cmd->add_option("other", o.other, "Second function document")->required();
  iso_cmd->add_option("--mode", o.mode, "canonical (extended pure factors) or corners (k-corner laws)")
      ->check(CLI::IsMember({"canonical", "corners"}))
      ->capture_default_str();
  iso_cmd->add_option("--k", o.k, "Corner size in corners mode")->check(CLI::PositiveNumber)->capture_default_str();
  iso_cmd->add_option("--budget", o.budget, "Maximum enumerated tuples")->capture_default_str();

  auto* matdist_cmd = app.add_subcommand("matdist", "Exact k-corner distribution (tensor corner for n-ary input)");
  add_common(matdist_cmd, false);
  matdist_cmd->add_option("--k", o.k, "Corner size")->check(CLI::PositiveNumber)->capture_default_str();
  matdist_cmd->add_option("--budget", o.budget, "Maximum enumerated tuples")->capture_default_str();

  auto* sample_cmd = app.add_subcommand("sample", "Sample an N x N matrix (N^n tensor)");
  add_common(sample_cmd, true);
  sample_cmd->add_option("--N", o.n_samples, "Sample size per axis")->check(CLI::PositiveNumber)->capture_default_str();

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Sample, rebuild the canonical model, match it to the source");
  add_common(reconstruct_cmd, true);
  reconstruct_cmd->add_option("--N", o.n_samples, "Sample size per axis")->check(CLI::PositiveNumber)->capture_default_str();
  reconstruct_cmd->add_option("--depth", o.depth, "Starting prefix depth")->check(CLI::PositiveNumber)->capture_default_str();
  reconstruct_cmd->add_option("--tol", o.tol, "Weight total-variation tolerance")->capture_default_str();
  reconstruct_cmd->add_option("--min-class-mass", o.min_class_mass,
                              "Classes lighter than this are exempt from the majority check")
      ->capture_default_str();
  reconstruct_cmd->add_flag("--fixed-depth", o.fixed_depth, "Fail with exit 4 instead of doubling the depth");

  auto* congruence_cmd = app.add_subcommand("congruence", "Congruence group of the pure factor");
  add_common(congruence_cmd, false);

  auto* simplicity_cmd = app.add_subcommand("simplicity", "Decide simplicity of the matrix distribution");
  add_common(simplicity_cmd, true);
  simplicity_cmd->add_option("--length", o.length, "Collision sequence length (0 picks one from the weights)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simplicity_cmd->add_option("--trials", o.trials, "Random collision searches when the group is trivial")->capture_default_str();
  simplicity_cmd->add_flag("--diagnostic", o.diagnostic, "Also run the k-corner orbit diagnostic");
  simplicity_cmd->add_option("--k", o.k, "Corner size for --diagnostic")->check(CLI::PositiveNumber)->capture_default_str();
  simplicity_cmd->add_option("--budget", o.budget, "Maximum enumerated tuples")->capture_default_str();

  auto* definetti_cmd = app.add_subcommand("definetti", "Row-pair independence statistic of a sampled matrix");
  add_common(definetti_cmd, true);
  definetti_cmd->add_option("--N", o.n_samples, "Sample size per axis (even)")->check(CLI::PositiveNumber)->capture_default_str();
  definetti_cmd->add_option("--depth", o.depth, "Prefix depth")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), json::object(), kExitParse);
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    std::vector<io::InputDigest> inputs;
    json result;
    json params = json::object();
    std::optional<std::uint64_t> seed;
    if (command == "purify") {
      result = cmd_purify(o, inputs);
    } else if (command == "iso") {
      params = {{"mode", o.mode}};
      if (o.mode == "corners") {
        params["k"] = o.k;
        params["budget"] = o.budget;
      }
      result = cmd_iso(o, inputs);
    } else if (command == "matdist") {
      params = {{"k", o.k}, {"budget", o.budget}};
      result = cmd_matdist(o, inputs);
    } else if (command == "sample") {
      params = {{"N", o.n_samples}};
      seed = o.seed;
      result = cmd_sample(o, inputs);
    } else if (command == "reconstruct") {
      params = {{"N", o.n_samples}, {"depth", o.depth},
                {"tol", format_rational(parse_fraction_flag(o.tol))},
                {"min_class_mass", format_rational(parse_fraction_flag(o.min_class_mass))},
                {"fixed_depth", o.fixed_depth}};
      seed = o.seed;
      result = cmd_reconstruct(o, inputs);
    } else if (command == "congruence") {
      result = cmd_congruence(o, inputs);
    } else if (command == "simplicity") {
      params = {{"length", o.length}, {"trials", o.trials}, {"diagnostic", o.diagnostic}};
      if (o.diagnostic) {
        params["k"] = o.k;
        params["budget"] = o.budget;
      }
      seed = o.seed;
      result = cmd_simplicity(o, inputs);
    } else if (command == "definetti") {
      params = {{"N", o.n_samples}, {"depth", o.depth}};
      seed = o.seed;
      result = cmd_definetti(o, inputs);
    }
    write_output(o.out, io::dump(io::envelope(command, inputs, seed, params, result)));
    return kExitOk;
  } catch (const io::ParseError& e) {
    json details = {{"field", e.field()}};
    if (e.line() > 0) details["line"] = e.line();
    return report_error(e.kind(), e.what(), details, kExitParse);
  } catch (const BudgetExceeded& e) {
    return report_error(e.kind(), e.what(), {{"required", e.required()}}, kExitBudget);
  } catch (const AmbiguousCell& e) {
    return report_error(e.kind(), e.what(), {{"row_class", e.row_class()}, {"col_class", e.col_class()}},
                        kExitAmbiguous);
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), json::object(), kExitOther);
  } catch (const std::invalid_argument& e) {
    return report_error("InvalidArgument", e.what(), json::object(), kExitParse);
  } catch (const std::exception& e) {
    return report_error("InternalError", e.what(), json::object(), kExitOther);
  }
}
