// entrocount: alpha-entropies, Shearer-type checks and permanent bounds from
// the shell.
//
//   entrocount entropy  <dist|table>  [--alpha A]... [--target 1,2 --given 3]
//   entrocount bound    <matrix>      [--graph] [--alpha A]... [--optimize]
//   entrocount family   <family>      [--check both] [--alpha A]... [--explore]
//   entrocount shearer  <table> --cover <cover> [--alpha A]...
//   entrocount verify   --suite all   [--seed S] [--instances N] [--replay FILE]
//
// Inputs are file paths or inline content. Exit status: 0 success,
// 1 inequality violated, 2 usage or parse error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "entrocount/bounds.hpp"
#include "entrocount/campaign.hpp"
#include "entrocount/errors.hpp"
#include "entrocount/io.hpp"
#include "entrocount/permanent.hpp"
#include "entrocount/set_family.hpp"
#include "entrocount/shearer.hpp"

namespace {

using entrocount::AlphaParameter;
using nlohmann::json;
namespace io = entrocount::io;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kExactPermanentMaxDim = 26;

struct Common {
  std::string format = "table";
  std::vector<double> alphas;
};

std::vector<AlphaParameter> alpha_list(const std::vector<double>& raw,
                                       std::vector<double> fallback) {
  std::vector<AlphaParameter> out;
  for (double a : raw.empty() ? fallback : raw) out.emplace_back(a);
  return out;
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& coords) {
  std::vector<std::size_t> out;
  for (std::size_t c : coords) {
    if (c == 0) throw entrocount::ArgumentError("coordinates are 1-based");
    out.push_back(c - 1);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

void emit(const Common& common, const json& j, const std::string& table) {
  if (common.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << table;
}

json permanent_json(const entrocount::PermanentValue& v) {
  if (v <= entrocount::PermanentValue(std::numeric_limits<std::uint64_t>::max()))
    return v.convert_to<std::uint64_t>();
  return v.str();
}

// --- entropy -----------------------------------------------------------------

struct EntropyArgs {
  std::string input;
  std::vector<std::size_t> target;
  std::vector<std::size_t> given;
  bool renormalize = false;
};

int cmd_entropy(const Common& common, const EntropyArgs& args) {
  const auto parsed = io::parse_probability_input(
      io::parse_json(io::read_file_or_inline(args.input)), args.renormalize);
  const auto alphas = alpha_list(common.alphas, {1.0});

  json rows = json::array();
  std::ostringstream table;
  table << std::left << std::setw(10) << "alpha" << std::setw(18) << "H" ;
  const bool conditional = !args.target.empty() && !args.given.empty();
  if (conditional) table << std::setw(18) << "H(T|G)" << std::setw(18) << "H~(T|G)";
  table << "\n";

  for (AlphaParameter a : alphas) {
    json row = {{"alpha", a.value()}};
    double h = 0.0;
    if (const auto* dist = std::get_if<entrocount::DiscreteDistribution>(&parsed)) {
      h = entrocount::thc_entropy(*dist, a);
    } else {
      const auto& t = std::get<entrocount::JointTable>(parsed);
      if (!args.target.empty()) {
        h = entrocount::joint_entropy(t, zero_based(args.target), a);
      } else {
        h = entrocount::thc_entropy(t.probs(), a);
      }
      if (conditional) {
        const auto tgt = zero_based(args.target);
        const auto giv = zero_based(args.given);
        row["conditional_daroczy"] = entrocount::conditional_entropy_daroczy(t, tgt, giv, a);
        row["conditional_weighted"] = entrocount::conditional_entropy_weighted(t, tgt, giv, a);
      }
    }
    row["entropy"] = h;
    table << std::left << std::setw(10) << fmt(a.value()) << std::setw(18) << fmt(h);
    if (conditional)
      table << std::setw(18) << fmt(row["conditional_daroczy"].get<double>()) << std::setw(18)
            << fmt(row["conditional_weighted"].get<double>());
    table << "\n";
    rows.push_back(std::move(row));
  }
  emit(common, json{{"results", rows}}, table.str());
  return kExitOk;
}

// --- bound -------------------------------------------------------------------

struct BoundArgs {
  std::string input;
  bool graph = false;
  bool optimize = false;
  entrocount::AlphaGrid grid;
};

int cmd_bound(const Common& common, const BoundArgs& args) {
  const std::string text = io::read_file_or_inline(args.input);
  const entrocount::BinaryMatrix m =
      args.graph ? io::parse_graph(io::parse_json(text)) : io::parse_matrix_text(text);

  json out = {{"n", m.size()}, {"row_sums", m.row_sums()}};
  std::ostringstream table;
  table << "n = " << m.size() << "\n";
  if (m.size() <= kExactPermanentMaxDim) {
    const auto per = entrocount::permanent_ryser(m);
    out["permanent"] = permanent_json(per);
    table << "permanent = " << per.str() << "\n";
  }
  if (m.has_zero_row()) {
    out["bregman"] = 0.0;
    table << "zero row: permanent is 0, bounds do not apply\n";
  } else {
    const double b = entrocount::bregman_bound(m.row_sums());
    out["bregman"] = b;
    table << "bregman = " << fmt(b) << "\n";
  }

  if (!args.optimize || !common.alphas.empty()) {
    json reports = json::array();
    table << std::left << std::setw(10) << "alpha" << std::setw(18) << "rhs" << std::setw(18)
          << "ceiling" << "integer\n";
    for (AlphaParameter a : alpha_list(common.alphas, {0.5, 1.0, 2.0})) {
      const auto r = entrocount::alpha_bound(m, a);
      reports.push_back(io::to_json(r));
      table << std::left << std::setw(10) << fmt(a.value()) << std::setw(18)
            << fmt(r.rhs_entropy_space) << std::setw(18) << fmt(r.ceiling)
            << (r.integer_ceiling ? fmt(*r.integer_ceiling) : std::string("-")) << "\n";
    }
    out["reports"] = std::move(reports);
  }
  if (args.optimize) {
    const auto opt = entrocount::optimize_alpha(m, args.grid);
    out["optimization"] = io::to_json(opt);
    table << "optimized: alpha = " << fmt(opt.best_alpha.value())
          << ", ceiling = " << fmt(opt.best_ceiling) << " (" << opt.trace.size()
          << " evaluations)\n";
  }
  emit(common, out, table.str());
  return kExitOk;
}

// --- family ------------------------------------------------------------------

struct FamilyArgs {
  std::string input;
  std::string check = "both";
  bool explore = false;
};

int cmd_family(const Common& common, const FamilyArgs& args) {
  const auto f = io::parse_set_family(io::parse_json(io::read_file_or_inline(args.input)));
  const bool cardinality = args.check == "cardinality" || args.check == "both";
  const bool intersection = args.check == "intersection" || args.check == "both";
  const auto alphas = alpha_list(common.alphas, {1.0});

  std::optional<std::size_t> k;
  if (intersection) {
    k = f.uniform_size();
    if (!k) throw entrocount::ArgumentError("intersection check needs a k-uniform family");
  }

  bool all_hold = true;
  json rows = json::array();
  std::ostringstream table;
  table << "m = " << f.size() << ", n = " << f.ground_size() << "\n";
  for (AlphaParameter a : alphas) {
    json row = {{"alpha", a.value()}};
    if (cardinality) {
      const auto r = entrocount::check_cardinality_bound(f, a);
      all_hold &= r.holds;
      row["cardinality"] = io::to_json(r);
      table << "alpha " << fmt(a.value()) << "  cardinality   lhs " << fmt(r.lhs) << "  rhs "
            << fmt(r.rhs) << "  " << (r.holds ? "holds" : "VIOLATED") << "\n";
    }
    if (intersection) {
      const auto r = entrocount::check_intersection_family_bound(f, *k, a);
      if (r.precondition_met) all_hold &= r.holds;
      row["intersection"] = io::to_json(r);
      table << "alpha " << fmt(a.value()) << "  intersection  lhs " << fmt(r.lhs) << "  rhs "
            << fmt(r.rhs) << "  lambda " << fmt(r.lambda) << "  "
            << (r.precondition_met ? (r.holds ? "holds" : "VIOLATED")
                                   : "precondition not met")
            << "\n";
      if (args.explore && r.lambda > 0.0) {
        // Exploratory: the largest m the inequality permits for this k and lambda.
        const auto cap = entrocount::max_family_size(*k, r.lambda, a);
        row["exploratory_max_m"] = cap ? json(*cap) : json(nullptr);
        table << "    exploratory max m: " << (cap ? std::to_string(*cap) : "unbounded") << "\n";
      }
    }
    rows.push_back(std::move(row));
  }
  emit(common, json{{"m", f.size()}, {"n", f.ground_size()}, {"results", rows}}, table.str());
  return all_hold ? kExitOk : kExitViolation;
}

// --- shearer -----------------------------------------------------------------

struct ShearerArgs {
  std::string input;
  std::string cover;
};

int cmd_shearer(const Common& common, const ShearerArgs& args) {
  const auto t = io::parse_joint_table(io::parse_json(io::read_file_or_inline(args.input)));
  const auto cover = io::parse_cover(io::parse_json(io::read_file_or_inline(args.cover)));
  bool all_hold = true;
  json rows = json::array();
  std::ostringstream table;
  table << "k = " << cover.k() << "\n";
  for (AlphaParameter a : alpha_list(common.alphas, {1.0})) {
    const auto s = entrocount::check_shearer(t, cover, a);
    const auto sub = entrocount::check_subadditivity(t, a);
    all_hold &= s.holds && sub.holds;
    rows.push_back({{"alpha", a.value()},
                    {"shearer", io::to_json(s)},
                    {"subadditivity", io::to_json(sub)}});
    table << "alpha " << fmt(a.value()) << "  shearer lhs " << fmt(s.lhs) << " rhs "
          << fmt(s.rhs) << (s.holds ? "  holds" : "  VIOLATED") << "   subadditivity lhs "
          << fmt(sub.lhs) << " rhs " << fmt(sub.rhs) << (sub.holds ? "  holds" : "  VIOLATED")
          << "\n";
  }
  emit(common, json{{"k", cover.k()}, {"results", rows}}, table.str());
  return all_hold ? kExitOk : kExitViolation;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string replay;
  entrocount::RunConfig config;
};

int cmd_verify(const Common& common, VerifyArgs args) {
  if (!args.replay.empty()) {
    const json out =
        entrocount::replay(io::parse_json(io::read_file_or_inline(args.replay)));
    bool all_hold = true;
    std::ostringstream table;
    for (const auto& r : out) {
      all_hold &= r.at("holds").get<bool>();
      table << r.at("check").get<std::string>() << "  alpha " << r.at("alpha").dump()
            << "  lhs " << r.at("lhs").dump() << "  rhs " << r.at("rhs").dump() << "  "
            << (r.at("holds").get<bool>() ? "holds" : "VIOLATED") << "\n";
    }
    emit(common, out, table.str());
    return all_hold ? kExitOk : kExitViolation;
  }

  if (const char* env = std::getenv("ENTROCOUNT_SEED")) {
    try {
      args.config.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw entrocount::ArgumentError("ENTROCOUNT_SEED is not an unsigned integer");
    }
  }
  args.config.alphas = common.alphas;
  const auto summary = entrocount::run_campaign(entrocount::parse_suite(args.suite), args.config);
  emit(common, summary.to_json(), summary.to_table());
  return summary.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-entropy inequalities and permanent bounds"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--alpha,-a", common.alphas, "Entropic order (repeatable)")
        ->check(CLI::PositiveNumber);
  };

  EntropyArgs entropy_args;
  auto* entropy = app.add_subcommand("entropy", "THC entropies of a distribution or table");
  entropy->add_option("input", entropy_args.input, "JSON file or inline JSON")->required();
  entropy->add_option("--target", entropy_args.target, "1-based target coordinates")
      ->delimiter(',');
  entropy->add_option("--given", entropy_args.given, "1-based conditioning coordinates")
      ->delimiter(',');
  entropy->add_flag("--renormalize", entropy_args.renormalize, "Rescale input to unit sum");
  add_common(entropy);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Permanent and its alpha-bounds");
  bound->add_option("input", bound_args.input, "Matrix text or graph JSON (file or inline)")
      ->required();
  bound->add_flag("--graph", bound_args.graph, "Input is a bipartite edge list");
  bound->add_flag("--optimize", bound_args.optimize, "Optimize the ceiling over alpha");
  bound->add_option("--grid-lo", bound_args.grid.lo, "Optimizer grid lower end");
  bound->add_option("--grid-hi", bound_args.grid.hi, "Optimizer grid upper end");
  bound->add_option("--grid-points", bound_args.grid.points, "Optimizer grid size");
  add_common(bound);

  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "Set-family cardinality bounds");
  family->add_option("input", family_args.input, "Family JSON (file or inline)")->required();
  family->add_option("--check", family_args.check, "Which bound to check")
      ->check(CLI::IsMember({"cardinality", "intersection", "both"}));
  family->add_flag("--explore", family_args.explore,
                   "Report the largest m the intersection bound allows (exploratory)");
  add_common(family);

  ShearerArgs shearer_args;
  auto* shearer = app.add_subcommand("shearer", "Shearer inequality for a table and cover");
  shearer->add_option("input", shearer_args.input, "Joint table JSON")->required();
  shearer->add_option("--cover", shearer_args.cover, "Cover JSON")->required();
  add_common(shearer);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Randomized verification campaigns");
  verify->add_option("--suite", verify_args.suite, "Suite to run")
      ->check(CLI::IsMember({"entropy", "shearer", "family", "permanent", "all"}));
  verify->add_option("--seed", verify_args.config.seed, "RNG seed (ENTROCOUNT_SEED overrides)");
  verify->add_option("--instances", verify_args.config.instances, "Random instances per suite");
  verify->add_option("--tolerance", verify_args.config.tolerance, "Slack for equalities");
  verify->add_option("--p", verify_args.config.bernoulli_p, "Matrix entry probability");
  verify->add_option("--max-dim", verify_args.config.max_matrix_dim, "Largest matrix size");
  verify->add_option("--replay", verify_args.replay, "Re-evaluate dumped cases");
  verify->add_flag("--dump-cases", verify_args.config.record_all,
                   "Record every case, not only violations");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*entropy) return cmd_entropy(common, entropy_args);
    if (*bound) return cmd_bound(common, bound_args);
    if (*family) return cmd_family(common, family_args);
    if (*shearer) return cmd_shearer(common, shearer_args);
    if (*verify) return cmd_verify(common, verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
