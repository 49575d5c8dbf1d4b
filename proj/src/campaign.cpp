#include "entrocount/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "entrocount/bounds.hpp"
#include "entrocount/errors.hpp"
#include "entrocount/io.hpp"
#include "entrocount/permanent.hpp"
#include "entrocount/random.hpp"
#include "entrocount/set_family.hpp"
#include "entrocount/shearer.hpp"

namespace entrocount {

using nlohmann::json;

namespace {

constexpr double kBoundValiditySlack = 1e-9;
constexpr double kBregmanLimitStep = 1e-6;
constexpr double kBregmanLimitTolerance = 1e-4;
constexpr double kSingletonCoverTolerance = 1e-12;
constexpr std::size_t kOracleMaxDim = 8;

enum class Relation { kLessEqual, kEqual };

CaseOutcome compare(double lhs, double rhs, Relation rel, double tolerance) {
  CaseOutcome out{lhs, rhs, false, 0.0};
  if (rel == Relation::kLessEqual) {
    out.slack = rhs - lhs;
    out.holds = lhs <= rhs + tolerance;
  } else {
    out.slack = -std::abs(lhs - rhs);
    out.holds = std::abs(lhs - rhs) <= tolerance;
  }
  return out;
}

CaseOutcome from_check(const CheckResult& r) { return {r.lhs, r.rhs, r.holds, r.slack()}; }

ConditionalForm parse_form(const json& params) {
  const auto form = params.at("form").get<std::string>();
  if (form == "daroczy") return ConditionalForm::kDaroczy;
  if (form == "weighted") return ConditionalForm::kWeighted;
  throw IngestionError("unknown conditional form: " + form);
}

const char* form_name(ConditionalForm f) {
  return f == ConditionalForm::kDaroczy ? "daroczy" : "weighted";
}

std::vector<std::size_t> indices(const json& j) { return j.get<std::vector<std::size_t>>(); }

double to_double_count(const PermanentValue& v) { return to_double(v); }

// --- case evaluation -------------------------------------------------------

CaseOutcome eval_entropy_case(const std::string& check, const JointTable& t,
                              AlphaParameter alpha, const json& params, double tol) {
  if (check == "chain_rule") {
    const auto order = indices(params.at("order"));
    double sum = 0.0;
    for (std::size_t l = 0; l < order.size(); ++l) {
      const std::size_t tgt[1] = {order[l]};
      sum += conditional_entropy_daroczy(t, tgt, std::span(order).first(l), alpha);
    }
    return compare(thc_entropy(t.probs(), alpha), sum, Relation::kEqual, tol);
  }
  if (check == "max_entropy") {
    const double h = thc_entropy(t.probs(), alpha);
    const auto support = t.flattened().support_size();
    return compare(h, alpha_log(double(support), alpha), Relation::kLessEqual, tol);
  }
  if (check == "subadditivity") return from_check(check_subadditivity(t, alpha));
  if (check == "monotonicity") {
    const auto chain = indices(params.at("chain"));
    const auto r = check_conditioning_monotonicity(t, params.at("target").get<std::size_t>(),
                                                   chain, alpha, parse_form(params));
    double worst_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l < r.values.size(); ++l)
      worst_increase = std::max(worst_increase, r.values[l] - r.values[l - 1]);
    if (r.values.size() < 2) worst_increase = 0.0;
    return {worst_increase, 0.0, r.holds, -worst_increase};
  }
  if (check == "contraction") {
    const std::size_t target[1] = {params.at("target").get<std::size_t>()};
    const std::size_t given = params.at("given").get<std::size_t>();
    const auto mapping = indices(params.at("mapping"));
    const std::size_t giv[1] = {given};
    const auto form = parse_form(params);
    const double fine = conditional_entropy(t, target, giv, alpha, form);
    const double coarse =
        conditional_entropy(t.merge_values(given, mapping), target, giv, alpha, form);
    return compare(fine, coarse, Relation::kLessEqual, tol);
  }
  if (check == "form_ordering") {
    const auto target = indices(params.at("target"));
    const auto given = indices(params.at("given"));
    const double weighted = conditional_entropy_weighted(t, target, given, alpha);
    const double daroczy = conditional_entropy_daroczy(t, target, given, alpha);
    if (alpha.is_shannon()) return compare(weighted, daroczy, Relation::kEqual, tol);
    if (alpha.value() < 1.0) return compare(weighted, daroczy, Relation::kLessEqual, tol);
    return compare(daroczy, weighted, Relation::kLessEqual, tol);
  }
  if (check == "merge") {
    const auto partition = params.at("partition").get<std::vector<std::vector<std::size_t>>>();
    return from_check(check_merge_bound(t, params.at("target").get<std::size_t>(),
                                        params.at("given").get<std::size_t>(), partition,
                                        alpha, parse_form(params)));
  }
  if (check == "shearer") {
    return from_check(check_shearer(t, io::parse_cover(params.at("cover")), alpha));
  }
  if (check == "shearer_singleton") {
    const auto a = check_shearer(t, CoverFamily::singletons(t.dimensions()), alpha);
    const auto b = check_subadditivity(t, alpha);
    const double gap = std::max(std::abs(a.lhs - b.lhs), std::abs(a.rhs - b.rhs));
    return compare(gap, 0.0, Relation::kLessEqual, kSingletonCoverTolerance);
  }
  throw IngestionError("unknown check: " + check);
}

CaseOutcome eval_matrix_case(const std::string& check, const BinaryMatrix& m,
                             const json& c) {
  const double tol = c.at("tolerance").get<double>();
  if (check == "zero_row_permanent")
    return compare(to_double_count(permanent_ryser(m)), 0.0, Relation::kEqual, 0.0);
  if (check == "bound_validity") {
    const AlphaParameter alpha(c.at("alpha").get<double>());
    return compare(to_double_count(permanent_ryser(m)), alpha_bound(m, alpha).ceiling,
                   Relation::kLessEqual, tol);
  }
  if (check == "bregman_limit") {
    const double b = bregman_bound(m.row_sums());
    double worst = 0.0;
    for (double a : {1.0 - kBregmanLimitStep, 1.0 + kBregmanLimitStep})
      worst = std::max(worst, std::abs(alpha_bound(m, AlphaParameter(a)).ceiling - b) / b);
    return compare(worst, tol, Relation::kLessEqual, 0.0);
  }
  if (check == "oracle_agreement") {
    const PermanentValue ryser = permanent_ryser(m);
    double worst = std::abs(to_double_count(ryser) - to_double_count(permanent_bruteforce(m)));
    for (std::size_t i = 0; i < m.size(); ++i)
      if (expand_minor(m, i) != ryser) worst = std::max(worst, 1.0);
    return compare(worst, 0.0, Relation::kEqual, 0.0);
  }
  throw IngestionError("unknown check: " + check);
}

CaseOutcome eval_family_case(const std::string& check, const SetFamily& f, const json& c) {
  const AlphaParameter alpha(c.at("alpha").get<double>());
  const json& params = c.contains("params") ? c.at("params") : json::object();
  if (check == "cardinality") return from_check(check_cardinality_bound(f, alpha));
  if (check == "intersection") {
    const auto r =
        check_intersection_family_bound(f, params.at("k").get<std::size_t>(), alpha);
    if (!r.precondition_met) throw PreconditionError("lambda_j > 1/sqrt(2) for some j");
    return {r.lhs, r.rhs, r.holds, r.rhs - r.lhs};
  }
  if (check == "trace_corollary")
    return from_check(
        check_trace_corollary(f, io::parse_set_family(params.at("groups")), alpha));
  throw IngestionError("unknown check: " + check);
}

json make_case(const std::string& check, double alpha, const json& input, json params,
               double tolerance) {
  return {{"check", check},
          {"alpha", alpha},
          {"input", input},
          {"params", std::move(params)},
          {"tolerance", tolerance}};
}

// --- campaign driver -------------------------------------------------------

class Runner {
 public:
  Runner(const RunConfig& config, CampaignSummary& summary)
      : config_(config), summary_(summary) {}

  void run(const json& c) {
    const CaseOutcome out = evaluate_case(c);
    auto& stats = summary_.checks[c.at("check").get<std::string>()];
    ++stats.cases;
    stats.worst_slack = std::min(stats.worst_slack, out.slack);
    if (!out.holds) ++stats.violations;
    if ((!out.holds || config_.record_all) && summary_.records.size() < config_.max_records)
      summary_.records.push_back({{"case", c},
                                  {"lhs", io::number(out.lhs)},
                                  {"rhs", io::number(out.rhs)},
                                  {"holds", out.holds},
                                  {"slack", io::number(out.slack)}});
  }

  const RunConfig& config() const { return config_; }
  CampaignSummary& summary() { return summary_; }

 private:
  const RunConfig& config_;
  CampaignSummary& summary_;
};

std::vector<double> alphas_for(const RunConfig& config, Suite suite) {
  return config.alphas.empty() ? default_alphas(suite) : config.alphas;
}

void entropy_suite(Runner& run, gen::Rng& rng) {
  const auto& cfg = run.config();
  const auto alphas = alphas_for(cfg, Suite::kEntropy);
  const double tol = cfg.tolerance;
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    const JointTable t = gen::random_table(rng);
    const json input = io::to_json(t);
    const std::size_t d = t.dimensions();

    const auto order = rng.permutation(d);
    const auto perm = rng.permutation(d);
    const std::size_t target = perm[0];
    const std::size_t given = perm[1];
    std::vector<std::size_t> chain(perm.begin() + 1, perm.end());

    const std::size_t ny = t.shape()[given];
    const auto mapping = gen::random_surjection(rng, ny, rng.between(1, ny));

    // Partition of the given coordinate's values for the merge bound; falls
    // back to one block when two blocks reach the same target support.
    const auto blocks_of = gen::random_surjection(rng, ny, rng.between(1, ny));
    std::vector<std::vector<std::size_t>> partition(
        *std::max_element(blocks_of.begin(), blocks_of.end()) + 1);
    for (std::size_t y = 0; y < ny; ++y) partition[blocks_of[y]].push_back(y);
    try {
      check_merge_bound(t, target, given, partition, AlphaParameter(1.0),
                        ConditionalForm::kWeighted);
    } catch (const PreconditionError&) {
      partition.assign(1, {});
      for (std::size_t y = 0; y < ny; ++y) partition[0].push_back(y);
    }

    for (double a : alphas) {
      run.run(make_case("chain_rule", a, input, {{"order", order}}, tol));
      run.run(make_case("max_entropy", a, input, json::object(), tol));
      if (a >= 1.0) run.run(make_case("subadditivity", a, input, json::object(), tol));
      for (auto form : {ConditionalForm::kDaroczy, ConditionalForm::kWeighted}) {
        if (form == ConditionalForm::kDaroczy && a < 1.0) continue;
        run.run(make_case("monotonicity", a, input,
                          {{"target", target}, {"chain", chain}, {"form", form_name(form)}},
                          tol));
        run.run(make_case("contraction", a, input,
                          {{"target", target},
                           {"given", given},
                           {"mapping", mapping},
                           {"form", form_name(form)}},
                          tol));
        run.run(make_case("merge", a, input,
                          {{"target", target},
                           {"given", given},
                           {"partition", partition},
                           {"form", form_name(form)}},
                          tol));
      }
      run.run(make_case("form_ordering", a, input,
                        {{"target", json::array({target})}, {"given", chain}}, tol));
    }
  }
}

void shearer_suite(Runner& run, gen::Rng& rng) {
  const auto& cfg = run.config();
  const auto alphas = alphas_for(cfg, Suite::kShearer);
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    const JointTable t = gen::random_table(rng, {.min_dims = 1});
    const CoverFamily cover = gen::random_cover(rng, t.dimensions());
    const json input = io::to_json(t);
    const json cover_json = io::to_json(cover);

    // Set-family trace corollary on a random family and covering groups.
    const std::size_t n = rng.between(1, 8);
    const SetFamily family =
        gen::random_family(rng, n, rng.between(1, std::min<std::size_t>(40, 1u << n)));
    const CoverFamily group_cover = gen::random_cover(rng, n);
    std::vector<std::vector<std::size_t>> groups = group_cover.groups();
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    const json family_json = io::to_json(family);
    const json groups_json = io::to_json(SetFamily::from_lists(n, groups));

    for (double a : alphas) {
      if (a < 1.0) continue;
      run.run(make_case("shearer", a, input, {{"cover", cover_json}}, kEntropySlack));
      run.run(make_case("shearer_singleton", a, input, json::object(),
                        kSingletonCoverTolerance));
      run.run(make_case("trace_corollary", a, family_json, {{"groups", groups_json}}, 1e-12));
    }
  }
}

void family_suite(Runner& run, gen::Rng& rng) {
  const auto& cfg = run.config();
  const auto alphas = alphas_for(cfg, Suite::kFamily);
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    const std::size_t n = rng.between(1, 12);
    const std::size_t m = rng.between(1, std::min<std::size_t>(200, std::size_t{1} << n));
    const json input = io::to_json(gen::random_family(rng, n, m));
    for (double a : alphas)
      if (a >= 1.0) run.run(make_case("cardinality", a, input, json::object(), 1e-12));
  }

  std::vector<double> grid;
  if (cfg.alphas.empty()) {
    grid = intersection_alpha_grid();
  } else {
    for (double a : cfg.alphas)
      if (a >= 1.0 && a <= kLemmaAlphaMax) grid.push_back(a);
  }
  const std::size_t wanted = std::max<std::size_t>(1, cfg.instances / 3);
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; accepted < wanted; ++attempt) {
    if (attempt > 1000 * wanted + 100000)
      throw std::runtime_error("could not sample enough intersection families");
    const std::size_t n = rng.between(4, 12);
    const std::size_t k = rng.between(2, std::max<std::size_t>(2, n / 2));
    const std::size_t m = rng.between(2, 7);
    SetFamily f = [&] {
      try {
        return gen::random_uniform_family(rng, n, k, m);
      } catch (const ArgumentError&) {
        return SetFamily(n, {});
      }
    }();
    if (f.size() < 2 || !check_distinct_pairwise_intersections(f)) continue;
    if (!check_intersection_family_bound(f, k, AlphaParameter(1.0)).precondition_met) continue;
    ++accepted;
    const json input = io::to_json(f);
    for (double a : grid) run.run(make_case("intersection", a, input, {{"k", k}}, 1e-12));
  }
}

void permanent_suite(Runner& run, gen::Rng& rng) {
  const auto& cfg = run.config();
  const auto alphas = alphas_for(cfg, Suite::kPermanent);
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    const std::size_t n = rng.between(1, cfg.max_matrix_dim);
    const BinaryMatrix m = gen::random_matrix(rng, n, cfg.bernoulli_p);
    const json input = io::to_json(m);
    if (m.has_zero_row()) {
      ++run.summary().excluded_zero_row;
      run.run(make_case("zero_row_permanent", 1.0, input, json::object(), 0.0));
      continue;
    }
    for (double a : alphas)
      run.run(make_case("bound_validity", a, input, json::object(), kBoundValiditySlack));
    run.run(make_case("bregman_limit", 1.0, input, json::object(), kBregmanLimitTolerance));
    if (n <= kOracleMaxDim)
      run.run(make_case("oracle_agreement", 1.0, input, json::object(), 0.0));
  }
}

bool is_matrix_check(const std::string& check) {
  return check == "zero_row_permanent" || check == "bound_validity" ||
         check == "bregman_limit" || check == "oracle_agreement";
}

bool is_family_check(const std::string& check) {
  return check == "cardinality" || check == "intersection" || check == "trace_corollary";
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "entropy") return Suite::kEntropy;
  if (name == "shearer") return Suite::kShearer;
  if (name == "family") return Suite::kFamily;
  if (name == "permanent") return Suite::kPermanent;
  if (name == "all") return Suite::kAll;
  throw ArgumentError("unknown suite: " + name);
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::kEntropy: return "entropy";
    case Suite::kShearer: return "shearer";
    case Suite::kFamily: return "family";
    case Suite::kPermanent: return "permanent";
    case Suite::kAll: return "all";
  }
  return "?";
}

std::vector<double> default_alphas(Suite suite) {
  switch (suite) {
    case Suite::kEntropy: return {0.5, 1.0, 1.5, 2.0, 3.0};
    case Suite::kShearer:
    case Suite::kFamily: return {1.0, 1.5, 2.0, 3.0};
    case Suite::kPermanent: return {0.25, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0, 5.0};
    case Suite::kAll: return {};
  }
  return {};
}

std::vector<double> intersection_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(1.0 + (kLemmaAlphaMax - 1.0) * i / 7.0);
  grid.back() = kLemmaAlphaMax;
  return grid;
}

void validate(const RunConfig& config) {
  if (!(config.tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
  if (config.instances < 1) throw ArgumentError("instances must be at least 1");
  for (double a : config.alphas)
    if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("alphas must be positive");
  if (!(config.bernoulli_p >= 0.0 && config.bernoulli_p <= 1.0))
    throw ArgumentError("Bernoulli parameter must lie in [0, 1]");
  if (config.max_matrix_dim < 1 || config.max_matrix_dim > kRyserMaxDim)
    throw ArgumentError("matrix dimension must lie in 1..30");
}

CaseOutcome evaluate_case(const json& c) {
  try {
    const auto check = c.at("check").get<std::string>();
    const json& input = c.at("input");
    if (is_matrix_check(check)) return eval_matrix_case(check, io::parse_matrix_json(input), c);
    if (is_family_check(check)) return eval_family_case(check, io::parse_set_family(input), c);
    const json& params = c.contains("params") ? c.at("params") : json::object();
    return eval_entropy_case(check, io::parse_joint_table(input),
                             AlphaParameter(c.at("alpha").get<double>()), params,
                             c.at("tolerance").get<double>());
  } catch (const json::exception& e) {
    throw IngestionError(std::string("malformed case: ") + e.what());
  }
}

json replay(const json& dump) {
  json out = json::array();
  auto one = [&](const json& item) {
    const json& c = item.contains("case") ? item.at("case") : item;
    const CaseOutcome r = evaluate_case(c);
    out.push_back({{"check", c.at("check")},
                   {"alpha", c.at("alpha")},
                   {"lhs", io::number(r.lhs)},
                   {"rhs", io::number(r.rhs)},
                   {"holds", r.holds},
                   {"slack", io::number(r.slack)}});
  };
  if (dump.is_array()) {
    for (const auto& item : dump) one(item);
  } else if (dump.is_object() && dump.contains("records")) {
    for (const auto& item : dump.at("records")) one(item);
  } else if (dump.is_object()) {
    one(dump);
  } else {
    throw IngestionError("replay input must be a record, a case or an array of them");
  }
  return out;
}

CampaignSummary run_campaign(Suite suite, const RunConfig& config) {
  validate(config);
  CampaignSummary summary;
  summary.suite = to_string(suite);
  summary.seed = config.seed;
  summary.instances = config.instances;
  Runner runner(config, summary);
  // Each suite draws from its own stream so that "all" reproduces the
  // individual suites exactly.
  auto stream = [&](Suite s) { return gen::Rng(config.seed + 0x9E3779B97F4A7C15ull * std::uint64_t(s)); };
  auto run_one = [&](Suite s) {
    gen::Rng rng = stream(s);
    switch (s) {
      case Suite::kEntropy: entropy_suite(runner, rng); break;
      case Suite::kShearer: shearer_suite(runner, rng); break;
      case Suite::kFamily: family_suite(runner, rng); break;
      case Suite::kPermanent: permanent_suite(runner, rng); break;
      case Suite::kAll: break;
    }
  };
  if (suite == Suite::kAll) {
    for (Suite s : {Suite::kEntropy, Suite::kShearer, Suite::kFamily, Suite::kPermanent})
      run_one(s);
  } else {
    run_one(suite);
  }
  return summary;
}

std::size_t CampaignSummary::total_cases() const {
  std::size_t n = 0;
  for (const auto& [_, s] : checks) n += s.cases;
  return n;
}

std::size_t CampaignSummary::total_violations() const {
  std::size_t n = 0;
  for (const auto& [_, s] : checks) n += s.violations;
  return n;
}

double CampaignSummary::worst_slack() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& [_, s] : checks) w = std::min(w, s.worst_slack);
  return w;
}

json CampaignSummary::to_json() const {
  json per_check = json::object();
  for (const auto& [name, s] : checks)
    per_check[name] = {{"cases", s.cases},
                       {"violations", s.violations},
                       {"worst_slack", io::number(s.worst_slack)}};
  return {{"suite", suite},
          {"seed", seed},
          {"instances", instances},
          {"cases", total_cases()},
          {"violations", total_violations()},
          {"worst_slack", io::number(worst_slack())},
          {"excluded_zero_row", excluded_zero_row},
          {"checks", std::move(per_check)},
          {"records", records}};
}

std::string CampaignSummary::to_table() const {
  std::ostringstream out;
  out << "suite " << suite << "  seed " << seed << "  instances " << instances << "\n";
  out << std::left << std::setw(22) << "check" << std::right << std::setw(9) << "cases"
      << std::setw(12) << "violations" << std::setw(16) << "worst slack" << "\n";
  out << std::setprecision(6);
  for (const auto& [name, s] : checks)
    out << std::left << std::setw(22) << name << std::right << std::setw(9) << s.cases
        << std::setw(12) << s.violations << std::setw(16) << s.worst_slack << "\n";
  out << std::left << std::setw(22) << "total" << std::right << std::setw(9) << total_cases()
      << std::setw(12) << total_violations() << std::setw(16) << worst_slack() << "\n";
  if (excluded_zero_row > 0)
    out << "excluded (zero row): " << excluded_zero_row << "\n";
  out << (ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace entrocount
