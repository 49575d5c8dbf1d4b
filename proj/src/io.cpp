#include "entrocount/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "entrocount/errors.hpp"

namespace entrocount::io {

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw IngestionError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IngestionError(std::string("field \"") + key + "\": " + e.what());
  }
}

std::vector<std::vector<std::size_t>> one_based_lists(
    const std::vector<std::vector<long long>>& lists, std::size_t n, const char* what) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& list : lists) {
    std::vector<std::size_t> converted;
    for (long long e : list) {
      if (e < 1 || std::size_t(e) > n)
        throw IngestionError(std::string(what) + " " + std::to_string(e) +
                             " outside 1.." + std::to_string(n));
      converted.push_back(std::size_t(e - 1));
    }
    out.push_back(std::move(converted));
  }
  return out;
}

}  // namespace

std::string read_file_or_inline(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  if (!in) throw IngestionError("cannot open " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestionError(std::string("invalid JSON: ") + e.what());
  }
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double parse_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw IngestionError("expected a number");
}

JointTable parse_joint_table(const json& j, bool renormalize) {
  auto shape = get_field<std::vector<std::size_t>>(j, "shape");
  auto probs = get_field<std::vector<double>>(j, "probs");
  try {
    return renormalize ? JointTable::renormalized(std::move(shape), std::move(probs))
                       : JointTable(std::move(shape), std::move(probs));
  } catch (const ValidationError& e) {
    throw IngestionError(std::string("joint table: ") + e.what());
  }
}

ProbabilityInput parse_probability_input(const json& j, bool renormalize) {
  if (j.is_array()) {
    std::vector<double> probs;
    try {
      probs = j.get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw IngestionError(std::string("distribution: ") + e.what());
    }
    try {
      return renormalize ? DiscreteDistribution::renormalized(std::move(probs))
                         : DiscreteDistribution(std::move(probs));
    } catch (const ValidationError& e) {
      throw IngestionError(std::string("distribution: ") + e.what());
    }
  }
  return parse_joint_table(j, renormalize);
}

json to_json(const JointTable& t) {
  return {{"shape", t.shape()},
          {"probs", std::vector<double>(t.probs().begin(), t.probs().end())}};
}

SetFamily parse_set_family(const json& j) {
  const auto n = get_field<std::size_t>(j, "n");
  const auto sets = get_field<std::vector<std::vector<long long>>>(j, "sets");
  try {
    return SetFamily::from_lists(n, one_based_lists(sets, n, "set element"));
  } catch (const ArgumentError& e) {
    throw IngestionError(std::string("set family: ") + e.what());
  }
}

json to_json(const SetFamily& f) {
  json sets = json::array();
  for (ElementMask s : f.sets()) {
    json list = json::array();
    for (std::size_t e = 0; e < f.ground_size(); ++e)
      if ((s >> e) & 1u) list.push_back(e + 1);
    sets.push_back(std::move(list));
  }
  return {{"n", f.ground_size()}, {"sets", std::move(sets)}};
}

CoverFamily parse_cover(const json& j) {
  const auto n = get_field<std::size_t>(j, "n");
  const auto groups = get_field<std::vector<std::vector<long long>>>(j, "groups");
  try {
    return CoverFamily(n, one_based_lists(groups, n, "cover coordinate"));
  } catch (const ArgumentError& e) {
    throw IngestionError(std::string("cover: ") + e.what());
  }
}

json to_json(const CoverFamily& c) {
  json groups = json::array();
  for (const auto& g : c.groups()) {
    json list = json::array();
    for (std::size_t e : g) list.push_back(e + 1);
    groups.push_back(std::move(list));
  }
  return {{"n", c.coordinates()}, {"groups", std::move(groups)}, {"k", c.k()}};
}

BinaryMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string tok; tokens >> tok;) parts.push_back(tok);
    if (parts.empty()) continue;

    // A single token longer than one character is a compact row.
    std::string cells;
    if (parts.size() == 1) {
      cells = parts.front();
    } else {
      for (const auto& p : parts) {
        if (p.size() != 1)
          throw IngestionError("line " + std::to_string(line_no) + ": bad token '" + p + "'");
        cells += p;
      }
    }
    std::vector<int> row;
    for (char c : cells) {
      if (c != '0' && c != '1')
        throw IngestionError("line " + std::to_string(line_no) + ": entries must be 0 or 1");
      row.push_back(c - '0');
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IngestionError("line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  return BinaryMatrix::from_rows(rows);
}

BinaryMatrix parse_graph(const json& j) {
  const auto n = get_field<std::size_t>(j, "n");
  const auto raw = get_field<std::vector<std::vector<long long>>>(j, "edges");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : raw) {
    if (e.size() != 2 || e[0] < 1 || e[1] < 1)
      throw IngestionError("edges must be pairs of positive vertex indices");
    edges.emplace_back(std::size_t(e[0]), std::size_t(e[1]));
  }
  return from_bipartite_graph(edges, n);
}

json to_json(const BinaryMatrix& m) {
  json rows = json::array();
  std::istringstream in(m.to_string());
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

BinaryMatrix parse_matrix_json(const json& j) {
  if (!j.is_array()) throw IngestionError("matrix must be an array of row strings");
  std::string text;
  for (const auto& row : j) {
    if (!row.is_string()) throw IngestionError("matrix rows must be strings");
    text += row.get<std::string>() + "\n";
  }
  return parse_matrix_text(text);
}

json to_json(const BoundReport& r) {
  json out = {{"alpha", r.alpha.value()},
              {"rhs", r.rhs_entropy_space},
              {"ceiling", number(r.ceiling)},
              {"vacuous", r.vacuous}};
  if (r.integer_ceiling && *r.integer_ceiling < 9.0e15)
    out["integer_ceiling"] = static_cast<std::uint64_t>(*r.integer_ceiling);
  else if (r.integer_ceiling)
    out["integer_ceiling"] = *r.integer_ceiling;
  else
    out["integer_ceiling"] = nullptr;
  return out;
}

json to_json(const OptimizationResult& r) {
  json trace = json::array();
  for (const auto& [a, c] : r.trace) trace.push_back({a, number(c)});
  return {{"best_alpha", r.best_alpha.value()},
          {"best_ceiling", number(r.best_ceiling)},
          {"trace", std::move(trace)}};
}

json to_json(const CheckResult& r) {
  return {{"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"holds", r.holds},
          {"slack", number(r.slack())}};
}

json to_json(const IntersectionCheck& r) {
  return {{"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"holds", r.holds},
          {"slack", number(r.rhs - r.lhs)},
          {"lambda", r.lambda},
          {"precondition_met", r.precondition_met}};
}

}  // namespace entrocount::io
