// instance.cpp
#include "pdi/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"

namespace pdi {

using nlohmann::json;

bool Instance::is_integer(int var) const {
  return std::binary_search(integer_vars.begin(), integer_vars.end(), var);
}

const char* to_string(CutOrigin origin) {
  switch (origin) {
    case CutOrigin::kFresh: return "fresh";
    case CutOrigin::kPdc: return "pdc";
    case CutOrigin::kSpdc: return "spdc";
  }
  return "?";
}

const char* to_string(Element element) {
  switch (element) {
    case Element::kMatrix: return "A";
    case Element::kRhs: return "b";
    case Element::kObjective: return "c";
  }
  return "?";
}

Element element_from_string(const std::string& s) {
  if (s == "A" || s == "matrix") return Element::kMatrix;
  if (s == "b" || s == "rhs") return Element::kRhs;
  if (s == "c" || s == "objective") return Element::kObjective;
  throw ParseError("unknown element '" + s + "' (expected A, b, or c)");
}

Instance standardize(const InstanceDraft& draft) {
  const int n = draft.num_vars;
  if (n <= 0) {
    throw ParseError("instance '" + draft.name + "' has no variables");
  }
  if (static_cast<int>(draft.objective.size()) != n) {
    throw DimensionError("objective length does not match numVars");
  }
  if (draft.structural_rows.size() != draft.structural_rhs.size()) {
    throw DimensionError("structural row/rhs count mismatch");
  }
  Instance inst;
  inst.name = draft.name;
  inst.num_vars = n;
  inst.objective = draft.objective;
  inst.rows = Matrix(0, static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < draft.structural_rows.size(); ++i) {
    if (static_cast<int>(draft.structural_rows[i].size()) != n) {
      throw DimensionError("structural row " + std::to_string(i) +
                           " has wrong length");
    }
    inst.rows.append_row(draft.structural_rows[i]);
    inst.rhs.push_back(draft.structural_rhs[i]);
    inst.row_tags.push_back({RowKind::kStructural, -1});
  }
  for (int j = 0; j < n; ++j) {
    double lb = 0.0, ub = kDefaultUpperBound;
    if (j < static_cast<int>(draft.lower.size()) && !std::isnan(draft.lower[j])) {
      lb = draft.lower[j];
    }
    if (j < static_cast<int>(draft.upper.size()) && !std::isnan(draft.upper[j])) {
      ub = draft.upper[j];
    }
    Vector lo_row(n, 0.0), up_row(n, 0.0);
    lo_row[j] = 1.0;
    up_row[j] = -1.0;
    inst.rows.append_row(lo_row);
    inst.rhs.push_back(lb);
    inst.row_tags.push_back({RowKind::kLowerBound, j});
    inst.rows.append_row(up_row);
    inst.rhs.push_back(-ub);
    inst.row_tags.push_back({RowKind::kUpperBound, j});
  }
  inst.integer_vars = draft.integer_vars;
  std::sort(inst.integer_vars.begin(), inst.integer_vars.end());
  inst.integer_vars.erase(
      std::unique(inst.integer_vars.begin(), inst.integer_vars.end()),
      inst.integer_vars.end());
  return inst;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON parse error: ") + e.what());
  }
  try {
    InstanceDraft draft;
    draft.name = doc.at("name").get<std::string>();
    draft.num_vars = doc.at("numVars").get<int>();
    draft.objective = doc.at("objective").get<Vector>();
    const int n = draft.num_vars;
    for (const auto& row : doc.at("rows")) {
      Vector coeffs(n, 0.0);
      for (const auto& [key, val] : row.at("coeffs").items()) {
        const int idx = std::stoi(key);
        if (idx < 0 || idx >= n) {
          throw ParseError("row coefficient index " + key + " out of range");
        }
        coeffs[idx] = val.get<double>();
      }
      const double rhs = row.at("rhs").get<double>();
      const std::string sense = row.at("sense").get<std::string>();
      if (sense == ">=") {
        draft.structural_rows.push_back(coeffs);
        draft.structural_rhs.push_back(rhs);
      } else if (sense == "<=") {
        Vector neg(coeffs);
        for (double& v : neg) v = -v;
        draft.structural_rows.push_back(neg);
        draft.structural_rhs.push_back(-rhs);
      } else if (sense == "=") {
        draft.structural_rows.push_back(coeffs);
        draft.structural_rhs.push_back(rhs);
        Vector neg(coeffs);
        for (double& v : neg) v = -v;
        draft.structural_rows.push_back(neg);
        draft.structural_rhs.push_back(-rhs);
      } else {
        throw ParseError("unknown row sense '" + sense + "'");
      }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    draft.lower.assign(n, nan);
    draft.upper.assign(n, nan);
    if (doc.contains("bounds")) {
      for (const auto& b : doc.at("bounds")) {
        const int var = b.at("var").get<int>();
        if (var < 0 || var >= n) {
          throw ParseError("bound entry for variable " + std::to_string(var) +
                           " out of range");
        }
        if (b.contains("lb") && !b.at("lb").is_null()) {
          draft.lower[var] = b.at("lb").get<double>();
        }
        if (b.contains("ub") && !b.at("ub").is_null()) {
          draft.upper[var] = b.at("ub").get<double>();
        }
      }
    }
    if (doc.contains("integers")) {
      draft.integer_vars = doc.at("integers").get<std::vector<int>>();
    }
    return standardize(draft);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON field error: ") + e.what());
  }
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["name"] = inst.name;
  doc["numVars"] = inst.num_vars;
  doc["objective"] = inst.objective;
  json rows = json::array();
  for (int i = 0; i < inst.num_structural(); ++i) {
    json coeffs = json::object();
    for (int j = 0; j < inst.num_vars; ++j) {
      const double v = inst.rows(i, j);
      if (v != 0.0) {
        coeffs[std::to_string(j)] = v;
      }
    }
    rows.push_back({{"coeffs", coeffs}, {"rhs", inst.rhs[i]}, {"sense", ">="}});
  }
  doc["rows"] = rows;
  json bounds = json::array();
  for (int j = 0; j < inst.num_vars; ++j) {
    bounds.push_back({{"var", j},
                      {"lb", inst.lower_bound(j)},
                      {"ub", inst.upper_bound(j)}});
  }
  doc["bounds"] = bounds;
  doc["integers"] = inst.integer_vars;
  return doc.dump(2);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write file: " + path);
  }
  out << instance_to_json(inst) << "\n";
}

Instance load_mps(const std::string& text, const std::string& name_hint);

Instance load_instance(const std::string& path, FileFormat format) {
  const std::string text = read_file(path);
  if (format == FileFormat::kAuto) {
    format = path.size() >= 5 && path.substr(path.size() - 5) == ".json"
                 ? FileFormat::kJson
                 : FileFormat::kMps;
  }
  if (format == FileFormat::kJson) {
    return parse_instance_json(text);
  }
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return load_mps(text, stem);
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> diags;
  const int n = inst.num_vars;
  if (n <= 0) {
    diags.push_back("instance has no variables");
    return diags;
  }
  if (static_cast<int>(inst.rows.cols()) != n) {
    diags.push_back("matrix column count does not match numVars");
  }
  if (inst.rhs.size() != inst.rows.rows()) {
    diags.push_back("rhs length does not match row count");
  }
  if (inst.row_tags.size() != inst.rows.rows()) {
    diags.push_back("row tag count does not match row count");
  }
  if (static_cast<int>(inst.objective.size()) != n) {
    diags.push_back("objective length does not match numVars");
  }
  for (double v : inst.rows.data()) {
    if (!std::isfinite(v)) {
      diags.push_back("matrix contains a non-finite entry");
      break;
    }
  }
  for (double v : inst.rhs) {
    if (!std::isfinite(v)) {
      diags.push_back("rhs contains a non-finite entry");
      break;
    }
  }
  for (double v : inst.objective) {
    if (!std::isfinite(v)) {
      diags.push_back("objective contains a non-finite entry");
      break;
    }
  }
  for (int v : inst.integer_vars) {
    if (v < 0 || v >= n) {
      diags.push_back("integer variable index " + std::to_string(v) +
                      " out of range");
    }
  }
  if (!diags.empty()) {
    return diags;  // structure too broken for row-level checks
  }
  // Each variable needs exactly one lower and one upper bound row, and the
  // bound rows must be unit rows of the right sign.
  std::vector<int> lo_count(n, 0), up_count(n, 0);
  for (std::size_t i = 0; i < inst.row_tags.size(); ++i) {
    const RowTag& tag = inst.row_tags[i];
    if (tag.kind == RowKind::kStructural) continue;
    if (tag.var < 0 || tag.var >= n) {
      diags.push_back("bound row " + std::to_string(i) +
                      " references an invalid variable");
      continue;
    }
    const double want = tag.kind == RowKind::kLowerBound ? 1.0 : -1.0;
    bool unit = true;
    for (int j = 0; j < n; ++j) {
      const double v = inst.rows(i, j);
      if (j == tag.var ? v != want : v != 0.0) unit = false;
    }
    if (!unit) {
      diags.push_back("bound row " + std::to_string(i) + " for x" +
                      std::to_string(tag.var + 1) + " is not a unit row");
    }
    (tag.kind == RowKind::kLowerBound ? lo_count : up_count)[tag.var]++;
  }
  for (int j = 0; j < n; ++j) {
    if (lo_count[j] != 1) {
      diags.push_back("variable x" + std::to_string(j + 1) + " has " +
                      std::to_string(lo_count[j]) + " lower-bound rows");
    }
    if (up_count[j] != 1) {
      diags.push_back("variable x" + std::to_string(j + 1) + " has " +
                      std::to_string(up_count[j]) + " upper-bound rows");
    }
  }
  if (std::all_of(lo_count.begin(), lo_count.end(), [](int c) { return c == 1; }) &&
      std::all_of(up_count.begin(), up_count.end(), [](int c) { return c == 1; })) {
    for (int j = 0; j < n; ++j) {
      const double lb = inst.lower_bound(j);
      const double ub = inst.upper_bound(j);
      if (lb < 0.0) {
        diags.push_back("negative lower bound on x" + std::to_string(j + 1));
      }
      if (ub < lb) {
        diags.push_back("crossed bounds on x" + std::to_string(j + 1));
      }
    }
  }
  return diags;
}

Instance perturb_element(const Instance& inst, Element element,
                         std::span<const double> new_values) {
  Instance out = inst;
  const int m = inst.num_structural();
  const int n = inst.num_vars;
  switch (element) {
    case Element::kMatrix: {
      if (static_cast<int>(new_values.size()) != m * n) {
        throw DimensionError("matrix perturbation needs " +
                             std::to_string(m * n) + " values, got " +
                             std::to_string(new_values.size()));
      }
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          out.rows(i, j) = new_values[i * n + j];
        }
      }
      break;
    }
    case Element::kRhs: {
      if (static_cast<int>(new_values.size()) != m) {
        throw DimensionError("rhs perturbation needs " + std::to_string(m) +
                             " values, got " +
                             std::to_string(new_values.size()));
      }
      std::copy(new_values.begin(), new_values.end(), out.rhs.begin());
      break;
    }
    case Element::kObjective: {
      if (static_cast<int>(new_values.size()) != n) {
        throw DimensionError("objective perturbation needs " +
                             std::to_string(n) + " values, got " +
                             std::to_string(new_values.size()));
      }
      out.objective.assign(new_values.begin(), new_values.end());
      break;
    }
  }
  out.name = inst.name + "~" + to_string(element);
  return out;
}

} // namespace pdi
