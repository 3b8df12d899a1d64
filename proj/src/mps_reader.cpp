// mps_reader.cpp
// Minimal fixed-form MPS subset: NAME, ROWS (N/G/L/E), COLUMNS with
// INTORG/INTEND markers, RHS, BOUNDS (UP/LO/FX/BV/PL). Equality rows are
// split into two >= rows. Anything else (RANGES, SOS, free/negative-lower
// variables, OBJSENSE MAX) is rejected with an explicit unsupported error.
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdi/errors.hpp"
#include "pdi/instance.hpp"

namespace pdi {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    tokens.push_back(tok);
  }
  return tokens;
}

double parse_number(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) {
      throw std::invalid_argument(tok);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError("MPS line " + std::to_string(line_no) +
                     ": expected a number, got '" + tok + "'");
  }
}

struct MpsRow {
  char sense = 'G';
  Vector coeffs;
  double rhs = 0.0;
};

} // namespace

Instance load_mps(const std::string& text, const std::string& name_hint) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds };
  Section section = Section::kNone;

  std::string problem_name = name_hint;
  std::map<std::string, int> row_index;     // constraint name -> index
  std::vector<MpsRow> mps_rows;
  std::string objective_row;
  std::map<std::string, int> col_index;
  std::vector<std::string> col_names;
  std::vector<double> obj_coeffs;
  std::vector<int> integer_vars;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lower, upper;
  bool in_integer_block = false;

  auto get_col = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) {
      return it->second;
    }
    const int idx = static_cast<int>(col_names.size());
    col_index.emplace(name, idx);
    col_names.push_back(name);
    obj_coeffs.push_back(0.0);
    lower.push_back(nan);
    upper.push_back(nan);
    if (in_integer_block) {
      integer_vars.push_back(idx);
    }
    for (auto& row : mps_rows) {
      row.coeffs.push_back(0.0);
    }
    return idx;
  };

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') {
      continue;
    }
    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      continue;
    }
    if (header) {
      const std::string& key = tokens[0];
      if (key == "NAME") {
        if (tokens.size() > 1) problem_name = tokens[1];
        continue;
      }
      if (key == "ROWS") { section = Section::kRows; continue; }
      if (key == "COLUMNS") { section = Section::kColumns; continue; }
      if (key == "RHS") { section = Section::kRhs; continue; }
      if (key == "BOUNDS") { section = Section::kBounds; continue; }
      if (key == "ENDATA") { break; }
      if (key == "RANGES" || key == "SOS" || key == "OBJSENSE" ||
          key == "OBJSENCE") {
        throw UnsupportedError("MPS line " + std::to_string(line_no) +
                               ": unsupported section " + key);
      }
      throw ParseError("MPS line " + std::to_string(line_no) +
                       ": unknown section " + key);
    }
    switch (section) {
      case Section::kNone:
        throw ParseError("MPS line " + std::to_string(line_no) +
                         ": data before any section header");
      case Section::kRows: {
        if (tokens.size() < 2) {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": ROWS entry needs a type and a name");
        }
        const std::string type = tokens[0];
        const std::string& rname = tokens[1];
        if (type == "N") {
          if (objective_row.empty()) {
            objective_row = rname;
          } else {
            throw UnsupportedError("MPS line " + std::to_string(line_no) +
                                   ": multiple N rows");
          }
        } else if (type == "G" || type == "L" || type == "E") {
          row_index.emplace(rname, static_cast<int>(mps_rows.size()));
          MpsRow row;
          row.sense = type[0];
          row.coeffs.assign(col_names.size(), 0.0);
          mps_rows.push_back(std::move(row));
        } else {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": unknown row type " + type);
        }
        break;
      }
      case Section::kColumns: {
        if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
          if (tokens[2] == "'INTORG'") in_integer_block = true;
          else if (tokens[2] == "'INTEND'") in_integer_block = false;
          else {
            throw ParseError("MPS line " + std::to_string(line_no) +
                             ": unknown marker " + tokens[2]);
          }
          break;
        }
        if (tokens.size() < 3 || tokens.size() % 2 == 0) {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": malformed COLUMNS entry");
        }
        const int col = get_col(tokens[0]);
        for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
          const double value = parse_number(tokens[k + 1], line_no);
          if (tokens[k] == objective_row) {
            obj_coeffs[col] = value;
          } else {
            auto it = row_index.find(tokens[k]);
            if (it == row_index.end()) {
              throw ParseError("MPS line " + std::to_string(line_no) +
                               ": unknown row " + tokens[k]);
            }
            mps_rows[it->second].coeffs[col] = value;
          }
        }
        break;
      }
      case Section::kRhs: {
        if (tokens.size() < 3 || tokens.size() % 2 == 0) {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": malformed RHS entry");
        }
        for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
          if (tokens[k] == objective_row) {
            continue;  // objective offset ignored
          }
          auto it = row_index.find(tokens[k]);
          if (it == row_index.end()) {
            throw ParseError("MPS line " + std::to_string(line_no) +
                             ": unknown row " + tokens[k]);
          }
          mps_rows[it->second].rhs = parse_number(tokens[k + 1], line_no);
        }
        break;
      }
      case Section::kBounds: {
        if (tokens.size() < 3) {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": malformed BOUNDS entry");
        }
        const std::string& type = tokens[0];
        const int col = get_col(tokens[2]);
        if (type == "UP") {
          upper[col] = parse_number(tokens.at(3), line_no);
        } else if (type == "LO") {
          lower[col] = parse_number(tokens.at(3), line_no);
        } else if (type == "FX") {
          const double v = parse_number(tokens.at(3), line_no);
          lower[col] = v;
          upper[col] = v;
        } else if (type == "BV") {
          lower[col] = 0.0;
          upper[col] = 1.0;
          integer_vars.push_back(col);
        } else if (type == "PL") {
          // default upper bound applies
        } else if (type == "MI" || type == "FR" || type == "UI" ||
                   type == "LI") {
          throw UnsupportedError("MPS line " + std::to_string(line_no) +
                                 ": unsupported bound type " + type);
        } else {
          throw ParseError("MPS line " + std::to_string(line_no) +
                           ": unknown bound type " + type);
        }
        break;
      }
    }
  }

  InstanceDraft draft;
  draft.name = problem_name;
  draft.num_vars = static_cast<int>(col_names.size());
  draft.objective = obj_coeffs;
  draft.lower = lower;
  draft.upper = upper;
  draft.integer_vars = integer_vars;
  for (auto& row : mps_rows) {
    row.coeffs.resize(col_names.size(), 0.0);
    if (row.sense == 'G') {
      draft.structural_rows.push_back(row.coeffs);
      draft.structural_rhs.push_back(row.rhs);
    } else if (row.sense == 'L') {
      Vector neg(row.coeffs);
      for (double& v : neg) v = -v;
      draft.structural_rows.push_back(std::move(neg));
      draft.structural_rhs.push_back(-row.rhs);
    } else {  // E: split into >= and <=
      draft.structural_rows.push_back(row.coeffs);
      draft.structural_rhs.push_back(row.rhs);
      Vector neg(row.coeffs);
      for (double& v : neg) v = -v;
      draft.structural_rows.push_back(std::move(neg));
      draft.structural_rhs.push_back(-row.rhs);
    }
  }
  return standardize(draft);
}

} // namespace pdi
