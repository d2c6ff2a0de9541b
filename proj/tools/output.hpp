#pragma once

// Result rows shared by the compute and sweep commands, and their CSV/JSON
// encodings. CSV numbers carry 17 significant digits so that parsing and
// re-emitting a file reproduces it byte for byte.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/closed_form.hpp"
#include "casimir/errors.hpp"
#include "casimir/units.hpp"
#include "json.hpp"

namespace casimir::cli {

struct ResultRow {
  double variable = 0.0;
  double e0 = 0.0;
  double delta_e = 0.0;
  double e_surface = 0.0;
  double total = 0.0;
  double force = 0.0;
  std::string method;
  double error_estimate = 0.0;
  double force_error_estimate = 0.0;
  bool outside_validity = false;
  bool kappa_clamped = false;

  int validity_flag() const { return (outside_validity || kappa_clamped) ? 1 : 0; }
};

inline ResultRow make_row(double variable, const EnergyBreakdown& e, double force,
                          double force_error) {
  return {variable,  e.e0,  e.delta_e, e.e_surface,      e.total,
          force,     std::string(to_string(e.method)), e.error_estimate, force_error,
          e.outside_validity, e.kappa_clamped};
}

inline ResultRow to_units(ResultRow r, const UnitSystem& u) {
  r.e0 = convert_energy(r.e0, u);
  r.delta_e = convert_energy(r.delta_e, u);
  r.e_surface = convert_energy(r.e_surface, u);
  r.total = convert_energy(r.total, u);
  r.error_estimate = convert_energy(r.error_estimate, u);
  r.force = convert_force(r.force, u);
  r.force_error_estimate = convert_force(r.force_error_estimate, u);
  return r;
}

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::string& variable_name,
                      const std::vector<ResultRow>& rows) {
  os << variable_name
     << ",e0,delta_e,e_surface,total,force,method,error_estimate,validity_flag\n";
  for (const auto& r : rows) {
    os << csv_number(r.variable) << ',' << csv_number(r.e0) << ',' << csv_number(r.delta_e)
       << ',' << csv_number(r.e_surface) << ',' << csv_number(r.total) << ','
       << csv_number(r.force) << ',' << r.method << ',' << csv_number(r.error_estimate) << ','
       << r.validity_flag() << '\n';
  }
}

struct CsvTable {
  std::string variable_name;
  std::vector<ResultRow> rows;
};

/// Inverse of write_csv. The validity flag is read back into outside_validity.
inline CsvTable parse_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw FileError("csv: empty input");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw FileError("csv: malformed header");
  table.variable_name = line.substr(0, comma);

  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) {
      throw FileError("csv: line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " fields, expected 9");
    }
    try {
      ResultRow r;
      r.variable = std::stod(cells[0]);
      r.e0 = std::stod(cells[1]);
      r.delta_e = std::stod(cells[2]);
      r.e_surface = std::stod(cells[3]);
      r.total = std::stod(cells[4]);
      r.force = std::stod(cells[5]);
      r.method = cells[6];
      r.error_estimate = std::stod(cells[7]);
      r.outside_validity = std::stoi(cells[8]) != 0;
      table.rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw FileError("csv: malformed number on line " + std::to_string(line_no));
    }
  }
  return table;
}

inline nlohmann::ordered_json to_json(const ResultRow& r, const std::string& variable_name) {
  nlohmann::ordered_json j;
  j[variable_name] = r.variable;
  j["method"] = r.method;
  j["e0"] = r.e0;
  j["delta_e"] = r.delta_e;
  j["e_surface"] = r.e_surface;
  j["total"] = r.total;
  j["force"] = r.force;
  j["error_estimate"] = r.error_estimate;
  j["force_error_estimate"] = r.force_error_estimate;
  j["outside_validity"] = r.outside_validity;
  j["kappa_clamped"] = r.kappa_clamped;
  j["validity_flag"] = r.validity_flag();
  return j;
}

}  // namespace casimir::cli
