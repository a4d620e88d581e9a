#include "nmd/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace nmd {

namespace {

using json = nlohmann::json;

json parse_or_throw(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

// Raw JSON number literal so the %.9g formatting survives serialization.
std::string number_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_number(values[i]);
  }
  return out + "]";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string density_to_json(const DensityMatrix& rho) {
  json out;
  for (const char* part : {"re", "im"}) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
      json row = json::array();
      for (int j = 0; j < 4; ++j) row.push_back(part[0] == 'r' ? rho(i, j).real() : rho(i, j).imag());
      rows.push_back(row);
    }
    out[part] = rows;
  }
  return out.dump();
}

DensityMatrix density_from_json(std::string_view text) {
  const json j = parse_or_throw(text, "density matrix JSON");
  if (!j.is_object() || !j.contains("re"))
    throw std::invalid_argument("density matrix JSON needs an \"re\" 4x4 array");
  TwoQubitMatrix m = TwoQubitMatrix::Zero();
  auto read_part = [&](const char* key, bool imaginary) {
    if (!j.contains(key)) return;
    const json& rows = j.at(key);
    if (!rows.is_array() || rows.size() != 4)
      throw std::invalid_argument(std::string("density matrix \"") + key + "\" must have 4 rows");
    for (int r = 0; r < 4; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || row.size() != 4)
        throw std::invalid_argument(std::string("density matrix \"") + key + "\" rows must have 4 entries");
      for (int c = 0; c < 4; ++c) {
        if (!row[c].is_number()) throw std::invalid_argument("density matrix entries must be numbers");
        const double v = row[c].get<double>();
        m(r, c) += imaginary ? Complex{0.0, v} : Complex{v, 0.0};
      }
    }
  };
  read_part("re", false);
  read_part("im", true);
  return DensityMatrix(m);
}

std::string bell_to_json(const BellCoefficients& c) {
  return "[" + format_number(c.cx) + ", " + format_number(c.cy) + ", " + format_number(c.cz) + "]";
}

BellCoefficients bell_from_json(std::string_view text) {
  const json j = parse_or_throw(text, "Bell coefficient JSON");
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
    throw std::invalid_argument("Bell coefficients must be a JSON array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string report_to_json(const CorrelationReport& r) {
  return std::string("{\"I\": ") + format_number(r.mutual_information) +
         ", \"C\": " + format_number(r.classical) + ", \"D\": " + format_number(r.discord) +
         ", \"lambda_max\": " + format_number(r.lambda_max) + ", \"axis\": \"" +
         axis_name(r.dominant_axis) + "\"}";
}

std::string report_csv_header() { return "I,C,D"; }

std::string report_csv_row(const CorrelationReport& r) {
  return format_number(r.mutual_information) + "," + format_number(r.classical) + "," +
         format_number(r.discord);
}

void write_csv(std::ostream& os, const Table& table) {
  os << "# " << table.title;
  for (const auto& m : table.meta) os << " | " << m;
  os << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  json meta = json::object();
  meta["title"] = table.title;
  for (const auto& m : table.meta) {
    const auto eq = m.find('=');
    if (eq == std::string::npos)
      meta["note"] = m;
    else
      meta[m.substr(0, eq)] = m.substr(eq + 1);
  }
  os << "{\n  \"meta\": " << meta.dump() << ",\n  \"columns\": " << json(table.columns).dump()
     << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << number_array(table.rows[i]);
  os << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace nmd
