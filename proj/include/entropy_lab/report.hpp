#pragma once

#include "entropy_lab/classical.hpp"
#include "entropy_lab/spectral.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace entropy_lab {

// Report rows and the file formats consumed/produced by the CLI. All output
// is deterministic: fixed 12-significant-digit decimal rendering, LF line
// endings, no timestamps (elapsed_ms is pinned to 0 so reruns are
// byte-identical).

struct ReportRow {
  std::string section;
  std::string name;
  double value = 0.0;
  bool value_infinite = false;
  double error = 0.0;
  std::string units;
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string format_value(double v, bool infinite) {
  if (infinite || std::isinf(v)) return "inf";
  return format_number(v);
}

inline std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "section,name,value,error,units,elapsed_ms\n";
  for (const auto& r : rows) {
    os << r.section << ',' << r.name << ',' << format_value(r.value, r.value_infinite)
       << ',' << format_number(r.error) << ',' << r.units << ",0\n";
  }
  return os.str();
}

inline std::string report_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["section"] = r.section;
    row["name"] = r.name;
    if (r.value_infinite || std::isinf(r.value)) {
      row["value"] = "inf";
    } else {
      row["value"] = r.value;
    }
    row["error"] = r.error;
    row["units"] = r.units;
    row["elapsed_ms"] = 0;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

inline std::vector<ReportRow> report_from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<ReportRow> rows;
  for (const auto& item : arr) {
    ReportRow r;
    r.section = item.at("section").get<std::string>();
    r.name = item.at("name").get<std::string>();
    if (item.at("value").is_string()) {
      r.value_infinite = true;
      r.value = std::numeric_limits<double>::infinity();
    } else {
      r.value = item.at("value").get<double>();
    }
    r.error = item.at("error").get<double>();
    r.units = item.at("units").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw validation_error("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Matrix file format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
inline cmatrix load_matrix_json(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  const auto dim = j.at("dim").get<Eigen::Index>();
  if (dim < 1) throw validation_error(path + ": dim must be >= 1");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  cmatrix m(dim, dim);
  if (static_cast<Eigen::Index>(re.size()) != dim ||
      (has_im && static_cast<Eigen::Index>(j.at("im").size()) != dim)) {
    throw validation_error(path + ": wrong number of rows");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& re_row = re.at(static_cast<size_t>(i));
    if (static_cast<Eigen::Index>(re_row.size()) != dim) {
      throw validation_error(path + ": wrong row length");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      double im_v = 0.0;
      if (has_im) {
        const auto& im_row = j.at("im").at(static_cast<size_t>(i));
        if (static_cast<Eigen::Index>(im_row.size()) != dim) {
          throw validation_error(path + ": wrong row length");
        }
        im_v = im_row.at(static_cast<size_t>(k)).get<double>();
      }
      m(i, k) = cdouble(re_row.at(static_cast<size_t>(k)).get<double>(), im_v);
    }
  }
  return m;
}

inline void save_matrix_json(const cmatrix& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["dim"] = m.rows();
  nlohmann::ordered_json re = nlohmann::ordered_json::array();
  nlohmann::ordered_json im = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json re_row = nlohmann::ordered_json::array();
    nlohmann::ordered_json im_row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  write_text_file(path, j.dump(1) + "\n");
}

// Distribution file format: CSV with header atom,weight[,density]. Without a
// density column the weights are read as a density over the counting base.
inline DiscreteDensity load_distribution_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw validation_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool has_density = false;
  if (line == "atom,weight,density") {
    has_density = true;
  } else if (line != "atom,weight") {
    throw validation_error(path + ": expected header 'atom,weight[,density]'");
  }
  std::vector<std::string> atoms;
  std::vector<double> weights, densities;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string atom, w_str, d_str;
    if (!std::getline(row, atom, ',') || !std::getline(row, w_str, ',')) {
      throw validation_error(path + ": malformed row " + std::to_string(line_no));
    }
    try {
      weights.push_back(std::stod(w_str));
      if (has_density) {
        if (!std::getline(row, d_str, ',')) {
          throw validation_error(path + ": missing density in row " +
                                 std::to_string(line_no));
        }
        densities.push_back(std::stod(d_str));
      }
    } catch (const std::invalid_argument&) {
      throw validation_error(path + ": malformed number in row " + std::to_string(line_no));
    }
    atoms.push_back(atom);
  }
  if (has_density) {
    return DiscreteDensity(DiscreteMeasure(std::move(atoms), std::move(weights)),
                           std::move(densities));
  }
  std::vector<double> ones(atoms.size(), 1.0);
  return DiscreteDensity(DiscreteMeasure(std::move(atoms), std::move(ones)),
                         std::move(weights));
}

// Grid spec "lo:hi:n" -> n log-spaced points on [lo, hi].
inline std::vector<double> parse_grid_spec(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  long n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw validation_error("grid spec must look like lo:hi:n, got '" + spec + "'");
  }
  if (n < 1 || n > 1000000) throw validation_error("grid spec: n out of range");
  return log_grid(lo, hi, static_cast<int>(n));
}

}  // namespace entropy_lab
