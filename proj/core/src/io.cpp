#include "phs1d/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "phs1d/errors.hpp"

namespace phs1d {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw IoError("failed to format a floating-point value");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("malformed floating-point value '" + s + "'");
  }
  return v;
}

void write_matrix(const std::string& path, const std::string& name, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

NamedMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string tag;
  NamedMatrix nm;
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> tag >> nm.name >> rows >> cols) || tag != "matrix" || rows < 0 || cols < 0) {
    throw IoError("'" + path + "' is not a labeled matrix file");
  }
  nm.m.resize(rows, cols);
  std::string token;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> token)) throw IoError("'" + path + "' ends before all entries are read");
      nm.m(i, j) = parse_double(token);
    }
  }
  return nm;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw IoError("csv row width does not match the header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_ledger_csv(const std::string& path, const std::vector<LedgerRow>& rows) {
  std::vector<std::vector<double>> data;
  data.reserve(rows.size());
  for (const auto& r : rows) {
    data.push_back({r.t, r.H, r.dH_dt, r.boundary_power, r.boundary_energy_rate, r.dissipation,
                    r.residual});
  }
  write_csv(path,
            {"t", "H", "dH_dt", "boundary_power", "boundary_energy_rate", "dissipation",
             "residual"},
            data);
}

}  // namespace phs1d
