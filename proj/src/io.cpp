#include "etf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace etf::io {

namespace {

json complex_rows_to_json(const ComplexMatrix& m, bool column_major) {
  // column_major: emit one row per column (frame vectors); otherwise one row
  // per matrix row.
  json rows = json::array();
  const Eigen::Index outer = column_major ? m.cols() : m.rows();
  const Eigen::Index inner = column_major ? m.rows() : m.cols();
  for (Eigen::Index i = 0; i < outer; ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < inner; ++j) {
      const Complex z = column_major ? m(j, i) : m(i, j);
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex parse_complex(const json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw std::runtime_error("expected [re, im] number pair");
  }
  return Complex(pair[0].get<double>(), pair[1].get<double>());
}

ComplexMatrix parse_complex_rows(const json& rows, Eigen::Index outer, Eigen::Index inner,
                                 bool column_major) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != outer) {
    throw std::runtime_error("row count does not match declared dimensions");
  }
  ComplexMatrix m(column_major ? inner : outer, column_major ? outer : inner);
  for (Eigen::Index i = 0; i < outer; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != inner) {
      throw std::runtime_error("row length does not match declared dimensions");
    }
    for (Eigen::Index j = 0; j < inner; ++j) {
      const Complex z = parse_complex(row[static_cast<std::size_t>(j)]);
      if (column_major) {
        m(j, i) = z;
      } else {
        m(i, j) = z;
      }
    }
  }
  return m;
}

int require_positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    throw std::runtime_error(std::string("missing or invalid \"") + key + "\" field");
  }
  return j[key].get<int>();
}

}  // namespace

json frame_to_json(const EquiangularTightFrame& frame) {
  json j;
  j["d"] = frame.dim();
  j["n"] = frame.count();
  j["vectors"] = complex_rows_to_json(canonical_phases(frame.vectors()), true);
  return j;
}

EquiangularTightFrame frame_from_json(const json& j, double tol) {
  const int d = require_positive_int(j, "d");
  const int n = require_positive_int(j, "n");
  if (!j.contains("vectors")) throw std::runtime_error("missing \"vectors\" field");
  return EquiangularTightFrame(parse_complex_rows(j["vectors"], n, d, true), tol);
}

json density_to_json(const DensityMatrix& rho) {
  json j;
  j["d"] = static_cast<int>(rho.dim());
  j["matrix"] = complex_rows_to_json(rho.matrix(), false);
  return j;
}

DensityMatrix density_from_json(const json& j, double tol) {
  const int d = require_positive_int(j, "d");
  if (!j.contains("matrix")) throw std::runtime_error("missing \"matrix\" field");
  return DensityMatrix(parse_complex_rows(j["matrix"], d, d, false), tol);
}

json bipartite_to_json(const BipartiteDensityMatrix& rho) {
  json j = density_to_json(rho.state());
  j["dA"] = rho.dim_a();
  j["dB"] = rho.dim_b();
  return j;
}

BipartiteDensityMatrix bipartite_from_json(const json& j, double tol) {
  const int dim_a = require_positive_int(j, "dA");
  const int dim_b = require_positive_int(j, "dB");
  DensityMatrix rho = density_from_json(j, tol);
  return BipartiteDensityMatrix(dim_a, dim_b, rho.matrix(), tol);
}

bool is_bipartite_json(const json& j) { return j.contains("dA") && j.contains("dB"); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string format_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string format_alpha(const std::optional<OrderAlpha>& alpha) {
  if (!alpha) return "";
  if (alpha->is_infinity()) return "inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", alpha->value());
  return buffer;
}

std::string to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << "bound_name,alpha,bound_value,achieved,slack,saturated\n";
  for (const BoundReport& r : reports) {
    out << r.bound_name << ',' << format_alpha(r.alpha) << ',' << format_number(r.bound_value)
        << ',' << format_number(r.achieved_value) << ',' << format_number(r.slack) << ','
        << (r.saturated ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<WitnessVerdict>& verdicts) {
  std::ostringstream out;
  out << "criterion,alpha,statistic,threshold,violated\n";
  for (const WitnessVerdict& v : verdicts) {
    out << v.criterion << ',' << format_alpha(v.alpha) << ',' << format_number(v.statistic)
        << ',' << format_number(v.threshold) << ',' << (v.violated ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string to_csv(const OutcomeDistribution& dist) {
  std::ostringstream out;
  out << "outcome,probability\n";
  for (Eigen::Index j = 0; j < dist.probs.size(); ++j) {
    out << j << ',' << format_number(dist.probs(j)) << '\n';
  }
  return out.str();
}

}  // namespace etf::io
