#include "renyi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace renyi::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const json& re = j.at("re");
  const Index n = static_cast<Index>(re.size());
  const Index cols = n > 0 ? static_cast<Index>(re.at(0).size()) : 0;
  CMatrix m = CMatrix::Zero(n, cols);
  const bool hasIm = j.contains("im");
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(re.at(static_cast<std::size_t>(i)).size()) != cols) throw ValidationError("ragged matrix");
    for (Index k = 0; k < cols; ++k) {
      const auto ui = static_cast<std::size_t>(i), uk = static_cast<std::size_t>(k);
      m(i, k) = {re.at(ui).at(uk).get<double>(), hasIm ? j.at("im").at(ui).at(uk).get<double>() : 0.0};
    }
  }
  return m;
}

DensityOperator<> density_from_json(const json& j) {
  std::vector<int> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<int>>();
  try {
    if (j.contains("matrix")) return DensityOperator<>(matrix_from_json(j.at("matrix")), labels);
    if (j.contains("vector")) {
      const auto re = j.at("vector").at("re").get<std::vector<double>>();
      std::vector<double> im(re.size(), 0.0);
      if (j.at("vector").contains("im")) im = j.at("vector").at("im").get<std::vector<double>>();
      if (im.size() != re.size()) throw ValidationError("vector parts differ in length");
      CVector v(static_cast<Index>(re.size()));
      for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Index>(i)) = {re[i], im[i]};
      return DensityOperator<>::pure(v, labels);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed state: ") + e.what());
  }
  throw ValidationError("state needs a \"matrix\" or \"vector\" entry");
}

json density_to_json(const DensityOperator<>& rho) {
  return {{"matrix", matrix_to_json(rho.matrix())}, {"labels", rho.labels()}};
}

DensityOperator<> load_density(const std::string& path) { return density_from_json(read_json_file(path)); }

SpectrumSpec spectrum_from_json(const json& j) {
  SpectrumSpec s;
  try {
    s.levels = j.at("levels").get<std::vector<double>>();
    if (j.contains("degeneracy")) s.degeneracy = j.at("degeneracy").get<Index>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed spectrum: ") + e.what());
  }
  if (s.levels.empty() || s.degeneracy < 1) throw ValidationError("spectrum needs levels and positive degeneracy");
  return s;
}

SpectrumSpec load_spectrum(const std::string& path) { return spectrum_from_json(read_json_file(path)); }

json distribution_to_json(const DiscreteDistribution& d) {
  return {{"labels", d.labels}, {"probs", std::vector<double>(d.probs.data(), d.probs.data() + d.probs.size())}};
}

DiscreteDistribution distribution_from_json(const json& j) {
  const auto p = j.at("probs").get<std::vector<double>>();
  std::vector<int> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<int>>();
  return DiscreteDistribution(Eigen::Map<const VectorXd>(p.data(), static_cast<Index>(p.size())), labels);
}

json density_to_json(const CircularDensity& d) {
  return {{"period", d.period},
          {"periodStart", d.periodStart},
          {"gridSize", d.grid_size()},
          {"values", std::vector<double>(d.values.data(), d.values.data() + d.values.size())}};
}

CircularDensity circular_density_from_json(const json& j) {
  const auto v = j.at("values").get<std::vector<double>>();
  if (j.contains("gridSize") && j.at("gridSize").get<std::size_t>() != v.size())
    throw ValidationError("gridSize differs from value count");
  return CircularDensity(Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size())), j.at("period").get<double>(),
                         j.value("periodStart", 0.0));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

void write_distribution_csv(std::ostream& out, const DiscreteDistribution& d) {
  write_csv_row(out, {"label", "probability"});
  for (Index i = 0; i < d.size(); ++i)
    write_csv_row(out, {std::to_string(d.labels[static_cast<std::size_t>(i)]), csv_number(d.probs(i))});
}

void write_distribution_csv(std::ostream& out, const CircularDensity& d) {
  write_csv_row(out, {"angle", "density"});
  for (Index i = 0; i < d.grid_size(); ++i) write_csv_row(out, {csv_number(d.point(i)), csv_number(d.values(i))});
}

}  // namespace renyi::io
