#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "renyi/entropy.hpp"
#include "renyi/spectral.hpp"

namespace renyi::io {

using nlohmann::json;

// {"matrix": {"re": [[...]], "im": [[...]]}} or {"vector": {"re": [...], "im": [...]}}, optional "labels".
DensityOperator<> density_from_json(const json& j);
json density_to_json(const DensityOperator<>& rho);
DensityOperator<> load_density(const std::string& path);

struct SpectrumSpec {
  std::vector<double> levels;
  Index degeneracy = 1;
};
SpectrumSpec spectrum_from_json(const json& j);
SpectrumSpec load_spectrum(const std::string& path);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json distribution_to_json(const DiscreteDistribution& d);
DiscreteDistribution distribution_from_json(const json& j);
json density_to_json(const CircularDensity& d);
CircularDensity circular_density_from_json(const json& j);

json read_json_file(const std::string& path);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_number(double v);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_distribution_csv(std::ostream& out, const DiscreteDistribution& d);
void write_distribution_csv(std::ostream& out, const CircularDensity& d);

}  // namespace renyi::io
