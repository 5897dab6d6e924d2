#pragma once

#include "etf/bounds.hpp"
#include "etf/witness.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace etf::io {

using nlohmann::json;

/// Frame file schema: { "d": int, "n": int, "vectors": [ [ [re, im] × d ] × n ] }.
/// Vector phases are canonicalized before writing.
json frame_to_json(const EquiangularTightFrame& frame);
EquiangularTightFrame frame_from_json(const json& j, double tol = kValidationTol);

/// Density-matrix schema: { "d": int, "matrix": [ [ [re, im] × d ] × d ] };
/// the bipartite variant adds "dA" and "dB".
json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j, double tol = kValidationTol);

json bipartite_to_json(const BipartiteDensityMatrix& rho);
BipartiteDensityMatrix bipartite_from_json(const json& j, double tol = kValidationTol);
bool is_bipartite_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// CSV with header `bound_name,alpha,bound_value,achieved,slack,saturated`.
std::string to_csv(const std::vector<BoundReport>& reports);
/// CSV with header `criterion,alpha,statistic,threshold,violated`.
std::string to_csv(const std::vector<WitnessVerdict>& verdicts);
/// CSV with header `outcome,probability`.
std::string to_csv(const OutcomeDistribution& dist);

/// %.17g rendering used in CSV output.
std::string format_number(double x);
/// "inf" for the infinite order, plain %g otherwise; empty for nullopt.
std::string format_alpha(const std::optional<OrderAlpha>& alpha);

}  // namespace etf::io
