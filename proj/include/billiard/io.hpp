#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "billiard/analysis.hpp"
#include "billiard/helmholtz.hpp"
#include "billiard/raytrace.hpp"

namespace billiard {

// Last line of every artifact; a file without it is incomplete.
inline constexpr const char* kCompletionMarker = "# complete";

// Writes header (each line prefixed "# ") and body through a temporary
// file that is renamed into place once the marker has been written.
void write_artifact(const std::filesystem::path& path, const std::string& header,
                    const std::string& body);

// Shortest round-trip decimal form.
std::string format_number(double v);

std::string spectrum_csv(const ComplexSpectrum& spectrum);
// k, f_GHz, ReT, ImT, Tsq with T = 2 sqrt(kappa Im g) / (1 - i kappa g).
std::string semiclassical_csv(const ComplexSpectrum& spectrum);
std::string peaks_csv(const std::vector<Peak>& peaks);
std::string return_spectrum_csv(const ReturnSpectrum& spectrum);
std::string orbit_catalog_csv(const std::vector<ClosedOrbit>& catalog, double radius);
std::string breakdown_csv(const ReturnAmplitude& amplitude);

enum class FieldQuantity { RePsi, ImPsi, E2, H2 };
const char* to_string(FieldQuantity q);
// Row per y, column per x; masked nodes written as nan.
std::string field_matrix(const FieldMap& field, FieldQuantity q);
std::string shift_matrix(const ShiftMap& map);
std::string contour_matrix(const ShiftMap& map);
std::string grid_header(double x0, double y0, double h, int nx, int ny);

}  // namespace billiard
