#pragma once

// JSON model files and deterministic report printing.
//
// File schema (weights and multiplicities are JSON integers):
//   {
//     "dim": 1,
//     "fixed_points": [
//       {"name": "p0", "weights": [1], "fiber": [[0, 1]]},
//       {"name": "p1", "weights": [-1], "fiber": [[-3, 1]]}
//     ],
//     "cohomology": {"0": [[-3, 1], [0, 1]], "1": []}   // optional block
//   }
//
// Reports print characters as sorted "(weight, value)" rows under a window
// header; the window is part of the meaning of every truncated series.

#include <iosfwd>
#include <optional>
#include <string>

#include "eqmorse/geometry.hpp"

namespace eqmorse {

struct ParsedModel {
  ManifoldModel model;
  std::optional<CohomologyData> cohomology;
};

// Throws ModelError with a field path on any schema violation.
ParsedModel parse_model_text(const std::string& text);
ParsedModel load_model_file(const std::string& path);

std::string serialize_model(const ManifoldModel& m, const CohomologyData* coh = nullptr);

std::string rational_string(const Rational& r);  // always "num/den"
std::string float_string(double v);

std::string window_string(const Character& c);
std::string window_string(const FloatCharacter& c);

void print_character(std::ostream& os, const Character& c, const std::string& indent = "  ");
void print_character(std::ostream& os, const FloatCharacter& c, const std::string& indent = "  ");

void print_tpoly(std::ostream& os, const TPoly& p, const std::string& indent = "  ");
void print_tpoly(std::ostream& os, const FloatTPoly& p, const std::string& indent = "  ");

}  // namespace eqmorse
