#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "symplab/displacement.hpp"
#include "symplab/grid.hpp"
#include "symplab/isotopy.hpp"

namespace symplab::io {

// SFLD2 field container: one ASCII header line
//   SFLD2 <n_x> <n_y> <n_comp>\n
// followed by n_comp blocks of n_x*n_y little-endian doubles, row-major
// with x fastest (component-major layout).
void write_field(const std::filesystem::path& p, const ScalarField& f);
void write_field(const std::filesystem::path& p, const VectorField& f);
void write_field(const std::filesystem::path& p, const OneForm& f);
void write_field(const std::filesystem::path& p, const DisplacementField& f);

ScalarField read_scalar(const std::filesystem::path& p);
VectorField read_vector(const std::filesystem::path& p);
OneForm read_oneform(const std::filesystem::path& p);
DisplacementField read_displacement(const std::filesystem::path& p);

// Node table "x,y,comp0[,comp1]".
void write_csv(const std::filesystem::path& p, const ScalarField& f);
void write_csv(const std::filesystem::path& p, const VectorField& f);

// Generic numeric table with a header row.
void write_csv_table(const std::filesystem::path& p,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

// Adds a "timestamp" field (UTC, ISO 8601) and writes atomically: temp
// file in the same directory, then rename. All writers here follow the
// same temp-then-rename discipline so failures leave no partial files.
void write_json(const std::filesystem::path& p, nlohmann::json j);

nlohmann::json read_json(const std::filesystem::path& p);

// Isotopy directory: manifest.json {n_t, substeps, consistency_residual,
// grid} plus gen_NNN.sfld2 and map_NNN.sfld2 per time sample.
void write_isotopy(const std::filesystem::path& dir, const Isotopy& iso);
Isotopy read_isotopy(const std::filesystem::path& dir);

} // namespace symplab::io
