#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fnls/spectral_field.hpp"

namespace fnls::io {

/// Columnar text format: `lambda = ...`, `num_points = ...`, optional
/// `alpha = ...`, then one `m, re, im` row per nonzero coefficient. Values
/// are printed with 17 significant digits so round-trips preserve them.
void write_field(const SpectralField& f, const std::filesystem::path& path,
                 std::optional<double> alpha = std::nullopt);

struct FieldFile {
  SpectralField field;
  std::optional<double> alpha;
};

FieldFile read_field(const std::filesystem::path& path);

/// Writes a CSV file atomically (temp file + rename): header row then rows.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Atomic text write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace fnls::io
