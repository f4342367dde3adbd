#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wavexp::io {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

/// Writes via temp file + rename in the same directory, creating parent
/// directories as needed.
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

/// Shortest round-trip decimal form, locale-independent.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

/// Strict parser for the schemas this tool emits: no quoting, no embedded
/// commas. Throws on ragged rows.
CsvTable parse_csv(const std::string& text);

/// Log-scale curve of the `mse` column grouped by (n, k) scheme labels.
/// Expects columns n, k, t, mse.
std::string render_mse_svg(const CsvTable& t);

/// p_hat per scheme with confidence whiskers.
/// Expects columns n, k, eps, p_hat, ci_lo, ci_hi, replicates, seed.
std::string render_sup_prob_svg(const CsvTable& t);

/// Margin scatter against |t-s|. Expects columns n, k, t, s, lhs, bound,
/// margin.
std::string render_modulus_svg(const CsvTable& t);

}  // namespace wavexp::io
