#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scs::experiment {

/// Plain comma-separated table with a header row. Cells never contain commas
/// or quotes, so no quoting is done.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws UsageError naming the column when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames, so readers never see a partial file.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Same atomic write for arbitrary text.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Shortest round-trip representation ("%.17g").
std::string format_real(double value);

}  // namespace scs::experiment
