#pragma once

#include <filesystem>
#include <string>

#include "gim/sample.hpp"

namespace gim {

struct CsvOptions {
  /// Header name, or a 1-based column number. Empty is only accepted for
  /// single-column files.
  std::string column;
  char delimiter = ',';
  bool has_header = true;
};

struct IngestResult {
  IncomeSample sample;
  std::size_t skipped_blank = 0;  // blank or missing cells that were dropped
};

/// Reads one numeric column. Errors carry the 1-based line number:
/// FileNotFound, ParseError, NegativeIncome, EmptyColumn.
[[nodiscard]] IngestResult ingest_csv(const std::filesystem::path& path, const CsvOptions& options);

}  // namespace gim
