#include "gim/csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace gim {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits one record; double quotes group a field and "" escapes a quote.
std::vector<std::string> split_record(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

bool parse_index(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

IngestResult ingest_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
  }

  std::string line;
  std::size_t line_no = 0;
  std::size_t column = 0;

  if (options.has_header) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::EmptyColumn, path.string() + " is empty");
    }
    ++line_no;
    const auto header = split_record(line, options.delimiter);
    if (options.column.empty() && header.size() > 1) {
      throw Error(ErrorCode::ParseError, at_line(1) + ": " + std::to_string(header.size()) +
                                             " columns in " + path.string() + "; name one with --column");
    }
    if (!options.column.empty()) {
      bool found = false;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == options.column) {
          column = i;
          found = true;
          break;
        }
      }
      std::size_t number = 0;
      if (!found && parse_index(options.column, number) && number >= 1 && number <= header.size()) {
        column = number - 1;
        found = true;
      }
      if (!found) {
        throw Error(ErrorCode::ParseError, at_line(1) + ": no column named '" + options.column + "'");
      }
    }
  } else if (!options.column.empty()) {
    std::size_t number = 0;
    if (!parse_index(options.column, number) || number < 1) {
      throw Error(ErrorCode::ParseError, "without a header the column must be a 1-based number");
    }
    column = number - 1;
  }

  std::vector<double> values;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_record(line, options.delimiter);
    if (!options.has_header && options.column.empty() && fields.size() > 1) {
      throw Error(ErrorCode::ParseError, at_line(line_no) + ": several columns; name one with --column");
    }
    if (column >= fields.size() || fields[column].empty()) {
      ++skipped;
      continue;
    }
    const std::string& cell = fields[column];
    double value = 0.0;
    const char* first = cell.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, cell.data() + cell.size(), value);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(value)) {
      throw Error(ErrorCode::ParseError, at_line(line_no) + ": '" + cell + "' is not a number");
    }
    if (value < 0.0) {
      throw Error(ErrorCode::NegativeIncome, at_line(line_no) + ": negative income " + cell);
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw Error(ErrorCode::EmptyColumn, "no values in the selected column of " + path.string());
  }
  return {make_sample(values), skipped};
}

}  // namespace gim
