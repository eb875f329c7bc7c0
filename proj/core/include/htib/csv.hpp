#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace htib {

/// Shortest decimal string that round-trips the double (to_chars general
/// format). "inf"/"nan" render as such; integral values carry no exponent
/// unless to_chars chooses one.
std::string format_double(double value);

std::string format_int(std::int64_t value);

/// One CSV line: comma delimiter, '\n' terminator, no quoting (fields are
/// numeric or plain tags by construction).
void write_csv_line(std::ostream& out, const std::vector<std::string>& fields);

/// A fully rendered table: header plus rows, deterministic by construction.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace htib
