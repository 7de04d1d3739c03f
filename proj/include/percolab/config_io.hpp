#pragma once

// Plain-text configuration files and CSV tables.
//
// Configuration file:
//   # comment
//   d1 d2 m n theta
//   z_1 .. z_d1 k_1 .. k_d2     (one occupied site per line)

#include "percolab/engine.hpp"
#include "percolab/errors.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace percolab {

class ConfigParseError : public ParameterError {
public:
    ConfigParseError(const std::string& source, int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

Configuration parse_configuration(std::istream& in, const std::string& source = "<input>");
Configuration read_configuration_file(const std::string& path);
void write_configuration(std::ostream& out, const Configuration& config);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated, LF line endings, header first. Fields must not contain commas or newlines.
void write_csv(std::ostream& out, const CsvTable& table);
/// Reads what write_csv writes; rejects rows whose width differs from the header.
CsvTable parse_csv(std::istream& in);

} // namespace percolab
