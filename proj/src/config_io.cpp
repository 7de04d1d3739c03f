#include "percolab/config_io.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace percolab {

ConfigParseError::ConfigParseError(const std::string& source, int line, const std::string& what)
    : ParameterError(fmt::format("{}:{}: {}", source, line, what)), line_(line)
{
}

namespace {

std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<long long> parse_ints(const std::string& text, const std::string& source, int line_no)
{
    std::vector<long long> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ConfigParseError(source, line_no, fmt::format("'{}' is not an integer", tok));
        out.push_back(v);
    }
    return out;
}

} // namespace

Configuration parse_configuration(std::istream& in, const std::string& source)
{
    std::string raw;
    int line_no = 0;
    std::optional<Configuration> config;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto values = parse_ints(strip_comment(raw), source, line_no);
        if (values.empty()) continue;
        if (!config) {
            if (values.size() != 5)
                throw ConfigParseError(source, line_no,
                                       fmt::format("header needs 5 integers 'd1 d2 m n theta', found {}", values.size()));
            for (long long v : values)
                if (v < -1'000'000'000LL || v > 1'000'000'000LL)
                    throw ConfigParseError(source, line_no, "header value out of range");
            try {
                config.emplace(GraphShape(static_cast<int>(values[0]), static_cast<int>(values[1]),
                                          static_cast<int>(values[2]), static_cast<int>(values[3]),
                                          static_cast<int>(values[4])));
            } catch (const std::exception& e) {
                throw ConfigParseError(source, line_no, e.what());
            }
            continue;
        }
        const GraphShape& shape = config->shape();
        const auto want = static_cast<std::size_t>(shape.d1() + shape.d2());
        if (values.size() != want)
            throw ConfigParseError(source, line_no,
                                   fmt::format("site needs {} coordinates ({} cycle, {} complete), found {}", want,
                                               shape.d1(), shape.d2(), values.size()));
        Site s;
        for (std::size_t i = 0; i < want; ++i) {
            const bool cyc = i < static_cast<std::size_t>(shape.d1());
            const long long lim = cyc ? shape.m() : shape.n();
            if (values[i] < 0 || values[i] >= lim)
                throw ConfigParseError(source, line_no,
                                       fmt::format("coordinate {} = {} is outside [0, {})", i + 1, values[i], lim));
            (cyc ? s.z : s.k).push_back(static_cast<int>(values[i]));
        }
        config->occupy(s);
    }
    if (!config) throw ConfigParseError(source, line_no, "missing header line 'd1 d2 m n theta'");
    return std::move(*config);
}

Configuration read_configuration_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError(fmt::format("cannot open configuration file '{}'", path));
    return parse_configuration(in, path);
}

void write_configuration(std::ostream& out, const Configuration& config)
{
    const GraphShape& s = config.shape();
    out << s.d1() << ' ' << s.d2() << ' ' << s.m() << ' ' << s.n() << ' ' << s.theta() << '\n';
    config.bits().for_each_set([&](SiteIndex i) {
        const Site site = site_of(s, i);
        bool first = true;
        for (int z : site.z) {
            out << (first ? "" : " ") << z;
            first = false;
        }
        for (int k : site.k) {
            out << (first ? "" : " ") << k;
            first = false;
        }
        out << '\n';
    });
}

std::string format_number(double x)
{
    return fmt::format("{}", x);
}

void write_csv(std::ostream& out, const CsvTable& table)
{
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i].find_first_of(",\n\r") != std::string::npos)
                throw ParameterError(fmt::format("CSV field '{}' contains a separator", fields[i]));
            out << (i ? "," : "") << fields[i];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

CsvTable parse_csv(std::istream& in)
{
    CsvTable t;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') throw ConfigParseError("<csv>", line_no, "CRLF line ending");
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto comma = raw.find(',', start);
            fields.push_back(raw.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (line_no == 1) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size())
            throw ConfigParseError("<csv>", line_no,
                                   fmt::format("row has {} fields, header has {}", fields.size(), t.header.size()));
        t.rows.push_back(std::move(fields));
    }
    if (line_no == 0) throw ConfigParseError("<csv>", 1, "empty table");
    return t;
}

} // namespace percolab
