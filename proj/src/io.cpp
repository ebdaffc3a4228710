#include "chemsim/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace chemsim {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("cannot format double");
    return std::string(buf.data(), end);
}

namespace {

double parse_double(std::string_view tok) {
    double x = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc{} || end != tok.data() + tok.size())
        throw std::runtime_error("malformed number '" + std::string(tok) + "'");
    return x;
}

}  // namespace

void write_csv_header(std::ostream& os) {
    for (std::size_t i = 0; i < kDiagnosticsColumns.size(); ++i) {
        if (i) os << ',';
        os << kDiagnosticsColumns[i];
    }
    os << '\n';
}

void write_csv_row(std::ostream& os, const DiagnosticsRow& row) {
    const auto vals = csv_values(row);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) os << ',';
        os << format_double(vals[i]);
    }
    os << '\n';
}

std::vector<std::array<double, 12>> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty diagnostics file");
    std::ostringstream expected;
    write_csv_header(expected);
    if (line + '\n' != expected.str()) throw std::runtime_error("unexpected diagnostics header: " + line);

    std::vector<std::array<double, 12>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<double, 12> row{};
        std::size_t col = 0, start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view tok(line.data() + start,
                                       (comma == std::string::npos ? line.size() : comma) - start);
            if (col >= row.size()) throw std::runtime_error("too many columns in diagnostics row");
            row[col++] = parse_double(tok);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != row.size()) throw std::runtime_error("too few columns in diagnostics row");
        rows.push_back(row);
    }
    return rows;
}

void write_snapshot(std::ostream& os, const Field& f, double t) {
    const Grid& g = f.grid();
    os << g.dim;
    for (int a = 0; a < g.dim; ++a) os << ' ' << g.n[a];
    for (int a = 0; a < g.dim; ++a) os << ' ' << format_double(g.h[a]);
    os << " t=" << format_double(t) << '\n';
    for (double x : f.values()) os << format_double(x) << '\n';
}

Field read_snapshot(std::istream& is, double* t) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty snapshot");
    std::istringstream hs(header);
    std::vector<std::string> tokens;
    for (std::string tok; hs >> tok;) tokens.push_back(tok);
    if (tokens.empty()) throw std::runtime_error("empty snapshot header");

    const int dim = static_cast<int>(parse_double(tokens[0]));
    if (dim < 1 || dim > 3 || tokens.size() != static_cast<std::size_t>(2 * dim + 2))
        throw std::runtime_error("malformed snapshot header: " + header);
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> extent{1.0, 1.0, 1.0};
    for (int a = 0; a < dim; ++a) {
        n[a] = static_cast<int>(parse_double(tokens[1 + a]));
        extent[a] = n[a] * parse_double(tokens[1 + dim + a]);
    }
    const std::string& tt = tokens.back();
    if (tt.rfind("t=", 0) != 0) throw std::runtime_error("snapshot header lacks t=<time>");
    if (t) *t = parse_double(std::string_view(tt).substr(2));

    Grid g = Grid::uniform(dim, n, extent);
    for (int a = 0; a < dim; ++a) g.h[a] = parse_double(tokens[1 + dim + a]);
    std::vector<double> values;
    values.reserve(g.size());
    for (std::string line; std::getline(is, line);) {
        if (line.empty()) continue;
        values.push_back(parse_double(line));
    }
    if (values.size() != g.size())
        throw std::runtime_error("snapshot has " + std::to_string(values.size()) + " values, header declares " +
                                 std::to_string(g.size()));
    return Field(g, std::move(values));
}

}  // namespace chemsim
