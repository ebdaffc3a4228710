#include "chemsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "chemsim/io.hpp"
#include "chemsim/oracles.hpp"

namespace chemsim {

ConfigError::ConfigError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

InitialCondition InitialCondition::constant(double c) {
    InitialCondition ic;
    ic.kind = InitialKind::Constant;
    ic.value = c;
    return ic;
}

InitialCondition InitialCondition::eigen(double baseline, double amp, int k) {
    InitialCondition ic;
    ic.kind = InitialKind::Eigen;
    ic.baseline = baseline;
    ic.amp = amp;
    ic.k = k;
    return ic;
}

namespace {

constexpr std::array<std::string_view, 17> kKeys{
    "dim",   "n",    "extent", "t_end", "dt",        "s",    "m",     "alpha",          "flux",
    "lin_tol", "lin_maxit", "mode", "every", "snapshot_every", "output_dir", "u0", "v0"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t j = s.find_first_of(" \t", i);
        const std::size_t end = j == std::string_view::npos ? s.size() : j;
        if (end > i) out.push_back(s.substr(i, end - i));
        i = end;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && end == tok.data() + tok.size();
}

struct Entry {
    std::string value;
    int line;
};

class Parser {
public:
    explicit Parser(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

    int line_of(std::string_view key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }
    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }
    const std::string& raw(std::string_view key) const { return entries_.find(key)->second.value; }

    [[noreturn]] void fail(std::string_view key, const std::string& msg) const {
        throw ConfigError(line_of(key), msg);
    }

    double real(std::string_view key) const {
        double x = 0.0;
        if (!parse_number(raw(key), x) || !std::isfinite(x))
            fail(key, std::string(key) + ": cannot parse '" + raw(key) + "' as a real number");
        return x;
    }
    int integer(std::string_view key) const {
        int x = 0;
        if (!parse_number(raw(key), x)) fail(key, std::string(key) + ": cannot parse '" + raw(key) + "' as an integer");
        return x;
    }
    template <class T>
    std::vector<T> list(std::string_view key) const {
        std::vector<T> out;
        for (auto tok : split(raw(key), ',')) {
            T x{};
            if (!parse_number(tok, x)) fail(key, std::string(key) + ": cannot parse list '" + raw(key) + "'");
            out.push_back(x);
        }
        return out;
    }

    InitialCondition initial(std::string_view key) const {
        const auto w = words(raw(key));
        auto bad = [&]() -> InitialCondition {
            fail(key, std::string(key) + ": expected 'constant C', 'eigen BASELINE AMP K' or 'file PATH'");
        };
        if (w.empty()) return bad();
        if (w[0] == "constant" && w.size() == 2) {
            double c = 0.0;
            if (!parse_number(w[1], c)) return bad();
            return InitialCondition::constant(c);
        }
        if (w[0] == "eigen" && w.size() == 4) {
            double b = 0.0, a = 0.0;
            int k = 0;
            if (!parse_number(w[1], b) || !parse_number(w[2], a) || !parse_number(w[3], k)) return bad();
            return InitialCondition::eigen(b, a, k);
        }
        if (w[0] == "file" && w.size() >= 2) {
            InitialCondition ic;
            ic.kind = InitialKind::File;
            const auto rest = trim(std::string_view(raw(key)).substr(4));
            ic.path = std::string(rest);
            return ic;
        }
        return bad();
    }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

using LineOf = std::function<int(std::string_view)>;

void check_initial(const InitialCondition& ic, std::string_view key, const LineOf& line_of) {
    const std::string k(key);
    if (ic.kind == InitialKind::Constant && !(ic.value >= 0.0))
        throw ConfigError(line_of(key), k + ": initial data must be >= 0");
    if (ic.kind == InitialKind::Eigen) {
        if (ic.k < 1) throw ConfigError(line_of(key), k + ": eigenmode k must be ≥ 1");
        if (ic.baseline - std::abs(ic.amp) < 0.0)
            throw ConfigError(line_of(key), k + ": baseline - |amp| must be ≥ 0");
    }
    if (ic.kind == InitialKind::File && ic.path.empty()) throw ConfigError(line_of(key), k + ": empty file path");
}

void validate_with_lines(const RunConfig& c, const LineOf& line_of) {
    auto check = [&](bool ok, std::string_view key, const std::string& msg) {
        if (!ok) throw ConfigError(line_of(key), msg);
    };
    check(c.grid.dim >= 1 && c.grid.dim <= 3, "dim", "dim must be 1, 2 or 3");
    for (int a = 0; a < c.grid.dim; ++a) {
        check(c.grid.n[a] >= 2, "n", "n must be ≥ 2 on every axis");
        check(c.grid.extent[a] > 0.0, "extent", "extent must be > 0 on every axis");
    }
    check(c.model.s >= 1.0, "s", "s must be ≥ 1");
    check(c.model.alpha > 0.0, "alpha", "alpha must be > 0");
    check(c.scheme.dt > 0.0, "dt", "dt must be > 0");
    check(c.scheme.t_end >= 0.0, "t_end", "t_end must be ≥ 0");
    check(c.scheme.lin_tol > 0.0, "lin_tol", "lin_tol must be > 0");
    check(c.scheme.lin_maxit >= 1, "lin_maxit", "lin_maxit must be ≥ 1");
    check(c.every >= 1, "every", "every must be ≥ 1");
    check(c.snapshot_every >= 0, "snapshot_every", "snapshot_every must be ≥ 0");
    try {
        (void)c.scheme.step_count();
    } catch (const std::invalid_argument&) {
        check(false, "t_end", "t_end must be an integer multiple of dt");
    }
    check_initial(c.u0, "u0", line_of);
    check_initial(c.v0, "v0", line_of);
}

const char* flux_name(FluxScheme f) { return f == FluxScheme::Centered ? "centered" : "upwind"; }
const char* mode_name(StepMode m) { return m == StepMode::Imex ? "imex" : "explicit"; }

std::string initial_text(const InitialCondition& ic) {
    switch (ic.kind) {
        case InitialKind::Constant:
            return "constant " + format_double(ic.value);
        case InitialKind::Eigen:
            return "eigen " + format_double(ic.baseline) + " " + format_double(ic.amp) + " " + std::to_string(ic.k);
        case InitialKind::File:
            return "file " + ic.path;
    }
    return {};
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    for (auto raw_line : split(text, '\n')) {
        ++line_no;
        auto line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        if (value.empty()) throw ConfigError(line_no, std::string(key) + ": missing value");
        if (entries.count(key)) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }

    const Parser p(std::move(entries));
    for (std::string_view required : {"dim", "n", "t_end"})
        if (!p.has(required)) throw ConfigError(0, "missing required key '" + std::string(required) + "'");

    RunConfig c;
    c.grid.dim = p.integer("dim");
    if (c.grid.dim < 1 || c.grid.dim > 3) p.fail("dim", "dim must be 1, 2 or 3");
    const auto fill_axes = [&](std::string_view key, auto values, auto& target) {
        if (values.size() == 1) values.resize(c.grid.dim, values[0]);
        if (values.size() != static_cast<std::size_t>(c.grid.dim))
            p.fail(key, std::string(key) + ": expected 1 or " + std::to_string(c.grid.dim) + " values");
        for (int a = 0; a < c.grid.dim; ++a) target[a] = values[a];
    };
    fill_axes("n", p.list<int>("n"), c.grid.n);
    if (p.has("extent")) fill_axes("extent", p.list<double>("extent"), c.grid.extent);

    c.scheme.t_end = p.real("t_end");
    if (p.has("dt")) c.scheme.dt = p.real("dt");
    if (p.has("s")) c.model.s = p.real("s");
    if (p.has("m")) {
        if (p.raw("m") == "none") {
            c.model.trunc = TruncationParams::untruncated();
        } else {
            const int m = p.integer("m");
            if (m < 1) p.fail("m", "m must be ≥ 1 (or 'none')");
            c.model.trunc = TruncationParams::level(m);
        }
    }
    if (p.has("alpha")) c.model.alpha = p.real("alpha");
    if (p.has("flux")) {
        const auto& f = p.raw("flux");
        if (f == "centered") c.scheme.flux = FluxScheme::Centered;
        else if (f == "upwind") c.scheme.flux = FluxScheme::Upwind;
        else p.fail("flux", "flux must be 'centered' or 'upwind'");
    }
    if (p.has("lin_tol")) c.scheme.lin_tol = p.real("lin_tol");
    if (p.has("lin_maxit")) c.scheme.lin_maxit = p.integer("lin_maxit");
    if (p.has("mode")) {
        const auto& m = p.raw("mode");
        if (m == "imex") c.scheme.mode = StepMode::Imex;
        else if (m == "explicit") c.scheme.mode = StepMode::Explicit;
        else p.fail("mode", "mode must be 'imex' or 'explicit'");
    }
    if (p.has("every")) c.every = p.integer("every");
    if (p.has("snapshot_every")) c.snapshot_every = p.integer("snapshot_every");
    if (p.has("output_dir")) c.output_dir = p.raw("output_dir");
    if (p.has("u0")) c.u0 = p.initial("u0");
    if (p.has("v0")) c.v0 = p.initial("v0");

    validate_with_lines(c, [&](std::string_view key) { return p.line_of(key); });
    return c;
}

void validate_config(const RunConfig& cfg) {
    validate_with_lines(cfg, [](std::string_view) { return 0; });
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    auto axes = [&](auto const& arr, auto fmt) {
        std::string s;
        for (int a = 0; a < c.grid.dim; ++a) {
            if (a) s += ',';
            s += fmt(arr[a]);
        }
        return s;
    };
    os << "dim = " << c.grid.dim << '\n';
    os << "n = " << axes(c.grid.n, [](int x) { return std::to_string(x); }) << '\n';
    os << "extent = " << axes(c.grid.extent, [](double x) { return format_double(x); }) << '\n';
    os << "t_end = " << format_double(c.scheme.t_end) << '\n';
    os << "dt = " << format_double(c.scheme.dt) << '\n';
    os << "s = " << format_double(c.model.s) << '\n';
    os << "m = " << c.model.trunc.to_string() << '\n';
    os << "alpha = " << format_double(c.model.alpha) << '\n';
    os << "flux = " << flux_name(c.scheme.flux) << '\n';
    os << "lin_tol = " << format_double(c.scheme.lin_tol) << '\n';
    os << "lin_maxit = " << c.scheme.lin_maxit << '\n';
    os << "mode = " << mode_name(c.scheme.mode) << '\n';
    os << "every = " << c.every << '\n';
    os << "snapshot_every = " << c.snapshot_every << '\n';
    os << "output_dir = " << c.output_dir << '\n';
    os << "u0 = " << initial_text(c.u0) << '\n';
    os << "v0 = " << initial_text(c.v0) << '\n';
    return os.str();
}

namespace {

Field initial_field(const InitialCondition& ic, const Grid& g, const std::string& base_dir, std::string_view key) {
    switch (ic.kind) {
        case InitialKind::Constant:
            return Field(g, ic.value);
        case InitialKind::Eigen:
            return heat_eigen_solution(g, ic.baseline, ic.amp, ic.k, 0.0);
        case InitialKind::File: {
            std::filesystem::path path(ic.path);
            if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
            std::ifstream in(path);
            if (!in) throw ConfigError(0, std::string(key) + ": cannot open '" + path.string() + "'");
            Field f = [&] {
                try {
                    return read_snapshot(in);
                } catch (const std::exception& e) {
                    throw ConfigError(0, std::string(key) + ": " + e.what());
                }
            }();
            const Grid& fg = f.grid();
            bool match = fg.dim == g.dim;
            for (int a = 0; match && a < g.dim; ++a)
                match = fg.n[a] == g.n[a] && std::abs(fg.h[a] - g.h[a]) <= 1e-12 * g.h[a];
            if (!match) throw ConfigError(0, std::string(key) + ": snapshot grid does not match the config grid");
            Field out(g, std::vector<double>(f.values().begin(), f.values().end()));
            for (double x : out.values())
                if (!(x >= 0.0) || !std::isfinite(x))
                    throw ConfigError(0, std::string(key) + ": initial data must be finite and >= 0");
            return out;
        }
    }
    throw ConfigError(0, "unknown initial condition");
}

}  // namespace

State build_initial_state(const RunConfig& cfg, const std::string& base_dir) {
    const Grid g = cfg.grid.make_grid();
    return State{0.0, initial_field(cfg.u0, g, base_dir, "u0"), initial_field(cfg.v0, g, base_dir, "v0")};
}

}  // namespace chemsim
