#include "pdc/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* unit_name(AxisUnit u) { return u == AxisUnit::wavelength_nm ? "wavelength_nm" : "angular_frequency"; }

void write_axis(std::ostream& out, const char* name, const Axis& a) {
    out << name << ".unit = " << unit_name(a.unit) << '\n'
        << name << ".center = " << fmt(a.center) << '\n'
        << name << ".origin = " << fmt(a.origin) << '\n'
        << name << ".step = " << fmt(a.step) << '\n'
        << name << ".n = " << a.size << '\n';
}

struct Reader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 0;

    bool next(std::string_view& out) {
        if (pos >= text.size()) return false;
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        out = text.substr(pos, eol - pos);
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        pos = eol + 1;
        ++line;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line, pos); }
};

double parse_double(std::string_view v, const Reader& r) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) r.fail("malformed number '" + std::string(v) + "'");
    return x;
}

struct Header {
    std::string format;
    Axis signal;
    Axis idler;
};

Header read_header(Reader& r) {
    std::map<std::string, std::string, std::less<>> kv;
    std::string_view line;
    bool ended = false;
    while (r.next(line)) {
        if (line.empty() || line.front() == '#') continue;
        if (line == "end_header") {
            ended = true;
            break;
        }
        const auto eq = line.find(" = ");
        if (eq == std::string_view::npos) r.fail("expected 'key = value' in header");
        kv[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 3));
    }
    if (!ended) r.fail("missing end_header");
    auto get = [&](const std::string& k) -> std::string {
        const auto it = kv.find(k);
        if (it == kv.end()) r.fail("header key '" + k + "' missing");
        return it->second;
    };
    Header h;
    h.format = get("format");
    for (auto [name, axis] : {std::pair{"signal", &h.signal}, std::pair{"idler", &h.idler}}) {
        const std::string n = name;
        const auto unit = get(n + ".unit");
        if (unit == "wavelength_nm")
            axis->unit = AxisUnit::wavelength_nm;
        else if (unit == "angular_frequency")
            axis->unit = AxisUnit::angular_frequency;
        else
            r.fail("unknown axis unit '" + unit + "'");
        axis->center = parse_double(get(n + ".center"), r);
        axis->origin = parse_double(get(n + ".origin"), r);
        axis->step = parse_double(get(n + ".step"), r);
        const auto size = parse_double(get(n + ".n"), r);
        if (!(size >= 1.0) || size != static_cast<double>(static_cast<std::size_t>(size))) r.fail("bad axis size");
        axis->size = static_cast<std::size_t>(size);
        if (!(axis->step > 0.0)) r.fail("axis step must be positive");
    }
    return h;
}

template <typename F>
void read_rows(Reader& r, std::size_t rows, std::size_t fields, F&& store) {
    std::string_view line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!r.next(line)) r.fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
        std::size_t col = 0, start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (col >= fields) r.fail("too many fields");
            store(i, col++, parse_double(field, r));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (col != fields) r.fail("expected " + std::to_string(fields) + " fields, got " + std::to_string(col));
    }
    while (r.next(line))
        if (!line.empty()) r.fail("trailing data after matrix rows");
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename W, typename T>
void save_with(const std::filesystem::path& path, W&& writer, const T& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    writer(out, value);
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace

void write_jsa(std::ostream& out, const JointSpectralAmplitude& jsa) {
    out << "format = jsa\n";
    write_axis(out, "signal", jsa.grid.signal_axis());
    write_axis(out, "idler", jsa.grid.idler_axis());
    out << "end_header\n";
    for (Eigen::Index i = 0; i < jsa.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < jsa.values.cols(); ++j) {
            if (j) out << ',';
            out << fmt(jsa.values(i, j).real()) << ',' << fmt(jsa.values(i, j).imag());
        }
        out << '\n';
    }
}

void write_jsi(std::ostream& out, const JointSpectralIntensity& jsi) {
    out << "format = jsi\n";
    write_axis(out, "signal", jsi.signal);
    write_axis(out, "idler", jsi.idler);
    out << "end_header\n";
    for (Eigen::Index i = 0; i < jsi.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < jsi.values.cols(); ++j) {
            if (j) out << ',';
            out << fmt(jsi.values(i, j));
        }
        out << '\n';
    }
}

JointSpectralAmplitude read_jsa(std::string_view text) {
    Reader r{text};
    const Header h = read_header(r);
    if (h.format != "jsa") r.fail("expected format jsa, got " + h.format);
    if (h.signal.unit != AxisUnit::angular_frequency || h.idler.unit != AxisUnit::angular_frequency)
        r.fail("JSA axes must be angular frequency");
    JointSpectralAmplitude jsa;
    jsa.grid.center_signal = h.signal.center;
    jsa.grid.center_idler = h.idler.center;
    jsa.grid.n_signal = h.signal.size;
    jsa.grid.n_idler = h.idler.size;
    jsa.grid.span_signal = h.signal.step * static_cast<double>(h.signal.size);
    jsa.grid.span_idler = h.idler.step * static_cast<double>(h.idler.size);
    jsa.values.resize(static_cast<Eigen::Index>(h.signal.size), static_cast<Eigen::Index>(h.idler.size));
    read_rows(r, h.signal.size, 2 * h.idler.size, [&](std::size_t i, std::size_t c, double v) {
        auto& z = jsa.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c / 2));
        if (c % 2 == 0)
            z.real(v);
        else
            z.imag(v);
    });
    return jsa;
}

JointSpectralIntensity read_jsi(std::string_view text) {
    Reader r{text};
    const Header h = read_header(r);
    if (h.format != "jsi") r.fail("expected format jsi, got " + h.format);
    JointSpectralIntensity jsi;
    jsi.signal = h.signal;
    jsi.idler = h.idler;
    jsi.values.resize(static_cast<Eigen::Index>(h.signal.size), static_cast<Eigen::Index>(h.idler.size));
    read_rows(r, h.signal.size, h.idler.size, [&](std::size_t i, std::size_t c, double v) {
        jsi.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = v;
    });
    return jsi;
}

void save_jsa(const std::filesystem::path& path, const JointSpectralAmplitude& jsa) {
    save_with(path, [](std::ostream& o, const JointSpectralAmplitude& v) { write_jsa(o, v); }, jsa);
}
void save_jsi(const std::filesystem::path& path, const JointSpectralIntensity& jsi) {
    save_with(path, [](std::ostream& o, const JointSpectralIntensity& v) { write_jsi(o, v); }, jsi);
}
JointSpectralAmplitude load_jsa(const std::filesystem::path& path) { return read_jsa(slurp(path)); }
JointSpectralIntensity load_jsi(const std::filesystem::path& path) { return read_jsi(slurp(path)); }

void write_columns_csv(std::ostream& out, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size()) throw InputError("column names and data differ in count");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw InputError("columns differ in length");
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << fmt(columns[j][i]);
        out << '\n';
    }
}

void save_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    write_columns_csv(out, names, columns);
}

}  // namespace pdc
