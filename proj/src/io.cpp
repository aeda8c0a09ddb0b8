#include "vortexlab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iterator>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += cells[k];
    }
    out += '\n';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return static_cast<int>(k);
    }
    throw ConfigError("csv column '" + name + "' not found");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (!line.empty()) table.rows.push_back(split_csv_line(line));
    }
    return table;
}

std::string diagnostics_rows(const DiagnosticsRecord& rec) {
    std::string out;
    for (const auto& c : rec.components) {
        auto lp = [&c](double p) {
            auto it = c.lp.find(p);
            return it == c.lp.end() ? std::string("nan") : format_double(it->second);
        };
        for (const auto& [r, m] : c.outer_mass) {
            out += csv_row({format_double(rec.t), std::to_string(c.index), format_double(c.a),
                            format_double(c.centroid.x), format_double(c.centroid.y),
                            format_double(c.w2), format_double(c.w2_about_y), format_double(m),
                            format_double(r), lp(1.0), lp(2.0), lp(4.0), lp(kInfinity),
                            format_double(c.dist_to_y), format_double(c.w1_contribution)});
        }
    }
    return out;
}

std::string pv_rows(const PVSample& s) {
    std::string out;
    for (std::size_t i = 0; i < s.state.size(); ++i) {
        out += csv_row({format_double(s.state.time), std::to_string(i),
                        format_double(s.state.positions[i].x), format_double(s.state.positions[i].y),
                        format_double(s.energy), format_double(s.invariants.impulse.x),
                        format_double(s.invariants.impulse.y), format_double(s.invariants.angular)});
    }
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header)
    : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    out_ << header << '\n';
    out_.flush();
}

void CsvWriter::append(const std::string& rows) {
    out_ << rows;
    out_.flush();
}

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

void put_f64(std::vector<unsigned char>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return std::bit_cast<double>(v);
}

constexpr std::size_t kHeaderBytes = 40;

}  // namespace

std::vector<unsigned char> encode_snapshot(const ScalarField& field, double time, double nu) {
    const Grid& g = field.grid();
    std::vector<unsigned char> out;
    out.reserve(kHeaderBytes + 8 * g.points());
    for (char ch : {'V', 'R', 'T', 'X'}) out.push_back(static_cast<unsigned char>(ch));
    put_u32(out, kSnapshotVersion);
    put_u32(out, static_cast<std::uint32_t>(g.size()));
    put_u32(out, 0);
    put_f64(out, g.length());
    put_f64(out, time);
    put_f64(out, nu);
    for (double v : field.values()) put_f64(out, v);
    return out;
}

Snapshot decode_snapshot(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), "VRTX", 4) != 0) {
        throw ConfigError("not a VRTX snapshot");
    }
    const std::uint32_t version = get_u32(bytes.data() + 4);
    if (version != kSnapshotVersion) {
        throw ConfigError("unsupported VRTX version " + std::to_string(version));
    }
    const std::uint32_t n = get_u32(bytes.data() + 8);
    const double length = get_f64(bytes.data() + 16);
    const Grid g = make_grid(length, static_cast<int>(n));
    if (bytes.size() != kHeaderBytes + 8 * g.points()) {
        throw ConfigError("VRTX payload size does not match header");
    }
    Snapshot s;
    s.time = get_f64(bytes.data() + 24);
    s.nu = get_f64(bytes.data() + 32);
    std::vector<double> values(g.points());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = get_f64(bytes.data() + kHeaderBytes + 8 * k);
    s.field = ScalarField(g, std::move(values));
    return s;
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time, double nu) {
    const auto bytes = encode_snapshot(field, time, nu);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace vortexlab
