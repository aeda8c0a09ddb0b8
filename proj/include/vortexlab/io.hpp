#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/field.hpp"
#include "vortexlab/point_vortex.hpp"

namespace vortexlab {

/// Round-trip formatting: 17 significant digits, '.' decimal point.
std::string format_double(double v);

/// Comma-joined row terminated by '\n'.
std::string csv_row(const std::vector<std::string>& cells);

/// Splits one CSV line (no quoting) into cells.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a header + rows CSV file.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

inline constexpr const char* kDiagnosticsHeader =
    "t,i,a,X_x,X_y,W2,W2_about_Y,mR,R,l1,l2,l4,linf,distXY,w1_contrib";
inline constexpr const char* kPvHeader = "t,i,Y_x,Y_y,H,P_x,P_y,I";

/// One line per (component, radius) of the record.
std::string diagnostics_rows(const DiagnosticsRecord& rec);
/// One line per vortex of the sample.
std::string pv_rows(const PVSample& sample);

/// Line-buffered CSV file; every append is flushed so aborted runs keep output.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);
    void append(const std::string& rows);

private:
    std::ofstream out_;
};

// VRTX snapshot: 40-byte header then n*n little-endian f64, x2-major.
struct Snapshot {
    ScalarField field;
    double time = 0.0;
    double nu = 0.0;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

std::vector<unsigned char> encode_snapshot(const ScalarField& field, double time, double nu);
Snapshot decode_snapshot(const std::vector<unsigned char>& bytes);
void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time, double nu);
Snapshot read_snapshot(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace vortexlab
