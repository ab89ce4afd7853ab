#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dpsim {

/// Swept parameter. Rows of a ScanTable are row-major over its axes (first
/// axis slowest) and the leading columns repeat the axis values.
struct Axis {
    std::string name;
    std::string unit;
    std::vector<double> grid;
};

struct ScanTable {
    std::vector<Axis> axes;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void set_meta(std::string key, std::string value);
    std::optional<std::string> meta(std::string_view key) const;

    /// Throws InvalidArgument if `name` is not a column.
    std::size_t column_index(std::string_view name) const;
    std::vector<double> column(std::string_view name) const;

    /// Axis grids strictly increasing, row count equal to the grid product,
    /// axis columns consistent, every probability column (name starting with
    /// "P") inside [0, 1]. Throws InvalidArgument describing the first defect.
    void validate() const;
};

/// `# key=value` metadata lines (axes as `axis=name;unit;count`), a header row,
/// then data rows with 17 significant digits.
void write_csv(const ScanTable& table, std::ostream& os);
std::string to_csv(const ScanTable& table);

/// Inverse of write_csv. Throws InvalidArgument naming the offending line.
ScanTable read_csv(std::istream& is);
ScanTable csv_from_string(std::string_view text);

/// Grid from `min:max:count` or a single value.
std::vector<double> parse_range(std::string_view spec);
std::vector<double> linspace(double lo, double hi, std::size_t count);

} // namespace dpsim
