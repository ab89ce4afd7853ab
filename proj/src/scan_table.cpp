#include "dpsim/scan_table.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpsim/errors.hpp"
#include "dpsim/text_util.hpp"

namespace dpsim {

void ScanTable::set_meta(std::string key, std::string value) {
    for (auto& [k, v] : metadata) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    metadata.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> ScanTable::meta(std::string_view key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return std::nullopt;
}

std::size_t ScanTable::column_index(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidArgument("scan table has no column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ScanTable::column(std::string_view name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
}

void ScanTable::validate() const {
    std::size_t expected = axes.empty() ? rows.size() : 1;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const auto& g = axes[a].grid;
        if (g.empty()) throw InvalidArgument("axis '" + axes[a].name + "' has an empty grid");
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1])) throw InvalidArgument("axis '" + axes[a].name + "' is not strictly increasing");
        if (a >= columns.size() || columns[a] != axes[a].name)
            throw InvalidArgument("column " + std::to_string(a) + " must repeat axis '" + axes[a].name + "'");
        expected *= g.size();
    }
    if (rows.size() != expected)
        throw InvalidArgument("scan table has " + std::to_string(rows.size()) + " rows, grid implies " +
                              std::to_string(expected));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != columns.size())
            throw InvalidArgument("row " + std::to_string(r) + " has the wrong number of fields");
        std::size_t stride = rows.size();
        for (std::size_t a = 0; a < axes.size(); ++a) {
            stride /= axes[a].grid.size();
            const double want = axes[a].grid[(r / stride) % axes[a].grid.size()];
            if (rows[r][a] != want) throw InvalidArgument("row " + std::to_string(r) + " breaks the grid order");
        }
        for (std::size_t c = axes.size(); c < columns.size(); ++c) {
            if (columns[c].empty() || columns[c].front() != 'P') continue;
            const double p = rows[r][c];
            if (!(p >= 0.0 && p <= 1.0))
                throw InvalidArgument("probability column '" + columns[c] + "' out of [0, 1] at row " +
                                      std::to_string(r));
        }
    }
}

void write_csv(const ScanTable& table, std::ostream& os) {
    for (const auto& [k, v] : table.metadata) os << "# " << k << "=" << v << "\n";
    for (const auto& a : table.axes) os << "# axis=" << a.name << ";" << a.unit << ";" << a.grid.size() << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << text::format_double(row[c]);
        os << "\n";
    }
}

std::string to_csv(const ScanTable& table) {
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

ScanTable read_csv(std::istream& is) {
    ScanTable table;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    auto fail = [&](const std::string& why) {
        throw InvalidArgument("csv line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++line_no;
        const std::string_view view = text::trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            const std::string_view body = text::trim(view.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) continue; // free-form comment
            const std::string key(body.substr(0, eq));
            const std::string value(body.substr(eq + 1));
            if (key == "axis") {
                const auto parts = text::split(value, ';');
                if (parts.size() != 3) fail("axis metadata needs name;unit;count");
                table.axes.push_back({std::string(parts[0]), std::string(parts[1]), {}});
            } else {
                table.metadata.emplace_back(key, value);
            }
            continue;
        }
        if (!have_header) {
            for (auto f : text::split(view, ',')) table.columns.emplace_back(text::trim(f));
            have_header = true;
            continue;
        }
        std::vector<double> row;
        for (auto f : text::split(view, ',')) {
            double v = 0.0;
            if (!text::parse_double(f, v)) fail("cannot parse number '" + std::string(f) + "'");
            row.push_back(v);
        }
        if (row.size() != table.columns.size()) fail("expected " + std::to_string(table.columns.size()) + " fields");
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw InvalidArgument("csv: missing header row");
    for (std::size_t a = 0; a < table.axes.size(); ++a) {
        auto& g = table.axes[a].grid;
        for (const auto& r : table.rows) g.push_back(r[a]);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    return table;
}

ScanTable csv_from_string(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_csv(is);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw InvalidArgument("linspace: count must be positive");
    if (count == 1) return {lo};
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

std::vector<double> parse_range(std::string_view spec) {
    const auto parts = text::split(spec, ':');
    double lo = 0.0, hi = 0.0, count = 0.0;
    if (parts.size() == 1) {
        if (!text::parse_double(parts[0], lo)) throw InvalidArgument("bad grid value '" + std::string(spec) + "'");
        return {lo};
    }
    if (parts.size() != 3 || !text::parse_double(parts[0], lo) || !text::parse_double(parts[1], hi) ||
        !text::parse_double(parts[2], count))
        throw InvalidArgument("bad grid '" + std::string(spec) + "', expected min:max:count");
    if (count < 1.0 || count != static_cast<double>(static_cast<std::size_t>(count)))
        throw InvalidArgument("grid count must be a positive integer in '" + std::string(spec) + "'");
    if (count > 1.0 && !(hi > lo)) throw InvalidArgument("grid max must exceed min in '" + std::string(spec) + "'");
    return linspace(lo, hi, static_cast<std::size_t>(count));
}

} // namespace dpsim
