#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tripartite {

/// Uniform frequency grid, angular units (rad/ns).
struct GridSpec
{
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;

    /// Throws DomainError unless min < max and points >= 2.
    void validate() const;
    std::vector<double> values() const;
    double step() const { return (max - min) / static_cast<double>(points - 1); }
};

/// A frequency grid with named real-valued columns. Complex responses are
/// stored as separate real and imaginary columns.
class SweepSeries
{
public:
    explicit SweepSeries(std::vector<double> grid, nlohmann::json provenance = {});

    void add_column(std::string label, std::vector<double> values);

    const std::vector<double> &grid() const { return grid_; }
    const std::vector<double> &column(std::string_view label) const;
    bool has_column(std::string_view label) const;
    const std::vector<std::string> &labels() const { return labels_; }
    std::size_t size() const { return grid_.size(); }
    const nlohmann::json &provenance() const { return provenance_; }

    /// Header row of labels, one row per grid point, 17 significant digits,
    /// '\n' line endings. Non-finite values are written as `nan`/`inf`/`-inf`.
    void write_csv(std::ostream &out) const;
    std::string to_csv() const;

    /// {"provenance": ..., "grid": [...], "columns": {label: [...]}} with
    /// columns in insertion order.
    nlohmann::ordered_json to_json() const;

private:
    std::vector<double> grid_;
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> columns_;
    nlohmann::json provenance_;
};

/// Fixed-width decimal rendering used for every numeric output (%.17g).
std::string format_number(double value);

} // namespace tripartite
