#include "tripartite/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "tripartite/errors.hpp"

namespace tripartite {

void GridSpec::validate() const
{
    if (!(std::isfinite(min) && std::isfinite(max)))
        throw DomainError("grid bounds must be finite");
    if (!(min < max))
        throw DomainError("grid must ascend: min < max required");
    if (points < 2)
        throw DomainError("grid needs at least 2 points");
}

std::vector<double> GridSpec::values() const
{
    validate();
    std::vector<double> grid(points);
    const double h = step();
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = min + h * static_cast<double>(i);
    grid.back() = max;
    return grid;
}

SweepSeries::SweepSeries(std::vector<double> grid, nlohmann::json provenance)
    : grid_(std::move(grid)), provenance_(std::move(provenance))
{
    if (grid_.size() < 2)
        throw DomainError("series grid needs at least 2 points");
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i] > grid_[i - 1]))
            throw DomainError("series grid must be strictly ascending");
    }
}

void SweepSeries::add_column(std::string label, std::vector<double> values)
{
    if (values.size() != grid_.size())
        throw DomainError("column '" + label + "' length does not match the grid");
    if (has_column(label))
        throw DomainError("duplicate column '" + label + "'");
    labels_.push_back(std::move(label));
    columns_.push_back(std::move(values));
}

bool SweepSeries::has_column(std::string_view label) const
{
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

const std::vector<double> &SweepSeries::column(std::string_view label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw DomainError("no column named '" + std::string(label) + "'");
    return columns_[static_cast<std::size_t>(it - labels_.begin())];
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void SweepSeries::write_csv(std::ostream &out) const
{
    for (std::size_t c = 0; c < labels_.size(); ++c)
        out << (c ? "," : "") << labels_[c];
    out << '\n';
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        for (std::size_t c = 0; c < columns_.size(); ++c)
            out << (c ? "," : "") << format_number(columns_[c][i]);
        out << '\n';
    }
}

std::string SweepSeries::to_csv() const
{
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

nlohmann::ordered_json SweepSeries::to_json() const
{
    auto finite_or_null = [](double v) -> nlohmann::ordered_json {
        if (std::isfinite(v))
            return v;
        return nullptr;
    };
    nlohmann::ordered_json doc;
    doc["provenance"] = provenance_;
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (double w : grid_)
        grid.push_back(w);
    doc["grid"] = std::move(grid);
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < labels_.size(); ++c) {
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        for (double v : columns_[c])
            values.push_back(finite_or_null(v));
        columns[labels_[c]] = std::move(values);
    }
    doc["columns"] = std::move(columns);
    return doc;
}

} // namespace tripartite
