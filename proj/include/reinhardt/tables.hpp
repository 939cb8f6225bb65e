#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace reinhardt {

/// Piecewise-linear function given by (node, value) pairs with strictly increasing nodes.
///
/// Text format: one `node value` pair per line, separated by whitespace or a comma.
/// Blank lines and lines starting with '#' are ignored. Queries outside
/// [first node, last node] raise EvaluationError.
class LinearTable {
public:
    LinearTable() = default;
    LinearTable(std::vector<double> nodes, std::vector<double> values)
        : nodes_(std::move(nodes)), values_(std::move(values))
    {
        if (nodes_.size() != values_.size() || nodes_.size() < 2)
            throw RejectionError("table: need at least two (node, value) rows");
        for (std::size_t i = 1; i < nodes_.size(); ++i)
            if (!(nodes_[i] > nodes_[i - 1])) throw RejectionError("table: nodes must be strictly increasing");
    }

    static LinearTable parse(std::istream& in)
    {
        std::vector<double> xs, ys;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            double x, y;
            std::string extra;
            if (!(row >> x >> y) || (row >> extra))
                throw RejectionError("table line " + std::to_string(lineno) + ": expected two numeric columns");
            xs.push_back(x);
            ys.push_back(y);
        }
        return LinearTable(std::move(xs), std::move(ys));
    }

    static LinearTable load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw RejectionError("table: cannot open '" + path + "'");
        return parse(in);
    }

    double operator()(double x) const
    {
        if (x < nodes_.front() || x > nodes_.back())
            throw EvaluationError("table: query " + std::to_string(x) + " outside tabulated range");
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        if (it == nodes_.end()) return values_.back();
        const auto i = static_cast<std::size_t>(it - nodes_.begin());
        const double t = (x - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
        return values_[i - 1] + t * (values_[i] - values_[i - 1]);
    }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> nodes_, values_;
};

} // namespace reinhardt
