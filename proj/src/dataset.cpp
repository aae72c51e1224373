#include "egs/dataset.hpp"

#include "egs/stats.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace egs {

Dataset::Dataset(std::vector<std::string> names, Eigen::MatrixXd records, DataKind kind)
    : names_(std::move(names)), records_(std::move(records)), kind_(kind) {
    if (kind_ == DataKind::discrete) {
        categories_.assign(records_.cols(), 0);
        for (Eigen::Index j = 0; j < records_.cols(); ++j)
            for (Eigen::Index i = 0; i < records_.rows(); ++i)
                categories_[j] = std::max(categories_[j], static_cast<int>(records_(i, j)) + 1);
    }
    validate();
}

Dataset::Dataset(std::vector<std::string> names, Eigen::MatrixXd records,
                 std::vector<int> category_counts)
    : names_(std::move(names)),
      records_(std::move(records)),
      kind_(DataKind::discrete),
      categories_(std::move(category_counts)) {
    validate();
}

void Dataset::validate() {
    if (records_.rows() < 1) throw std::invalid_argument("dataset needs at least one record");
    if (static_cast<Eigen::Index>(names_.size()) != records_.cols())
        throw std::invalid_argument("variable names do not match column count");
    if (!records_.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
    if (kind_ == DataKind::discrete) {
        if (static_cast<Eigen::Index>(categories_.size()) != records_.cols())
            throw std::invalid_argument("category counts do not match column count");
        for (Eigen::Index j = 0; j < records_.cols(); ++j)
            for (Eigen::Index i = 0; i < records_.rows(); ++i) {
                double v = records_(i, j);
                if (v != std::floor(v) || v < 0 || v >= categories_[j])
                    throw std::invalid_argument("discrete value out of range in column " +
                                                names_[j]);
            }
    } else {
        covariance_ = stats::covariance_mle(records_);
        correlation_ = stats::correlation_from_covariance(covariance_);
    }
}

Dataset Dataset::with_row_order(const std::vector<int>& rows) const {
    Eigen::MatrixXd permuted(rows.size(), records_.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) permuted.row(i) = records_.row(rows[i]);
    if (kind_ == DataKind::discrete) return Dataset(names_, std::move(permuted), categories_);
    return Dataset(names_, std::move(permuted), kind_);
}

Dataset read_csv(std::istream& in, DataKind kind) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back())))
                cell.pop_back();
            std::size_t start = cell.find_first_not_of(" \t");
            names.push_back(start == std::string::npos ? "" : cell.substr(start));
        }
    }
    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            std::size_t start = cell.find_first_not_of(" \t");
            std::size_t end = cell.find_last_not_of(" \t\r");
            if (start == std::string::npos) throw std::invalid_argument("empty CSV cell");
            double v;
            auto [ptr, ec] = std::from_chars(cell.data() + start, cell.data() + end + 1, v);
            if (ec != std::errc() || ptr != cell.data() + end + 1)
                throw std::invalid_argument("bad numeric value: " + cell);
            values.push_back(v);
            ++cols;
        }
        if (cols != names.size())
            throw std::invalid_argument("row " + std::to_string(rows + 1) + " has " +
                                        std::to_string(cols) + " cells, expected " +
                                        std::to_string(names.size()));
        ++rows;
    }
    Eigen::MatrixXd records(rows, names.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < names.size(); ++j) records(i, j) = values[i * names.size() + j];
    return Dataset(std::move(names), std::move(records), kind);
}

Dataset read_csv_file(const std::string& path, DataKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_csv(in, kind);
}

void write_csv(std::ostream& out, const Dataset& data) {
    const auto& names = data.names();
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    char buf[64];
    const auto& r = data.records();
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r(i, j));
            if (j) out << ',';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_csv(out, data);
}

}  // namespace egs
