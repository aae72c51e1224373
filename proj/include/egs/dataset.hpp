#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace egs {

enum class DataKind { continuous, discrete };

struct DataMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Column-named table of records. Discrete columns hold integer category
/// codes in [0, category_count). Continuous datasets carry their maximum
/// likelihood covariance and correlation matrices, computed once.
class Dataset {
public:
    Dataset(std::vector<std::string> names, Eigen::MatrixXd records, DataKind kind);
    /// Discrete dataset with explicit category counts per column.
    Dataset(std::vector<std::string> names, Eigen::MatrixXd records,
            std::vector<int> category_counts);

    const std::vector<std::string>& names() const { return names_; }
    const Eigen::MatrixXd& records() const { return records_; }
    int num_records() const { return static_cast<int>(records_.rows()); }
    int num_variables() const { return static_cast<int>(records_.cols()); }
    DataKind kind() const { return kind_; }
    /// Empty for continuous data.
    const std::vector<int>& category_counts() const { return categories_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }
    const Eigen::MatrixXd& correlation() const { return correlation_; }

    /// Copy of the dataset with rows permuted.
    Dataset with_row_order(const std::vector<int>& rows) const;

private:
    void validate();

    std::vector<std::string> names_;
    Eigen::MatrixXd records_;
    DataKind kind_;
    std::vector<int> categories_;
    Eigen::MatrixXd covariance_;
    Eigen::MatrixXd correlation_;
};

/// CSV with a header row of variable names.
Dataset read_csv(std::istream& in, DataKind kind);
Dataset read_csv_file(const std::string& path, DataKind kind);
void write_csv(std::ostream& out, const Dataset& data);
void write_csv_file(const std::string& path, const Dataset& data);

}  // namespace egs
