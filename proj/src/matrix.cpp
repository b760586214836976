#include "mmkmeans/matrix.hpp"

#include "mmkmeans/errors.hpp"

namespace mmkmeans {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw DimensionError("matrix buffer has " + std::to_string(values_.size()) + " values, expected " +
                             std::to_string(rows * cols));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    values_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
        values_.insert(values_.end(), r.begin(), r.end());
    }
}

}  // namespace mmkmeans
