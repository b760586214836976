#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mmkmeans {

/// Dense row-major matrix of doubles. Rows are samples or centroids.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return values_.empty(); }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }

    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

}  // namespace mmkmeans
