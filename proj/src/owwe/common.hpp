#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace owwe {

using cdouble = std::complex<double>;

/* Error categories; the C API maps these onto status / CLI exit codes. */
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Row-major 2D array, the in-memory layout for fields and sections. */
template <typename T>
class Array2D {
public:
    Array2D() = default;
    Array2D(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T* row(std::size_t r) { return data_.data() + r * cols_; }
    const T* row(std::size_t r) const { return data_.data() + r * cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    std::vector<T>& storage() { return data_; }
    const std::vector<T>& storage() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

constexpr double pi = 3.14159265358979323846;

} // namespace owwe
