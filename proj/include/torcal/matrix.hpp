#pragma once

#include <stdexcept>
#include <vector>

namespace torcal {

/// Dense small matrix; rows*cols stay single digit everywhere in this
/// project.
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, T fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity_like(size_t n, const T& one, const T& zero) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& at(size_t r, size_t c) { return data_.at(r * cols_ + c); }
    const T& at(size_t r, size_t c) const { return data_.at(r * cols_ + c); }

    template <typename F>
    auto map(F f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> out(rows_, cols_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out.at(r, c) = f(at(r, c));
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix out = a;
        for (size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix out = a;
        for (size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_diagonal(const T& zero) const {
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c)
                if (r != c && !(at(r, c) == zero)) return false;
        return true;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

}  // namespace torcal
