#pragma once

#include "painted/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace painted {

// Small dense rational matrix. Row-major; sized at construction.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat& operator*=(const Rat& c) {
        for (auto& x : a_) x *= c;
        return *this;
    }

    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator*(Mat x, const Rat& c) { return x *= c; }
    friend Mat operator*(const Rat& c, Mat x) { return x *= c; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Rat& v = x(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    out(i, j) += v * y(k, j);
            }
        return out;
    }

    // Kronecker product; used by the tensor construction on correlators.
    static Mat kronecker(const Mat& x, const Mat& y) {
        Mat out(x.rows() * y.rows(), x.cols() * y.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) {
                if (x(i, j) == 0) continue;
                for (std::size_t p = 0; p < y.rows(); ++p)
                    for (std::size_t q = 0; q < y.cols(); ++q)
                        out(i * y.rows() + p, j * y.cols() + q) = x(i, j) * y(p, q);
            }
        return out;
    }

private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

} // namespace painted
