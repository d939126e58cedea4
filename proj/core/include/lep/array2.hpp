#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace lep::math {

// Dense row-major matrix of doubles. The one array type used throughout;
// row vectors are 1xN, column vectors Nx1, scalars 1x1.
class Array2 {
 public:
  Array2() = default;
  Array2(int rows, int cols);
  Array2(int rows, int cols, double fill);
  Array2(std::initializer_list<std::initializer_list<double>> rows);

  static Array2 zeros(int rows, int cols) { return Array2(rows, cols); }
  static Array2 full(int rows, int cols, double v) { return Array2(rows, cols, v); }
  static Array2 row(const std::vector<double>& v);
  static Array2 col(const std::vector<double>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  bool empty() const { return data_.empty(); }

  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double& operator[](int i) { return data_[i]; }
  double operator[](int i) const { return data_[i]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Array2& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool all_finite() const;
  std::string shape_str() const;

  // Flattened copy of one row.
  std::vector<double> row_vec(int r) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Throws ShapeError with "<op>: ..." if shapes disagree.
void check_same_shape(const char* op, const Array2& a, const Array2& b);

}  // namespace lep::math
