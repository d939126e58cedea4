#include "lep/array2.hpp"

#include <cmath>
#include <sstream>

#include "lep/errors.hpp"

namespace lep::math {

Array2::Array2(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows < 0 || cols < 0) throw ShapeError("Array2: negative dimensions");
}

Array2::Array2(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw ShapeError("Array2: negative dimensions");
}

Array2::Array2(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw ShapeError("Array2: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Array2 Array2::row(const std::vector<double>& v) {
  Array2 a(1, static_cast<int>(v.size()));
  a.data_ = v;
  return a;
}

Array2 Array2::col(const std::vector<double>& v) {
  Array2 a(static_cast<int>(v.size()), 1);
  a.data_ = v;
  return a;
}

bool Array2::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

std::string Array2::shape_str() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

std::vector<double> Array2::row_vec(int r) const {
  return std::vector<double>(data_.begin() + static_cast<size_t>(r) * cols_,
                             data_.begin() + static_cast<size_t>(r + 1) * cols_);
}

void check_same_shape(const char* op, const Array2& a, const Array2& b) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
  }
}

}  // namespace lep::math
