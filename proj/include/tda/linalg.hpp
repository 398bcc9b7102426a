#pragma once

// Sparse linear algebra over a prime field: sparse vectors, column-sparse
// matrices, and an incremental column echelon form with combination tracking.
// Every rank, kernel, quotient and coordinate computation in the library goes
// through Echelon.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tda/errors.hpp"
#include "tda/field.hpp"

namespace tda {

struct Entry {
  std::size_t index;
  Field::value_type value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted list of nonzero entries. The "low" of a vector is its largest index.
class SparseVector {
 public:
  SparseVector() = default;

  static SparseVector unit(std::size_t i) {
    SparseVector v;
    v.entries_.push_back({i, 1});
    return v;
  }

  /// Builds from unsorted (index, value) pairs; duplicates are summed.
  static SparseVector from_entries(std::vector<Entry> entries, const Field& f) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVector v;
    for (const auto& e : entries) {
      if (!v.entries_.empty() && v.entries_.back().index == e.index) {
        v.entries_.back().value = f.add(v.entries_.back().value, e.value);
        if (v.entries_.back().value == 0) v.entries_.pop_back();
      } else if (e.value != 0) {
        v.entries_.push_back(e);
      }
    }
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::size_t low() const { return entries_.back().index; }
  Field::value_type low_value() const { return entries_.back().value; }

  Field::value_type at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    return (it != entries_.end() && it->index == i) ? it->value : 0;
  }

  /// this += a * other
  void axpy(Field::value_type a, const SparseVector& other, const Field& f) {
    if (a == 0 || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto i = entries_.begin();
    auto j = other.entries_.begin();
    while (i != entries_.end() || j != other.entries_.end()) {
      if (j == other.entries_.end() || (i != entries_.end() && i->index < j->index)) {
        out.push_back(*i++);
      } else if (i == entries_.end() || j->index < i->index) {
        out.push_back({j->index, f.mul(a, j->value)});
        ++j;
      } else {
        auto v = f.add(i->value, f.mul(a, j->value));
        if (v != 0) out.push_back({i->index, v});
        ++i;
        ++j;
      }
    }
    entries_ = std::move(out);
  }

  void scale(Field::value_type a, const Field& f) {
    if (a == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.value = f.mul(a, e.value);
  }

  /// Shifts every index by `offset`.
  SparseVector shifted(std::size_t offset) const {
    SparseVector v = *this;
    for (auto& e : v.entries_) e.index += offset;
    return v;
  }

  void push_back_unchecked(Entry e) { entries_.push_back(e); }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Column-sparse matrix. Entries are field elements; the matrix itself does
/// not carry the field, callers pass it to arithmetic.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(i);
    return m;
  }

  /// Row-major integer entries, reduced into the field.
  static Matrix from_rows(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& entries,
                          const Field& f) {
    if (entries.size() != rows * cols) {
      throw ShapeMismatch("expected " + std::to_string(rows * cols) + " matrix entries, got " +
                          std::to_string(entries.size()));
    }
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < rows; ++r) {
        auto v = f.from_int(entries[r * cols + c]);
        if (v != 0) m.columns_[c].push_back_unchecked({r, v});
      }
    }
    return m;
  }

  static Matrix from_columns(std::size_t rows, std::vector<SparseVector> columns) {
    Matrix m;
    m.rows_ = rows;
    m.cols_ = columns.size();
    m.columns_ = std::move(columns);
    for (const auto& c : m.columns_) {
      if (!c.empty() && c.low() >= rows) throw ShapeMismatch("column entry outside matrix rows");
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVector& column(std::size_t c) const { return columns_[c]; }
  const std::vector<SparseVector>& columns() const { return columns_; }
  void set_column(std::size_t c, SparseVector v) { columns_[c] = std::move(v); }

  Field::value_type at(std::size_t r, std::size_t c) const { return columns_[c].at(r); }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& v) { return v.empty(); });
  }

  Matrix transpose() const {
    std::vector<std::vector<Entry>> rows(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      for (const auto& e : columns_[c]) rows[e.index].push_back({c, e.value});
    }
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (const auto& e : rows[r]) t.columns_[r].push_back_unchecked(e);
    }
    return t;
  }

  SparseVector apply(const SparseVector& v, const Field& f) const {
    SparseVector out;
    for (const auto& e : v) out.axpy(e.value, columns_.at(e.index), f);
    return out;
  }

  /// Dense row-major view with centered representatives.
  std::vector<std::vector<std::int64_t>> to_dense(const Field& f) const {
    std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
    for (std::size_t c = 0; c < cols_; ++c) {
      for (const auto& e : columns_[c]) d[e.index][c] = f.centered(e.value);
    }
    return d;
  }

  std::string to_string(const Field& f) const {
    std::ostringstream os;
    for (const auto& row : to_dense(f)) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
      os << "\n";
    }
    return os.str();
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> columns_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, const Field& f) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) out.set_column(c, a.apply(b.column(c), f));
  return out;
}

inline Matrix add(const Matrix& a, const Matrix& b, const Field& f, Field::value_type scale_b = 1) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("cannot add matrices of different shapes");
  Matrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    SparseVector col = a.column(c);
    col.axpy(scale_b, b.column(c), f);
    out.set_column(c, std::move(col));
  }
  return out;
}

/// Incremental column echelon form. Stored vectors have pairwise distinct lows.
/// Each stored vector carries a tag: its expression as a combination of the
/// tags of the vectors originally inserted.
class Echelon {
 public:
  struct Reduction {
    SparseVector residual;     ///< v minus a combination of stored vectors
    SparseVector combination;  ///< tag-weighted sum of the stored vectors subtracted
  };

  Echelon(Field f, std::size_t ambient_dim) : field_(f), pivot_slot_(ambient_dim, kNone) {}

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return pivot_slot_.size(); }
  std::size_t rank() const { return vectors_.size(); }

  bool has_pivot(std::size_t row) const { return pivot_slot_[row] != kNone; }

  Reduction reduce(SparseVector v) const {
    Reduction r;
    while (!v.empty()) {
      auto slot = pivot_slot_[v.low()];
      if (slot == kNone) break;
      const auto& pivot = vectors_[slot];
      auto coef = field_.div(v.low_value(), pivot.low_value());
      v.axpy(field_.neg(coef), pivot, field_);
      r.combination.axpy(coef, tags_[slot], field_);
    }
    r.residual = std::move(v);
    return r;
  }

  /// Reduces v; if a nonzero residual remains it becomes a new pivot and the
  /// call returns true. In both cases `tag_out` (if given) receives the tag of
  /// the residual, i.e. tag - combination.
  bool insert(SparseVector v, SparseVector tag = {}, SparseVector* tag_out = nullptr) {
    auto r = reduce(std::move(v));
    tag.axpy(field_.neg(1), r.combination, field_);
    if (tag_out) *tag_out = tag;
    if (r.residual.empty()) return false;
    pivot_slot_[r.residual.low()] = vectors_.size();
    vectors_.push_back(std::move(r.residual));
    tags_.push_back(std::move(tag));
    return true;
  }

  bool in_span(const SparseVector& v) const { return reduce(v).residual.empty(); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  Field field_;
  std::vector<std::size_t> pivot_slot_;
  std::vector<SparseVector> vectors_;
  std::vector<SparseVector> tags_;
};

inline std::size_t rank(const Matrix& m, const Field& f) {
  Echelon e(f, m.rows());
  for (const auto& c : m.columns()) e.insert(c);
  return e.rank();
}

/// Columns form a basis of the null space, in order of discovery.
inline Matrix kernel(const Matrix& m, const Field& f) {
  Echelon e(f, m.rows());
  std::vector<SparseVector> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    SparseVector tag;
    if (!e.insert(m.column(c), SparseVector::unit(c), &tag)) basis.push_back(std::move(tag));
  }
  return Matrix::from_columns(m.cols(), std::move(basis));
}

/// Quotient of the ambient space by the column span of `image`. The quotient
/// basis is the set of standard basis vectors not in the span of image and
/// earlier standard vectors.
class Quotient {
 public:
  Quotient(const Matrix& image, const Field& f) : echelon_(f, image.rows()) {
    for (const auto& c : image.columns()) echelon_.insert(c);
    for (std::size_t i = 0; i < image.rows(); ++i) {
      if (echelon_.insert(SparseVector::unit(i), SparseVector::unit(dimension_))) ++dimension_;
    }
  }

  std::size_t dimension() const { return dimension_; }

  /// Coordinates of the class of v in the quotient basis.
  SparseVector project(const SparseVector& v) const { return echelon_.reduce(v).combination; }

  /// Matrix of the projection restricted to ambient coordinates [offset, offset + n).
  Matrix projection_block(std::size_t offset, std::size_t n) const {
    Matrix m(dimension_, n);
    for (std::size_t i = 0; i < n; ++i) m.set_column(i, project(SparseVector::unit(offset + i)));
    return m;
  }

 private:
  Echelon echelon_;
  std::size_t dimension_ = 0;
};

}  // namespace tda
