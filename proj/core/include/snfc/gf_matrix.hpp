#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snfc/gf_field.hpp"

namespace snfc {

/// Dense row-major matrix over a finite field.
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(Field field, std::size_t rows, std::size_t cols);

  static GfMatrix identity(const Field& field, std::size_t n);
  /// Builds from row vectors; every row must have the same length.
  static GfMatrix from_rows(const Field& field, const std::vector<std::vector<Elem>>& rows);
  static GfMatrix column(const Field& field, const std::vector<Elem>& values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Elem v);

  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::vector<Elem> column_values(std::size_t c) const;
  std::vector<std::vector<Elem>> to_rows() const;

  bool is_zero() const noexcept;
  bool row_is_zero(std::size_t r) const noexcept;

  GfMatrix transpose() const;
  GfMatrix select_rows(std::span<const std::size_t> indices) const;
  GfMatrix select_cols(std::span<const std::size_t> indices) const;
  GfMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void paste(std::size_t r0, std::size_t c0, const GfMatrix& src);

  GfMatrix operator*(const GfMatrix& rhs) const;
  GfMatrix operator+(const GfMatrix& rhs) const;
  GfMatrix operator-(const GfMatrix& rhs) const;
  GfMatrix scaled(Elem s) const;

  friend bool operator==(const GfMatrix& a, const GfMatrix& b) noexcept;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Horizontal concatenation [a | b]; row counts must agree.
GfMatrix hconcat(const GfMatrix& a, const GfMatrix& b);
GfMatrix hconcat(std::span<const GfMatrix> parts, const Field& field, std::size_t rows);
/// Vertical concatenation [a ; b]; column counts must agree.
GfMatrix vconcat(const GfMatrix& a, const GfMatrix& b);
GfMatrix vconcat(std::span<const GfMatrix> parts, const Field& field, std::size_t cols);
GfMatrix block_diagonal(std::span<const GfMatrix> blocks);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
GfMatrix reduced_row_echelon(const GfMatrix& a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const GfMatrix& a);
/// Some X with a * X = b, or nullopt when the columns of b leave the column span of a.
std::optional<GfMatrix> solve_right(const GfMatrix& a, const GfMatrix& b);
std::optional<GfMatrix> inverse(const GfMatrix& a);
GfMatrix kron(const GfMatrix& a, const GfMatrix& b);
/// True iff every column of b lies in the column span of a.
bool column_span_contains(const GfMatrix& a, const GfMatrix& b);
/// True iff the column spans of a and b meet only in zero.
bool subspaces_intersect_trivially(const GfMatrix& a, const GfMatrix& b);

/// Incremental column-space basis supporting fast membership tests.
class SpanBasis {
 public:
  SpanBasis(Field field, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  bool contains(std::span<const Elem> v) const;
  /// Adds v; returns false if it was already in the span.
  bool insert(std::span<const Elem> v);
  void insert_columns(const GfMatrix& m);

 private:
  std::vector<Elem> reduce(std::span<const Elem> v) const;

  Field field_;
  std::size_t dim_;
  std::vector<std::vector<Elem>> basis_;
  std::vector<std::size_t> pivot_;
};

/// Parses `matrix <rows> <cols> over <p>[^m]` followed by row lines.
GfMatrix parse_matrix(std::string_view text);
GfMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const GfMatrix& m);

}  // namespace snfc
