#include "snfc/gf_matrix.hpp"

#include <fstream>
#include <sstream>

#include "snfc/error.hpp"

namespace snfc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ShapeMismatch, what);
}

void require_same_field(const GfMatrix& a, const GfMatrix& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::DomainMismatch, "matrices over different fields");
}

}  // namespace

GfMatrix::GfMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GfMatrix GfMatrix::identity(const Field& field, std::size_t n) {
  GfMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

GfMatrix GfMatrix::from_rows(const Field& field, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  GfMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

GfMatrix GfMatrix::column(const Field& field, const std::vector<Elem>& values) {
  GfMatrix m(field, values.size(), 1);
  for (std::size_t r = 0; r < values.size(); ++r) m.set(r, 0, values[r]);
  return m;
}

Elem GfMatrix::at(std::size_t r, std::size_t c) const {
  require(r < rows_ && c < cols_, "matrix index out of range");
  return (*this)(r, c);
}

void GfMatrix::set(std::size_t r, std::size_t c, Elem v) {
  require(r < rows_ && c < cols_, "matrix index out of range");
  if (!field_.contains(v)) throw Error(ErrorCode::InvalidArgument, "value is not a field element");
  (*this)(r, c) = v;
}

std::vector<Elem> GfMatrix::column_values(std::size_t c) const {
  std::vector<Elem> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::vector<Elem>> GfMatrix::to_rows() const {
  std::vector<std::vector<Elem>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

bool GfMatrix::is_zero() const noexcept {
  for (Elem v : data_) {
    if (v != 0) return false;
  }
  return true;
}

bool GfMatrix::row_is_zero(std::size_t r) const noexcept {
  for (Elem v : row(r)) {
    if (v != 0) return false;
  }
  return true;
}

GfMatrix GfMatrix::transpose() const {
  GfMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

GfMatrix GfMatrix::select_rows(std::span<const std::size_t> indices) const {
  GfMatrix out(field_, indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    require(indices[i] < rows_, "row index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(indices[i], c);
  }
  return out;
}

GfMatrix GfMatrix::select_cols(std::span<const std::size_t> indices) const {
  GfMatrix out(field_, rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    require(indices[j] < cols_, "column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, indices[j]);
  }
  return out;
}

GfMatrix GfMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  GfMatrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  }
  return out;
}

void GfMatrix::paste(std::size_t r0, std::size_t c0, const GfMatrix& src) {
  require(r0 + src.rows_ <= rows_ && c0 + src.cols_ <= cols_, "paste out of range");
  require_same_field(*this, src);
  for (std::size_t r = 0; r < src.rows_; ++r) {
    for (std::size_t c = 0; c < src.cols_; ++c) (*this)(r0 + r, c0 + c) = src(r, c);
  }
}

GfMatrix GfMatrix::operator*(const GfMatrix& rhs) const {
  require(cols_ == rhs.rows_, "product shape mismatch");
  require_same_field(*this, rhs);
  GfMatrix out(field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const Elem b = rhs(k, c);
        if (b != 0) out(r, c) = field_.add(out(r, c), field_.mul(a, b));
      }
    }
  }
  return out;
}

GfMatrix GfMatrix::operator+(const GfMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "sum shape mismatch");
  require_same_field(*this, rhs);
  GfMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

GfMatrix GfMatrix::operator-(const GfMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "difference shape mismatch");
  require_same_field(*this, rhs);
  GfMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
  return out;
}

GfMatrix GfMatrix::scaled(Elem s) const {
  GfMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul(data_[i], s);
  return out;
}

bool operator==(const GfMatrix& a, const GfMatrix& b) noexcept {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

GfMatrix hconcat(const GfMatrix& a, const GfMatrix& b) {
  require(a.rows() == b.rows(), "hconcat row mismatch");
  require_same_field(a, b);
  GfMatrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.paste(0, 0, a);
  out.paste(0, a.cols(), b);
  return out;
}

GfMatrix hconcat(std::span<const GfMatrix> parts, const Field& field, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require(p.rows() == rows, "hconcat row mismatch");
    cols += p.cols();
  }
  GfMatrix out(field, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.paste(0, c, p);
    c += p.cols();
  }
  return out;
}

GfMatrix vconcat(const GfMatrix& a, const GfMatrix& b) {
  require(a.cols() == b.cols(), "vconcat column mismatch");
  require_same_field(a, b);
  GfMatrix out(a.field(), a.rows() + b.rows(), a.cols());
  out.paste(0, 0, a);
  out.paste(a.rows(), 0, b);
  return out;
}

GfMatrix vconcat(std::span<const GfMatrix> parts, const Field& field, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require(p.cols() == cols, "vconcat column mismatch");
    rows += p.rows();
  }
  GfMatrix out(field, rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.paste(r, 0, p);
    r += p.rows();
  }
  return out;
}

GfMatrix block_diagonal(std::span<const GfMatrix> blocks) {
  require(!blocks.empty(), "block_diagonal needs at least one block");
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  GfMatrix out(blocks.front().field(), rows, cols);
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    out.paste(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

GfMatrix reduced_row_echelon(const GfMatrix& a, std::vector<std::size_t>* pivots) {
  GfMatrix m = a;
  const Field& f = m.field();
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Elem scale = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Elem factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots != nullptr) *pivots = std::move(piv);
  return m;
}

std::size_t rank(const GfMatrix& a) {
  std::vector<std::size_t> piv;
  reduced_row_echelon(a, &piv);
  return piv.size();
}

std::optional<GfMatrix> solve_right(const GfMatrix& a, const GfMatrix& b) {
  require(a.rows() == b.rows(), "solve_right row mismatch");
  require_same_field(a, b);
  std::vector<std::size_t> piv;
  const GfMatrix red = reduced_row_echelon(hconcat(a, b), &piv);
  GfMatrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(piv[i], c) = red(i, a.cols() + c);
  }
  return x;
}

std::optional<GfMatrix> inverse(const GfMatrix& a) {
  require(a.rows() == a.cols(), "inverse of a non-square matrix");
  auto x = solve_right(a, GfMatrix::identity(a.field(), a.rows()));
  if (!x || rank(a) != a.rows()) return std::nullopt;
  return x;
}

GfMatrix kron(const GfMatrix& a, const GfMatrix& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  GfMatrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem s = a(i, j);
      if (s == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(s, b(k, l));
      }
    }
  }
  return out;
}

bool column_span_contains(const GfMatrix& a, const GfMatrix& b) { return solve_right(a, b).has_value(); }

bool subspaces_intersect_trivially(const GfMatrix& a, const GfMatrix& b) {
  require(a.rows() == b.rows(), "subspace row mismatch");
  return rank(hconcat(a, b)) == rank(a) + rank(b);
}

SpanBasis::SpanBasis(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

std::vector<Elem> SpanBasis::reduce(std::span<const Elem> v) const {
  require(v.size() == dim_, "vector dimension mismatch");
  std::vector<Elem> w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Elem c = w[pivot_[i]];
    if (c == 0) continue;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (basis_[i][k] != 0) w[k] = field_.sub(w[k], field_.mul(c, basis_[i][k]));
    }
  }
  return w;
}

bool SpanBasis::contains(std::span<const Elem> v) const {
  for (Elem x : reduce(v)) {
    if (x != 0) return false;
  }
  return true;
}

bool SpanBasis::insert(std::span<const Elem> v) {
  std::vector<Elem> w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && w[p] == 0) ++p;
  if (p == dim_) return false;
  const Elem s = field_.inv(w[p]);
  for (auto& x : w) x = field_.mul(x, s);
  // Keep the basis fully reduced on pivot coordinates.
  for (auto& b : basis_) {
    const Elem c = b[p];
    if (c == 0) continue;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (w[k] != 0) b[k] = field_.sub(b[k], field_.mul(c, w[k]));
    }
  }
  basis_.push_back(std::move(w));
  pivot_.push_back(p);
  return true;
}

void SpanBasis::insert_columns(const GfMatrix& m) {
  require(m.rows() == dim_, "column dimension mismatch");
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column_values(c);
    insert(col);
  }
}

GfMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorCode::Parse, "empty matrix document");
  std::istringstream head(lines.front());
  std::string kw;
  std::string over;
  std::string field_text;
  long long rows = -1;
  long long cols = -1;
  head >> kw >> rows >> cols >> over >> field_text;
  if (kw != "matrix" || over != "over" || rows < 0 || cols < 0 || field_text.empty()) {
    throw Error(ErrorCode::Parse, "expected 'matrix <rows> <cols> over <p>[^m]'");
  }
  const Field field = Field::parse(field_text);
  if (lines.size() != static_cast<std::size_t>(rows) + 1) {
    throw Error(ErrorCode::Parse, "matrix declares " + std::to_string(rows) + " rows but has " +
                                      std::to_string(lines.size() - 1));
  }
  GfMatrix m(field, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::istringstream row(lines[r + 1]);
    long long v = 0;
    std::size_t c = 0;
    while (row >> v) {
      if (c >= m.cols()) throw Error(ErrorCode::Parse, "too many entries in matrix row " + std::to_string(r));
      if (v < 0 || !field.contains(static_cast<std::uint64_t>(v))) {
        throw Error(ErrorCode::Parse, "entry " + std::to_string(v) + " is not an element of GF(" +
                                          field.to_string() + ")");
      }
      m(r, c++) = static_cast<Elem>(v);
    }
    if (!row.eof() || c != m.cols()) throw Error(ErrorCode::Parse, "malformed matrix row " + std::to_string(r));
  }
  return m;
}

GfMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const GfMatrix& m) {
  std::ostringstream out;
  out << "matrix " << m.rows() << ' ' << m.cols() << " over " << m.field().to_string() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
  return out.str();
}

}  // namespace snfc
