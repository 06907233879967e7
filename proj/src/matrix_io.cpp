#include "isored/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace isored::io {

namespace {

using Index = Eigen::Index;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

std::size_t parse_size(const std::string& token) {
  std::size_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + token + "'");
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error(ErrorCode::ParseError, "cannot format double");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '+')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    const std::string t(text);
    if (t == "nan" || t == "NaN") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorCode::ParseError, "expected a number, got '" + t + "'");
  }
  return value;
}

MarketMatrix read_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::ParseError, "empty MatrixMarket input");
  std::istringstream hs(lower(header));
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix")
    throw Error(ErrorCode::ParseError, "missing %%MatrixMarket matrix banner");
  if (field != "real" && field != "double" && field != "integer")
    throw Error(ErrorCode::ParseError, "unsupported field '" + field + "'");
  if (symmetry != "general")
    throw Error(ErrorCode::ParseError, "only 'general' symmetry is supported");

  std::string line;
  if (!next_data_line(in, line)) throw Error(ErrorCode::ParseError, "missing size line");
  std::istringstream size_line(line);
  std::string r, c, z;
  size_line >> r >> c;
  MarketMatrix out;
  const std::size_t rows = parse_size(r);
  const std::size_t cols = parse_size(c);
  out.values = DenseMatrix::Zero(static_cast<Index>(rows), static_cast<Index>(cols));

  if (format == "coordinate") {
    out.coordinate = true;
    size_line >> z;
    const std::size_t nnz = parse_size(z);
    for (std::size_t k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line))
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(nnz) + " entries");
      std::istringstream ls(line);
      std::string si, sj, sv;
      ls >> si >> sj >> sv;
      const std::size_t i = parse_size(si);
      const std::size_t j = parse_size(sj);
      if (i == 0 || j == 0 || i > rows || j > cols)
        throw Error(ErrorCode::IndexOutOfRange, "entry (" + si + ", " + sj + ")", i, j);
      out.values(static_cast<Index>(i - 1), static_cast<Index>(j - 1)) += parse_double(sv);
    }
  } else if (format == "array") {
    // Column-major order.
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) {
        if (!next_data_line(in, line))
          throw Error(ErrorCode::ParseError, "too few array entries");
        out.values(static_cast<Index>(i), static_cast<Index>(j)) = parse_double(line);
      }
  } else {
    throw Error(ErrorCode::ParseError, "unknown MatrixMarket format '" + format + "'");
  }
  return out;
}

NonNegativeMatrix read_matrix(std::istream& in, bool transpose) {
  MarketMatrix raw = read_market(in);
  if (raw.values.rows() != raw.values.cols())
    throw Error(ErrorCode::NotSquare, std::to_string(raw.values.rows()) + "x" +
                                          std::to_string(raw.values.cols()));
  if (transpose) raw.values.transposeInPlace();
  return NonNegativeMatrix::with_auto_storage(raw.values);
}

NonNegativeMatrix read_matrix_file(const std::string& path, bool transpose) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_matrix(in, transpose);
}

void write_coordinate(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it)
      out << it.row() + 1 << ' ' << j + 1 << ' ' << format_double(it.value()) << '\n';
}

void write_array(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out << format_double(m(i, j)) << '\n';
}

void write_matrix(std::ostream& out, const SquareMatrix& m) {
  if (m.is_sparse())
    write_coordinate(out, m.sparse());
  else
    write_array(out, m.dense());
}

void write_matrix_file(const std::string& path, const SquareMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  write_matrix(out, m);
}

void write_vector(std::ostream& out, const Vector& v) {
  out << v.size() << '\n';
  for (Index i = 0; i < v.size(); ++i) out << format_double(v(i)) << '\n';
}

Vector read_vector(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw Error(ErrorCode::ParseError, "missing vector length");
  const std::size_t n = parse_size(line.substr(0, line.find_last_not_of(" \r\t") + 1));
  Vector v(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_data_line(in, line)) throw Error(ErrorCode::ParseError, "too few vector entries");
    v(static_cast<Index>(i)) = parse_double(line);
  }
  return v;
}

}  // namespace isored::io
