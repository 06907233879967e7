#pragma once

// MatrixMarket reading/writing (coordinate and array variants, real general)
// and the plain vector format: length on the first line, then one value per
// line. Numbers are written as shortest round-trip decimals.

#include <iosfwd>
#include <string>

#include "isored/matrix.hpp"

namespace isored::io {

/// Raw MatrixMarket contents; may be rectangular.
struct MarketMatrix {
  DenseMatrix values;
  bool coordinate = false;
};

MarketMatrix read_market(std::istream& in);

/// Reads a square non-negative matrix, choosing storage by density.
/// `transpose` converts a row-stochastic file to the column convention.
NonNegativeMatrix read_matrix(std::istream& in, bool transpose = false);
NonNegativeMatrix read_matrix_file(const std::string& path, bool transpose = false);

void write_coordinate(std::ostream& out, const SparseMatrix& m);
void write_array(std::ostream& out, const DenseMatrix& m);
/// Coordinate format for sparse storage, array format for dense.
void write_matrix(std::ostream& out, const SquareMatrix& m);
void write_matrix_file(const std::string& path, const SquareMatrix& m);

void write_vector(std::ostream& out, const Vector& v);
Vector read_vector(std::istream& in);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
/// Parses a full-string double; throws ParseError.
double parse_double(std::string_view text);

}  // namespace isored::io
