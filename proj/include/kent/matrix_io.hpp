#pragma once

#include <iosfwd>
#include <string>

#include "kent/tensor.hpp"

namespace kent {

/// Text exchange format: a dim line, then one "re im" pair per entry in
/// row-major order, whitespace-tolerant. Vectors use dim entries.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);

Vector read_vector(std::istream& in);
void write_vector(std::ostream& out, const Vector& v);

}  // namespace kent
