#include "kent/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kent {
namespace {

Eigen::Index read_dim(std::istream& in) {
  long long dim = 0;
  if (!(in >> dim) || dim < 1) throw FormatError("expected a positive dimension line");
  return static_cast<Eigen::Index>(dim);
}

double next_value(std::istream& in, const char* what) {
  double v = 0.0;
  if (!(in >> v)) throw FormatError(std::string("expected ") + what);
  return v;
}

void write_pair(std::ostream& out, Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g", z.real(), z.imag());
  out << buf;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  const Eigen::Index dim = read_dim(in);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = next_value(in, "matrix entry (re)");
      const double im = next_value(in, "matrix entry (im)");
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << "  ";
      write_pair(out, m(i, j));
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_matrix(out, m);
}

Vector read_vector(std::istream& in) {
  const Eigen::Index dim = read_dim(in);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = next_value(in, "amplitude (re)");
    const double im = next_value(in, "amplitude (im)");
    v(i) = Complex(re, im);
  }
  return v;
}

void write_vector(std::ostream& out, const Vector& v) {
  out << v.size() << "\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    write_pair(out, v(i));
    out << "\n";
  }
}

}  // namespace kent
