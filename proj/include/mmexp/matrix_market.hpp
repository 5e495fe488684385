#pragma once

#include <filesystem>
#include <iosfwd>

#include "mmexp/linalg.hpp"

namespace mmexp {

// Matrix Market dense "array" files, symmetry "general", field "real" or
// "complex". Values are column-major, one entry per line (real and
// imaginary parts separated by whitespace for complex). Real input is
// promoted to complex.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix(const std::filesystem::path& path);

// Writes field "real" when every imaginary part is zero, else "complex",
// at 17 significant digits.
void write_matrix(std::ostream& out, const ComplexMatrix& a);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& a);

}  // namespace mmexp
