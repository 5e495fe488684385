#include "mmexp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "mmexp/errors.hpp"

namespace mmexp {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '%';
}

std::vector<double> parse_numbers(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<double> values;
  std::string token;
  while (ss >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid number '" + token + "'");
    }
  }
  return values;
}

}  // namespace

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty input");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry, extra;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "array" ||
      (header >> extra)) {
    throw ParseError(1, "expected '%%MatrixMarket matrix array {real|complex} general'");
  }
  field = lower(field);
  if (field != "real" && field != "complex") {
    throw ParseError(1, "unsupported field '" + field + "'");
  }
  if (lower(symmetry) != "general") {
    throw ParseError(1, "unsupported symmetry '" + symmetry + "'");
  }
  const bool complex_field = field == "complex";

  long rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const auto dims = parse_numbers(line, line_no);
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] != std::floor(dims[0]) ||
        dims[1] != std::floor(dims[1])) {
      throw ParseError(line_no, "expected 'rows cols' with positive integers");
    }
    rows = static_cast<long>(dims[0]);
    cols = static_cast<long>(dims[1]);
    break;
  }
  if (rows < 0) throw ParseError(line_no, "missing size line");

  ComplexMatrix a(rows, cols);
  const std::size_t per_entry = complex_field ? 2 : 1;
  long count = 0;
  const long total = rows * cols;
  while (count < total && std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    const auto v = parse_numbers(line, line_no);
    if (v.size() != per_entry) {
      throw ParseError(line_no, "expected " + std::to_string(per_entry) + " value(s) per entry");
    }
    const Complex z = complex_field ? Complex(v[0], v[1]) : Complex(v[0], 0.0);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParseError(line_no, "non-finite entry");
    }
    a(count % rows, count / rows) = z;
    ++count;
  }
  if (count < total) {
    throw ParseError(line_no, "expected " + std::to_string(total) + " entries, found " +
                                  std::to_string(count));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank_or_comment(line)) throw ParseError(line_no, "unexpected trailing data");
  }
  return a;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  const bool real = (a.imag().array() == 0.0).all();
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  out << std::setprecision(17);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out << a(i, j).real();
      if (!real) out << ' ' << a(i, j).imag();
      out << '\n';
    }
  }
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_matrix(out, a);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace mmexp
