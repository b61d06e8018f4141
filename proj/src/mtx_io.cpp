#include "sxt/mtx_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sxt/errors.hpp"

namespace sxt {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::filesystem::path& path,
                       const std::string& what) {
  throw io_error(path.string() + ": " + what);
}

}  // namespace

CooMatrix load_matrix_market(const std::filesystem::path& path,
                             bool expand_symmetric) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");

  std::string line;
  if (!std::getline(in, line)) fail(path, "empty file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") {
    fail(path, "malformed header: missing %%MatrixMarket banner");
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") fail(path, "unsupported object '" + object + "'");
  if (format == "array") {
    fail(path, "array format not supported; coordinate format required");
  }
  if (format != "coordinate") {
    fail(path, "unsupported format '" + format + "'");
  }
  const bool pattern = field == "pattern";
  if (field != "real" && field != "integer" && !pattern) {
    fail(path, "unsupported field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (symmetry != "general" && !symmetric) {
    fail(path, "unsupported symmetry '" + symmetry + "'");
  }

  // Size line: first non-comment, non-blank line.
  uint64_t rows = 0, cols = 0, declared_nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) fail(path, "missing size line");
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> declared_nnz)) {
      fail(path, "malformed size line '" + line + "'");
    }
    break;
  }
  if (rows > UINT32_MAX || cols > UINT32_MAX) {
    fail(path, "matrix dimensions exceed 32-bit index range");
  }

  CooMatrix m;
  m.num_rows = static_cast<uint32_t>(rows);
  m.num_cols = static_cast<uint32_t>(cols);
  m.entries.reserve(declared_nnz);

  uint64_t seen = 0;
  while (seen < declared_nnz) {
    if (!std::getline(in, line)) {
      fail(path, "unexpected end of file: " + std::to_string(seen) + " of " +
                     std::to_string(declared_nnz) + " entries read");
    }
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ss(line);
    uint64_t r = 0, c = 0;
    double v = 1.0;
    if (!(ss >> r >> c)) fail(path, "malformed entry '" + line + "'");
    if (!pattern && !(ss >> v)) fail(path, "malformed entry '" + line + "'");
    if (r < 1 || r > rows || c < 1 || c > cols) {
      fail(path, "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                     ") outside declared " + std::to_string(rows) + " x " +
                     std::to_string(cols) + " bounds");
    }
    CooEntry e{static_cast<uint32_t>(r - 1), static_cast<uint32_t>(c - 1),
               static_cast<float>(v)};
    m.entries.push_back(e);
    if (symmetric && expand_symmetric && e.row != e.col) {
      m.entries.push_back({e.col, e.row, e.value});
    }
    ++seen;
  }

  canonicalize(m);
  return m;
}

void save_matrix_market(const std::filesystem::path& path,
                        const CooMatrix& m) {
  std::ofstream out(path);
  if (!out) throw io_error(path.string() + ": cannot open for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.num_rows << " " << m.num_cols << " " << m.entries.size() << "\n";
  char buf[64];
  for (const CooEntry& e : m.entries) {
    std::snprintf(buf, sizeof(buf), "%u %u %.9g\n", e.row + 1, e.col + 1,
                  static_cast<double>(e.value));
    out << buf;
  }
  if (!out) throw io_error(path.string() + ": write failed");
}

void save_matrix_market_array(const std::filesystem::path& path,
                              const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw io_error(path.string() + ": cannot open for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << m.num_rows << " " << m.num_cols << "\n";
  char buf[64];
  for (uint32_t c = 0; c < m.num_cols; ++c) {
    for (uint32_t r = 0; r < m.num_rows; ++r) {
      std::snprintf(buf, sizeof(buf), "%.9g\n",
                    static_cast<double>(m.at(r, c)));
      out << buf;
    }
  }
  if (!out) throw io_error(path.string() + ": write failed");
}

}  // namespace sxt
