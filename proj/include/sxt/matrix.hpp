#pragma once

#include <cstdint>
#include <vector>

namespace sxt {

struct CooEntry {
  uint32_t row = 0;
  uint32_t col = 0;
  float value = 0.0f;

  friend bool operator==(const CooEntry&, const CooEntry&) = default;
};

/// Coordinate-list sparse matrix, the ingestion form.
struct CooMatrix {
  uint32_t num_rows = 0;
  uint32_t num_cols = 0;
  std::vector<CooEntry> entries;
};

/// Compressed sparse row matrix, the canonical in-memory form.
/// row_offsets has num_rows+1 entries; within a row, columns are
/// strictly increasing.
struct CsrMatrix {
  uint32_t num_rows = 0;
  uint32_t num_cols = 0;
  std::vector<uint64_t> row_offsets;
  std::vector<uint32_t> col_indices;
  std::vector<float> values;

  uint64_t nnz() const { return col_indices.size(); }
};

/// Row-major dense fp32 matrix.
struct DenseMatrix {
  uint32_t num_rows = 0;
  uint32_t num_cols = 0;
  std::vector<float> values;

  static DenseMatrix zeros(uint32_t rows, uint32_t cols);

  float& at(uint32_t r, uint32_t c) {
    return values[static_cast<size_t>(r) * num_cols + c];
  }
  float at(uint32_t r, uint32_t c) const {
    return values[static_cast<size_t>(r) * num_cols + c];
  }
  const float* row(uint32_t r) const {
    return values.data() + static_cast<size_t>(r) * num_cols;
  }
  float* row(uint32_t r) {
    return values.data() + static_cast<size_t>(r) * num_cols;
  }
};

/// The five inputs of C = alpha*A*B + beta*C.
struct SpmmProblem {
  CsrMatrix a;       // M x K
  DenseMatrix b;     // K x N
  DenseMatrix c_in;  // M x N
  float alpha = 1.0f;
  float beta = 0.0f;
};

/// Sorts entries by (row, col) and sums duplicates in place.
void canonicalize(CooMatrix& m);

/// Requires a canonical CooMatrix (no duplicate coordinates).
CsrMatrix coo_to_csr(const CooMatrix& m);

CooMatrix csr_to_coo(const CsrMatrix& m);

/// Throws config_error if the A/B/C dimensions are inconsistent.
void validate_problem(const SpmmProblem& p);

/// Ground-truth SpMM: fp32 accumulation in fixed row-major,
/// ascending-column order.
DenseMatrix reference_spmm(const SpmmProblem& p);

/// Deterministic random problem generator. A has expected nnz
/// density*m*k (per-row binomial column draws); values, B, C_in are
/// uniform on [-1,1); alpha and beta uniform on [-2,2).
SpmmProblem random_problem(uint32_t m, uint32_t k, uint32_t n, double density,
                           uint64_t seed);

}  // namespace sxt
