#include "sxt/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sxt/errors.hpp"

namespace sxt {

DenseMatrix DenseMatrix::zeros(uint32_t rows, uint32_t cols) {
  DenseMatrix m;
  m.num_rows = rows;
  m.num_cols = cols;
  m.values.assign(static_cast<size_t>(rows) * cols, 0.0f);
  return m;
}

void canonicalize(CooMatrix& m) {
  std::sort(m.entries.begin(), m.entries.end(),
            [](const CooEntry& a, const CooEntry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  size_t out = 0;
  for (size_t i = 0; i < m.entries.size();) {
    CooEntry e = m.entries[i];
    size_t j = i + 1;
    while (j < m.entries.size() && m.entries[j].row == e.row &&
           m.entries[j].col == e.col) {
      e.value += m.entries[j].value;
      ++j;
    }
    m.entries[out++] = e;
    i = j;
  }
  m.entries.resize(out);
}

CsrMatrix coo_to_csr(const CooMatrix& m) {
  CsrMatrix csr;
  csr.num_rows = m.num_rows;
  csr.num_cols = m.num_cols;
  csr.row_offsets.assign(static_cast<size_t>(m.num_rows) + 1, 0);
  for (const CooEntry& e : m.entries) {
    ++csr.row_offsets[static_cast<size_t>(e.row) + 1];
  }
  std::partial_sum(csr.row_offsets.begin(), csr.row_offsets.end(),
                   csr.row_offsets.begin());

  csr.col_indices.resize(m.entries.size());
  csr.values.resize(m.entries.size());
  std::vector<uint64_t> cursor(csr.row_offsets.begin(),
                               csr.row_offsets.end() - 1);
  for (const CooEntry& e : m.entries) {
    uint64_t pos = cursor[e.row]++;
    csr.col_indices[pos] = e.col;
    csr.values[pos] = e.value;
  }
  for (uint32_t r = 0; r < csr.num_rows; ++r) {
    uint64_t lo = csr.row_offsets[r], hi = csr.row_offsets[r + 1];
    std::vector<uint32_t> order(hi - lo);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
      return csr.col_indices[lo + x] < csr.col_indices[lo + y];
    });
    std::vector<uint32_t> cols(hi - lo);
    std::vector<float> vals(hi - lo);
    for (size_t i = 0; i < order.size(); ++i) {
      cols[i] = csr.col_indices[lo + order[i]];
      vals[i] = csr.values[lo + order[i]];
    }
    std::copy(cols.begin(), cols.end(), csr.col_indices.begin() + lo);
    std::copy(vals.begin(), vals.end(), csr.values.begin() + lo);
  }
  return csr;
}

CooMatrix csr_to_coo(const CsrMatrix& m) {
  CooMatrix coo;
  coo.num_rows = m.num_rows;
  coo.num_cols = m.num_cols;
  coo.entries.reserve(m.nnz());
  for (uint32_t r = 0; r < m.num_rows; ++r) {
    for (uint64_t i = m.row_offsets[r]; i < m.row_offsets[r + 1]; ++i) {
      coo.entries.push_back({r, m.col_indices[i], m.values[i]});
    }
  }
  return coo;
}

void validate_problem(const SpmmProblem& p) {
  if (p.a.num_cols != p.b.num_rows) {
    throw config_error("A columns (" + std::to_string(p.a.num_cols) +
                       ") do not match B rows (" +
                       std::to_string(p.b.num_rows) + ")");
  }
  if (p.a.num_rows != p.c_in.num_rows || p.b.num_cols != p.c_in.num_cols) {
    throw config_error("C dimensions do not match A rows x B columns");
  }
}

DenseMatrix reference_spmm(const SpmmProblem& p) {
  validate_problem(p);
  const uint32_t m = p.a.num_rows;
  const uint32_t n = p.b.num_cols;
  DenseMatrix out = DenseMatrix::zeros(m, n);
  std::vector<float> acc(n);
  for (uint32_t r = 0; r < m; ++r) {
    std::fill(acc.begin(), acc.end(), 0.0f);
    for (uint64_t i = p.a.row_offsets[r]; i < p.a.row_offsets[r + 1]; ++i) {
      const float av = p.a.values[i];
      const float* brow = p.b.row(p.a.col_indices[i]);
      for (uint32_t q = 0; q < n; ++q) {
        acc[q] += av * brow[q];
      }
    }
    float* orow = out.row(r);
    const float* crow = p.c_in.row(r);
    for (uint32_t q = 0; q < n; ++q) {
      orow[q] = p.alpha * acc[q] + p.beta * crow[q];
    }
  }
  return out;
}

namespace {

DenseMatrix random_dense(uint32_t rows, uint32_t cols, std::mt19937_64& rng) {
  DenseMatrix m = DenseMatrix::zeros(rows, cols);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (float& v : m.values) v = dist(rng);
  return m;
}

}  // namespace

SpmmProblem random_problem(uint32_t m, uint32_t k, uint32_t n, double density,
                           uint64_t seed) {
  if (m == 0 || k == 0 || n == 0) {
    throw config_error("random_problem: dimensions must be positive");
  }
  if (!(density > 0.0) || density > 1.0) {
    throw config_error("random_problem: density must be in (0, 1]");
  }
  std::mt19937_64 rng(seed);

  CsrMatrix a;
  a.num_rows = m;
  a.num_cols = k;
  a.row_offsets.assign(static_cast<size_t>(m) + 1, 0);

  std::binomial_distribution<uint32_t> row_nnz(k, density);
  std::uniform_real_distribution<float> val(-1.0f, 1.0f);
  std::vector<uint32_t> pool(k);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<uint32_t> swapped;  // undo log, keeps pool an identity permutation
  std::vector<uint32_t> cols;
  for (uint32_t r = 0; r < m; ++r) {
    uint32_t cnt = density == 1.0 ? k : row_nnz(rng);
    swapped.clear();
    cols.clear();
    for (uint32_t i = 0; i < cnt; ++i) {
      std::uniform_int_distribution<uint32_t> pick(i, k - 1);
      uint32_t j = pick(rng);
      std::swap(pool[i], pool[j]);
      swapped.push_back(j);
      cols.push_back(pool[i]);
    }
    for (uint32_t i = cnt; i-- > 0;) {
      std::swap(pool[i], pool[swapped[i]]);
    }
    std::sort(cols.begin(), cols.end());
    for (uint32_t c : cols) {
      a.col_indices.push_back(c);
      a.values.push_back(val(rng));
    }
    a.row_offsets[static_cast<size_t>(r) + 1] = a.col_indices.size();
  }

  SpmmProblem p;
  p.a = std::move(a);
  p.b = random_dense(k, n, rng);
  p.c_in = random_dense(m, n, rng);
  std::uniform_real_distribution<float> scalar(-2.0f, 2.0f);
  p.alpha = scalar(rng);
  p.beta = scalar(rng);
  return p;
}

}  // namespace sxt
