#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>
#include <sstream>

#include "sxt/errors.hpp"
#include "sxt/matrix.hpp"
#include "sxt/mtx_io.hpp"
#include "test_util.hpp"

using namespace sxt;
using namespace sxt_test;

TEST_CASE("matrix market: 3x3 identity") {
  auto path = temp_file("ident3.mtx");
  write_text(path,
             "%%MatrixMarket matrix coordinate real general\n"
             "3 3 3\n1 1 1.0\n2 2 1.0\n3 3 1.0\n");
  CooMatrix m = load_matrix_market(path, true);
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0] == CooEntry{0, 0, 1.0f});
  CHECK(m.entries[1] == CooEntry{1, 1, 1.0f});
  CHECK(m.entries[2] == CooEntry{2, 2, 1.0f});
}

TEST_CASE("matrix market: symmetric expansion") {
  auto path = temp_file("sym3.mtx");
  write_text(path,
             "%%MatrixMarket matrix coordinate real symmetric\n"
             "3 3 2\n3 1 5.0\n2 2 4.0\n");
  CooMatrix expanded = load_matrix_market(path, true);
  REQUIRE(expanded.entries.size() == 3);
  CHECK(expanded.entries[0] == CooEntry{0, 2, 5.0f});
  CHECK(expanded.entries[1] == CooEntry{1, 1, 4.0f});
  CHECK(expanded.entries[2] == CooEntry{2, 0, 5.0f});

  CooMatrix stored = load_matrix_market(path, false);
  CHECK(stored.entries.size() == 2);
}

TEST_CASE("matrix market: declared nnz preserved at corpus scale") {
  // Sized after the smallest corpus matrix the hardware target handles.
  const uint32_t nnz = 20296;
  auto path = temp_file("snap_scale.mtx");
  std::ostringstream ss;
  ss << "%%MatrixMarket matrix coordinate real general\n";
  ss << "1005 1005 " << nnz << "\n";
  std::mt19937 rng(99);
  // distinct coordinates: walk a strided sequence of the 1005*1005 grid
  uint64_t pos = 0;
  for (uint32_t i = 0; i < nnz; ++i) {
    pos += 1 + rng() % 49;
    ss << (pos / 1005 % 1005) + 1 << " " << (pos % 1005) + 1 << " 1.5\n";
  }
  write_text(path, ss.str());
  CooMatrix m = load_matrix_market(path, true);
  CHECK(m.entries.size() == nnz);
}

TEST_CASE("matrix market: pattern entries read as 1.0, duplicates sum") {
  auto path = temp_file("pat.mtx");
  write_text(path,
             "%%MatrixMarket matrix coordinate pattern general\n"
             "4 4 2\n2 3\n2 3\n");
  CooMatrix m = load_matrix_market(path, true);
  REQUIRE(m.entries.size() == 1);
  CHECK(m.entries[0] == CooEntry{1, 2, 2.0f});  // duplicates summed
}

TEST_CASE("matrix market: rejections") {
  auto arr = temp_file("arr.mtx");
  write_text(arr, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(load_matrix_market(arr, true), io_error);

  auto bad_banner = temp_file("bad_banner.mtx");
  write_text(bad_banner, "%MatrixMarket matrix coordinate real general\n1 1 0\n");
  CHECK_THROWS_AS(load_matrix_market(bad_banner, true), io_error);

  auto oob = temp_file("oob.mtx");
  write_text(oob,
             "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
  CHECK_THROWS_AS(load_matrix_market(oob, true), io_error);

  auto cplx = temp_file("cplx.mtx");
  write_text(cplx,
             "%%MatrixMarket matrix coordinate complex general\n"
             "1 1 1\n1 1 1.0 0.0\n");
  CHECK_THROWS_AS(load_matrix_market(cplx, true), io_error);

  auto trunc = temp_file("trunc.mtx");
  write_text(trunc,
             "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n");
  CHECK_THROWS_AS(load_matrix_market(trunc, true), io_error);

  CHECK_THROWS_AS(load_matrix_market(temp_file("missing.mtx"), true), io_error);
}

TEST_CASE("matrix market: fixture corpus loads") {
  for (const char* name :
       {"identity8.mtx", "tridiag100.mtx", "sym_path64.mtx",
        "pattern_star32.mtx", "tall200x37.mtx", "wide37x200.mtx",
        "integer128.mtx", "dense8.mtx", "single5x7.mtx", "rand513x517.mtx"}) {
    CAPTURE(name);
    CooMatrix m = load_matrix_market(fixture(name), true);
    CHECK(m.entries.size() > 0);
    for (const CooEntry& e : m.entries) {
      CHECK(e.row < m.num_rows);
      CHECK(e.col < m.num_cols);
    }
  }
}

TEST_CASE("coo_to_csr: empty matrix") {
  CooMatrix m;
  m.num_rows = 4;
  m.num_cols = 4;
  CsrMatrix csr = coo_to_csr(m);
  CHECK(csr.row_offsets == std::vector<uint64_t>{0, 0, 0, 0, 0});
  CHECK(csr.nnz() == 0);
}

TEST_CASE("coo_to_csr: hand-checkable 2x2") {
  CooMatrix m;
  m.num_rows = 2;
  m.num_cols = 2;
  m.entries = {{1, 0, 2.0f}, {0, 1, 3.0f}};
  CsrMatrix csr = coo_to_csr(m);
  CHECK(csr.row_offsets == std::vector<uint64_t>{0, 1, 2});
  CHECK(csr.col_indices == std::vector<uint32_t>{1, 0});
  CHECK(csr.values == std::vector<float>{3.0f, 2.0f});
}

TEST_CASE("coo/csr round trip preserves the entry multiset") {
  SpmmProblem p = random_problem(100, 100, 1, 0.05, 42);
  CooMatrix coo = csr_to_coo(p.a);
  CsrMatrix back = coo_to_csr(coo);
  CHECK(back.row_offsets == p.a.row_offsets);
  CHECK(back.col_indices == p.a.col_indices);
  CHECK(back.values == p.a.values);
}

TEST_CASE("reference_spmm: identity and degenerate alpha/beta") {
  SpmmProblem p = random_problem(16, 16, 8, 0.3, 7);
  // A = I
  CooMatrix ident;
  ident.num_rows = ident.num_cols = 16;
  for (uint32_t i = 0; i < 16; ++i) ident.entries.push_back({i, i, 1.0f});
  p.a = coo_to_csr(ident);
  p.alpha = 1.0f;
  p.beta = 0.0f;
  DenseMatrix out = reference_spmm(p);
  CHECK(out.values == p.b.values);

  p.alpha = 0.0f;
  p.beta = 1.0f;
  out = reference_spmm(p);
  CHECK(out.values == p.c_in.values);
}

TEST_CASE("reference_spmm: partition-example row sums") {
  CooMatrix coo = load_matrix_market(fixture("part8x8.mtx"), true);
  // independent oracle: brute-force row sums of the raw entries
  std::vector<float> rowsum(8, 0.0f);
  for (const CooEntry& e : coo.entries) rowsum[e.row] += e.value;

  SpmmProblem p;
  p.a = coo_to_csr(coo);
  p.b = DenseMatrix::zeros(8, 1);
  std::fill(p.b.values.begin(), p.b.values.end(), 1.0f);
  p.c_in = DenseMatrix::zeros(8, 1);
  p.alpha = 1.0f;
  p.beta = 0.0f;
  DenseMatrix out = reference_spmm(p);
  for (uint32_t r = 0; r < 8; ++r) {
    CHECK(out.at(r, 0) == doctest::Approx(rowsum[r]).epsilon(1e-6));
  }
}

TEST_CASE("reference_spmm: linearity under power-of-two alpha") {
  SpmmProblem p = random_problem(32, 24, 8, 0.2, 11);
  p.c_in = DenseMatrix::zeros(32, 8);
  p.alpha = 1.0f;
  p.beta = 0.0f;
  DenseMatrix base = reference_spmm(p);

  SpmmProblem scaled = p;
  for (float& v : scaled.a.values) v *= 4.0f;  // exact in fp32
  DenseMatrix out = reference_spmm(scaled);
  for (size_t i = 0; i < out.values.size(); ++i) {
    CHECK(out.values[i] == 4.0f * base.values[i]);
  }
}

TEST_CASE("reference_spmm: alpha/beta recomposition within 1 ulp") {
  SpmmProblem p = random_problem(32, 24, 8, 0.2, 13);
  DenseMatrix full = reference_spmm(p);

  SpmmProblem plain = p;
  plain.alpha = 1.0f;
  plain.beta = 0.0f;
  plain.c_in = DenseMatrix::zeros(32, 8);
  DenseMatrix ab = reference_spmm(plain);
  for (size_t i = 0; i < full.values.size(); ++i) {
    const float recomposed =
        p.alpha * ab.values[i] + p.beta * p.c_in.values[i];
    CHECK(within_one_ulp(full.values[i], recomposed));
  }
}

TEST_CASE("random_problem: density one is fully dense") {
  SpmmProblem p = random_problem(8, 8, 8, 1.0, 3);
  CHECK(p.a.nnz() == 64);
}

TEST_CASE("random_problem: deterministic for a fixed seed") {
  SpmmProblem a = random_problem(100, 100, 8, 0.05, 7);
  SpmmProblem b = random_problem(100, 100, 8, 0.05, 7);
  CHECK(a.a.col_indices == b.a.col_indices);
  CHECK(a.a.values == b.a.values);
  CHECK(a.b.values == b.b.values);
  CHECK(a.c_in.values == b.c_in.values);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta == b.beta);
}

TEST_CASE("random_problem: nnz within 3 sigma of the binomial expectation") {
  const uint64_t m = 513351, k = 1000;
  const double density = 1e-5;
  SpmmProblem p = random_problem(m, k, 1, density, 1);
  const double mean = double(m) * double(k) * density;
  const double sigma = std::sqrt(mean * (1.0 - density));
  CHECK(double(p.a.nnz()) > mean - 3 * sigma);
  CHECK(double(p.a.nnz()) < mean + 3 * sigma);
}

TEST_CASE("random_problem: rejects zero dimensions and bad density") {
  CHECK_THROWS_AS(random_problem(0, 4, 4, 0.5, 1), config_error);
  CHECK_THROWS_AS(random_problem(4, 0, 4, 0.5, 1), config_error);
  CHECK_THROWS_AS(random_problem(4, 4, 0, 0.5, 1), config_error);
  CHECK_THROWS_AS(random_problem(4, 4, 4, 0.0, 1), config_error);
  CHECK_THROWS_AS(random_problem(4, 4, 4, 1.5, 1), config_error);
}

TEST_CASE("save/load round trip") {
  SpmmProblem p = random_problem(40, 30, 1, 0.1, 17);
  auto path = temp_file("roundtrip.mtx");
  save_matrix_market(path, csr_to_coo(p.a));
  CooMatrix back = load_matrix_market(path, true);
  CsrMatrix csr = coo_to_csr(back);
  CHECK(csr.col_indices == p.a.col_indices);
  CHECK(csr.values == p.a.values);  // %.9g round-trips fp32 exactly
}
