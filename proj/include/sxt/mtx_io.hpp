#pragma once

#include <filesystem>

#include "sxt/matrix.hpp"

namespace sxt {

/// Loads a Matrix Market coordinate file (real, integer, or pattern;
/// general or symmetric). Pattern entries read as 1.0; duplicates are
/// summed; indices are converted to 0-based. With expand_symmetric,
/// off-diagonal entries of symmetric files are mirrored.
/// Throws io_error on malformed input; the array variant is rejected.
CooMatrix load_matrix_market(const std::filesystem::path& path,
                             bool expand_symmetric);

/// Writes coordinate real general, 1-based, %.9g values.
void save_matrix_market(const std::filesystem::path& path, const CooMatrix& m);

/// Writes a dense matrix as Matrix Market array real general
/// (column-major on disk, per the format).
void save_matrix_market_array(const std::filesystem::path& path,
                              const DenseMatrix& m);

}  // namespace sxt
