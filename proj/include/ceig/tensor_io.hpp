#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ceig/piezo_tensor.hpp"

namespace ceig {

/// Parses the `.pzt` text format:
///   - UTF-8; `#` starts a comment running to end of line
///   - first non-comment line: `n <dim>`
///   - each following non-comment line: `i j k value` (1-based indices,
///     decimal or scientific-notation real)
///   - duplicate (i,j,k) triples are an error; (i,j,k)/(i,k,j) pairs are
///     resolved by the symmetrization policy
/// Throws std::invalid_argument with the offending line number.
PiezoTensor parse_tensor_file(std::string_view text, const SymmetrizationPolicy& policy = {},
                              std::string name = {});

/// Emits one `i j k value` line per nonzero with j <= k (mirrors implied),
/// sorted by (i,j,k). Values are rendered with the shortest decimal form that
/// round-trips bit-exactly, so parse(write(A)) reproduces A.
std::string write_tensor_file(const PiezoTensor& A);

/// Reads and parses a `.pzt` file; the tensor name defaults to the file stem.
PiezoTensor load_tensor_file(const std::filesystem::path& path,
                             const SymmetrizationPolicy& policy = {});

}  // namespace ceig
