#pragma once

#include <cstdint>
#include <vector>

namespace lrmkit {

// Permutation of [1..n] with exactly `runs` maximal ascending runs: runs−1
// cut positions drawn without replacement (partial Fisher-Yates; modulo
// reduction keeps the stream identical across platforms), blocks filled with
// ascending values, later blocks taking strictly lower value ranges so every
// cut lands on a descent. Deterministic under seed. Requires 1 ≤ runs ≤ n,
// else std::invalid_argument.
std::vector<std::int64_t> generate_permutation(std::size_t n, std::size_t runs,
                                               std::uint64_t seed);

} // namespace lrmkit
