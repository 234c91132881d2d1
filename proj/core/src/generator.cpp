#include <lrmkit/generator.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

namespace lrmkit {

std::vector<std::int64_t> generate_permutation(std::size_t n, std::size_t runs,
                                               std::uint64_t seed)
{
    if (runs < 1 || runs > n)
        throw std::invalid_argument("generate: need 1 <= runs <= n");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> cuts(n - 1);
    std::iota(cuts.begin(), cuts.end(), std::size_t{1});
    for (std::size_t k = 0; k + 1 < runs; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng() % (cuts.size() - k));
        std::swap(cuts[k], cuts[j]);
    }
    cuts.resize(runs - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);

    std::vector<std::int64_t> out(n);
    std::int64_t high = static_cast<std::int64_t>(n);
    std::size_t begin = 0;
    for (const std::size_t cut : cuts) {
        const std::int64_t len = static_cast<std::int64_t>(cut - begin);
        for (std::size_t p = begin; p < cut; ++p)
            out[p] = high - len + 1 + static_cast<std::int64_t>(p - begin);
        high -= len;
        begin = cut;
    }
    return out;
}

} // namespace lrmkit
