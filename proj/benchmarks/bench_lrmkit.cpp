// Wall-clock benchmarks over the library's hot paths. Inputs are drawn with
// the run-controlled generator so the disorder level is part of the state:
// most fixtures take {n, runs}.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <lrmkit/bitseq.hpp>
#include <lrmkit/generator.hpp>
#include <lrmkit/lrm.hpp>
#include <lrmkit/partition_sort.hpp>
#include <lrmkit/permcode.hpp>
#include <lrmkit/rmq.hpp>

namespace {

constexpr std::uint64_t k_seed = 0xBE7C4;

lrmkit::input_array make_input(const benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto runs = static_cast<std::size_t>(state.range(1));
    return lrmkit::input_array(lrmkit::generate_permutation(n, runs, k_seed));
}

void args_n_runs(benchmark::internal::Benchmark* b)
{
    for (const std::int64_t n : {1 << 12, 1 << 16, 1 << 20}) {
        b->Args({n, 2});
        b->Args({n, n >> 6});
        b->Args({n, n >> 1});
    }
}

std::vector<std::pair<std::size_t, std::size_t>> query_batch(std::size_t n, std::size_t count)
{
    std::mt19937_64 rng(k_seed ^ n);
    std::vector<std::pair<std::size_t, std::size_t>> qs(count);
    for (auto& [i, j] : qs) {
        i = 1 + rng() % n;
        j = 1 + rng() % n;
        if (i > j) {
            std::swap(i, j);
        }
    }
    return qs;
}

void bm_build_tree(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrmkit::build_lrm_tree(a));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_build_tree)->Apply(args_n_runs);

void bm_sort_lrm(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrmkit::sort_lrm(a));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_sort_lrm)->Apply(args_n_runs);

void bm_sort_std(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    for (auto _ : state) {
        std::vector<std::int64_t> v = a.values();
        std::sort(v.begin(), v.end());
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_sort_std)->Apply(args_n_runs);

void bm_rmq_plain(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::plain_rmq_index idx(a);
    const auto qs = query_batch(a.size(), 1024);
    for (auto _ : state) {
        for (const auto& [i, j] : qs) {
            benchmark::DoNotOptimize(idx.query(i, j));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
}
BENCHMARK(bm_rmq_plain)->Apply(args_n_runs);

void bm_rmq_strict_runs(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::strict_runs_rmq_index idx(a);
    const auto qs = query_batch(a.size(), 1024);
    for (auto _ : state) {
        for (const auto& [i, j] : qs) {
            benchmark::DoNotOptimize(idx.query(i, j));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
}
BENCHMARK(bm_rmq_strict_runs)->Apply(args_n_runs);

void bm_rmq_runs(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::runs_rmq_index idx(a);
    const auto qs = query_batch(a.size(), 1024);
    for (auto _ : state) {
        for (const auto& [i, j] : qs) {
            benchmark::DoNotOptimize(idx.query(a, i, j));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
}
BENCHMARK(bm_rmq_runs)->Apply(args_n_runs);

void bm_perm_encode(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrmkit::perm_code::encode(a.values()));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_perm_encode)->Apply(args_n_runs);

void bm_perm_apply(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::perm_code code = lrmkit::perm_code::encode(a.values());
    std::mt19937_64 rng(k_seed);
    std::vector<std::size_t> is(1024);
    for (auto& i : is) {
        i = 1 + rng() % a.size();
    }
    for (auto _ : state) {
        for (const std::size_t i : is) {
            benchmark::DoNotOptimize(code.apply(i));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(is.size()));
}
BENCHMARK(bm_perm_apply)->Apply(args_n_runs);

void bm_perm_inverse(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::perm_code code = lrmkit::perm_code::encode(a.values());
    std::mt19937_64 rng(k_seed);
    std::vector<std::size_t> vs(1024);
    for (auto& v : vs) {
        v = 1 + rng() % a.size();
    }
    for (auto _ : state) {
        for (const std::size_t v : vs) {
            benchmark::DoNotOptimize(code.inverse(v));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vs.size()));
}
BENCHMARK(bm_perm_inverse)->Apply(args_n_runs);

void bm_bitvector_rank(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(k_seed);
    lrmkit::bit_string bits;
    bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bits.push_back(rng() & 1);
    }
    const lrmkit::plain_bit_vector pv(bits);
    std::vector<std::size_t> at(1024);
    for (auto& i : at) {
        i = rng() % n;
    }
    for (auto _ : state) {
        for (const std::size_t i : at) {
            benchmark::DoNotOptimize(pv.rank1(i));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(at.size()));
}
BENCHMARK(bm_bitvector_rank)->Arg(1 << 16)->Arg(1 << 22);

void bm_bitvector_select(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(k_seed);
    lrmkit::bit_string bits;
    bits.reserve(n);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool b = rng() & 1;
        ones += b;
        bits.push_back(b);
    }
    const lrmkit::plain_bit_vector pv(bits);
    std::vector<std::size_t> ks(1024);
    for (auto& k : ks) {
        k = 1 + rng() % ones;
    }
    for (auto _ : state) {
        for (const std::size_t k : ks) {
            benchmark::DoNotOptimize(pv.select1(k));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ks.size()));
}
BENCHMARK(bm_bitvector_select)->Arg(1 << 16)->Arg(1 << 22);

void bm_forest_navigation(benchmark::State& state)
{
    const lrmkit::input_array a = make_input(state);
    const lrmkit::perm_code code = lrmkit::perm_code::encode(a.values());
    const lrmkit::bp_forest& f = code.forest();
    std::mt19937_64 rng(k_seed);
    std::vector<std::size_t> leaves(1024);
    for (auto& i : leaves) {
        i = 1 + rng() % a.size();
    }
    for (auto _ : state) {
        for (const std::size_t i : leaves) {
            const std::size_t leaf = f.leaf_select(i);
            benchmark::DoNotOptimize(f.parent(leaf));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(leaves.size()));
}
BENCHMARK(bm_forest_navigation)->Apply(args_n_runs);

} // namespace

BENCHMARK_MAIN();
