// Command-line front end: input generation with a controlled run count,
// disorder stats, adaptive sorting, range-minimum index build/query, the
// permutation codec, and a machine-readable benchmark sweep.
//
// Exit codes: 0 success, 1 contract violation (bad flags, bad ranges, bad
// permutations), 2 I/O trouble (unreadable files, malformed text, damaged
// containers).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lrmkit/errors.hpp>
#include <lrmkit/generator.hpp>
#include <lrmkit/lrm.hpp>
#include <lrmkit/partition_sort.hpp>
#include <lrmkit/permcode.hpp>
#include <lrmkit/rmq.hpp>
#include <lrmkit/serialize.hpp>

using json = nlohmann::ordered_json;

namespace {

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw lrmkit::io_error("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw lrmkit::io_error("cannot open '" + path + "' for writing");
    }
    return out;
}

// empty path = stdout
void emit_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out = open_out(path);
        out << text;
        if (!out) {
            throw lrmkit::io_error("short write to '" + path + "'");
        }
    }
}

void emit_array(const std::string& path, const std::vector<std::int64_t>& v)
{
    std::ostringstream buf;
    lrmkit::write_int_array(buf, v);
    emit_text(path, buf.str());
}

json measures_json(const lrmkit::measure_report& m)
{
    json j;
    j["n"] = m.n;
    j["rho"] = m.rho;
    j["rho_strict"] = m.rho_strict;
    j["n_sus"] = m.n_sus;
    j["h_runs"] = m.h_runs;
    j["h_lrm"] = m.h_lrm;
    return j;
}

json rmq_size_json(const lrmkit::rmq_size_report& r)
{
    json j;
    j["payload_bits"] = r.payload_bits;
    j["directory_bits"] = r.directory_bits;
    j["total_bits"] = r.total_bits;
    return j;
}

json perm_size_json(const lrmkit::perm_code& c)
{
    const lrmkit::perm_size_report r = c.size_report();
    json j;
    j["n"] = c.size();
    j["parts"] = c.parts();
    j["forest_paren_bits"] = r.forest_paren_bits;
    j["forest_nav_bits"] = r.forest_nav_bits;
    j["merge_payload_bits"] = r.merge_payload_bits;
    j["merge_directory_bits"] = r.merge_directory_bits;
    j["merge_shape_bits"] = r.merge_shape_bits;
    j["lrm_bits"] = r.lrm_bits;
    j["total_bits"] = r.total_bits;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void run_gen(std::size_t n, std::size_t runs, std::uint64_t seed, const std::string& out)
{
    const std::vector<std::int64_t> v = lrmkit::generate_permutation(n, runs, seed);
    emit_array(out, v);
    const lrmkit::input_array a(v);
    const std::size_t achieved = lrmkit::run_heads(a, false).popcount();
    std::cerr << "gen: n=" << n << " requested_runs=" << runs << " achieved_runs=" << achieved
              << " seed=" << seed << "\n";
}

void run_stats(const std::string& in, const std::string& out)
{
    const lrmkit::input_array a(lrmkit::load_int_array(in));
    emit_text(out, dump(measures_json(lrmkit::measures(a))));
}

void run_sort(const std::string& algo, const std::string& in, const std::string& out,
              const std::string& stats_path)
{
    const lrmkit::input_array a(lrmkit::load_int_array(in));
    const auto [sorted, st] =
        algo == "lrm" ? lrmkit::sort_lrm(a) : lrmkit::sort_runs_baseline(a);
    emit_array(out, sorted);
    if (!stats_path.empty()) {
        const lrmkit::measure_report m = lrmkit::measures(a);
        json j = measures_json(m);
        j["cmp_build"] = st.cmp_build;
        j["cmp_merge"] = st.cmp_merge;
        j["cmp_total"] = st.cmp_total;
        j["internal_ops"] = st.internal_ops;
        j["max_leaf_depth"] = st.max_leaf_depth;
        emit_text(stats_path, dump(j));
    }
}

void run_rmq_build(const std::string& kind, const std::string& in, const std::string& out)
{
    const lrmkit::input_array a(lrmkit::load_int_array(in));
    std::ofstream os = open_out(out);
    if (kind == "plain") {
        lrmkit::save(os, lrmkit::plain_rmq_index(a));
    } else if (kind == "sruns") {
        lrmkit::save(os, lrmkit::strict_runs_rmq_index(a));
    } else {
        lrmkit::save(os, lrmkit::runs_rmq_index(a));
    }
    if (!os) {
        throw lrmkit::io_error("short write to '" + out + "'");
    }
}

void run_rmq_query(const std::string& idx_path, const std::string& data_path, std::size_t i,
                   std::size_t j)
{
    std::ifstream is = open_in(idx_path);
    const lrmkit::any_rmq_index idx = lrmkit::load_any_rmq(is);
    std::size_t result = 0;
    if (const auto* p = std::get_if<lrmkit::plain_rmq_index>(&idx)) {
        result = p->query(i, j);
    } else if (const auto* s = std::get_if<lrmkit::strict_runs_rmq_index>(&idx)) {
        result = s->query(i, j);
    } else {
        const auto& r = std::get<lrmkit::runs_rmq_index>(idx);
        if (data_path.empty()) {
            throw std::invalid_argument(
                "rmq query: this index is systematic; pass the source array via --data");
        }
        const lrmkit::input_array a(lrmkit::load_int_array(data_path));
        if (a.size() != r.size()) {
            throw std::invalid_argument("rmq query: --data holds " + std::to_string(a.size()) +
                                        " values but the index covers " +
                                        std::to_string(r.size()));
        }
        result = r.query(a, i, j);
    }
    std::cout << result << "\n";
}

void run_perm_encode(const std::string& in, const std::string& out, bool with_index)
{
    const std::vector<std::int64_t> v = lrmkit::load_int_array(in);
    const lrmkit::perm_code c = lrmkit::perm_code::encode(v, with_index);
    std::ofstream os = open_out(out);
    lrmkit::save(os, c);
    if (!os) {
        throw lrmkit::io_error("short write to '" + out + "'");
    }
}

lrmkit::perm_code load_code(const std::string& path)
{
    std::ifstream is = open_in(path);
    return lrmkit::load_perm_code(is);
}

void run_perm_size(const std::string& code_path, bool as_json)
{
    const lrmkit::perm_code c = load_code(code_path);
    if (as_json) {
        std::cout << dump(perm_size_json(c));
        return;
    }
    const json j = perm_size_json(c);
    for (const auto& [key, value] : j.items()) {
        std::cout << key << " = " << value << "\n";
    }
}

// Powers of two up to n, then n itself; the shape of the disorder sweep.
std::vector<std::size_t> sweep_run_counts(std::size_t n)
{
    std::vector<std::size_t> rhos;
    for (std::size_t r = 1; r < n; r *= 2) {
        rhos.push_back(r);
    }
    rhos.push_back(n);
    return rhos;
}

json bench_point(std::size_t n, std::size_t requested, std::uint64_t seed, std::size_t queries)
{
    const std::vector<std::int64_t> v = lrmkit::generate_permutation(n, requested, seed);
    const lrmkit::input_array a(v);

    json input;
    input["n"] = n;
    input["seed"] = seed;
    input["requested_runs"] = requested;
    input["achieved_runs"] = lrmkit::run_heads(a, false).popcount();

    const auto [sorted, st] = lrmkit::sort_lrm(a);
    (void)sorted;

    const lrmkit::plain_rmq_index plain(a);
    const lrmkit::strict_runs_rmq_index sruns(a);
    const lrmkit::runs_rmq_index runs(a);
    const lrmkit::perm_code code = lrmkit::perm_code::encode(v);

    // same query batch against all three indices; only the systematic one may
    // touch the array, and its counter is read back per batch
    std::mt19937_64 qrng(seed ^ 0x517cc1b727220a95ULL);
    std::vector<std::pair<std::size_t, std::size_t>> ranges(queries);
    for (auto& [qi, qj] : ranges) {
        qi = 1 + static_cast<std::size_t>(qrng() % n);
        qj = 1 + static_cast<std::size_t>(qrng() % n);
        if (qi > qj) {
            std::swap(qi, qj);
        }
    }
    a.reset_comparisons();
    for (const auto& [qi, qj] : ranges) {
        (void)plain.query(qi, qj);
        (void)sruns.query(qi, qj);
    }
    const std::uint64_t nonsystematic_accesses = a.comparisons();  // stays 0
    a.reset_comparisons();
    for (const auto& [qi, qj] : ranges) {
        (void)runs.query(a, qi, qj);
    }
    const std::uint64_t runs_accesses = a.comparisons();

    json counters;
    counters["cmp_build"] = st.cmp_build;
    counters["cmp_merge"] = st.cmp_merge;
    counters["cmp_total"] = st.cmp_total;
    counters["internal_ops"] = st.internal_ops;
    counters["max_leaf_depth"] = st.max_leaf_depth;
    json accesses;
    accesses["queries"] = queries;
    accesses["plain"] = nonsystematic_accesses;
    accesses["strict_runs"] = nonsystematic_accesses;
    accesses["runs"] = runs_accesses;
    counters["data_accesses"] = accesses;

    json sizes;
    sizes["rmq_plain"] = rmq_size_json(plain.size_report());
    sizes["rmq_strict_runs"] = rmq_size_json(sruns.size_report());
    sizes["rmq_runs"] = rmq_size_json(runs.size_report());
    sizes["perm_code"] = perm_size_json(code);

    json pt;
    pt["input"] = input;
    pt["measures"] = measures_json(lrmkit::measures(a));
    pt["counters"] = counters;
    pt["sizes"] = sizes;
    return pt;
}

void run_bench(std::size_t n, std::uint64_t seed, std::size_t queries, bool no_meta,
               const std::string& out)
{
    if (n == 0) {
        throw std::invalid_argument("bench: need n >= 1");
    }
    json report;
    if (!no_meta) {
        const std::time_t now = std::chrono::system_clock::to_time_t(
            std::chrono::system_clock::now());
        char stamp[32];
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        report["meta"] = json{{"generated_at", stamp}};
    }
    report["n"] = n;
    report["seed"] = seed;
    report["queries_per_batch"] = queries;
    json points = json::array();
    const std::vector<std::size_t> rhos = sweep_run_counts(n);
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        points.push_back(bench_point(n, rhos[k], seed + k, queries));
    }
    report["points"] = std::move(points);
    emit_text(out, dump(report));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lrmkit: adaptive sorting, range-minimum indexing, and "
                 "permutation compression driven by ascending-run structure"};
    app.require_subcommand(1);

    // gen
    std::size_t gen_n = 0, gen_runs = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "emit a permutation with an exact run count");
    gen->add_option("--n", gen_n, "permutation length")->required();
    gen->add_option("--runs", gen_runs, "ascending runs to produce")->required();
    gen->add_option("--seed", gen_seed, "draw seed")->envname("LRMKIT_SEED");
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->callback([&] { run_gen(gen_n, gen_runs, gen_seed, gen_out); });

    // stats
    std::string stats_in, stats_out;
    CLI::App* stats = app.add_subcommand("stats", "disorder measures of an array, as JSON");
    stats->add_option("--in", stats_in, "input array file")->required();
    stats->add_option("--out", stats_out, "output file (default stdout)");
    stats->callback([&] { run_stats(stats_in, stats_out); });

    // sort
    std::string sort_algo, sort_in, sort_out, sort_stats_path;
    CLI::App* sort = app.add_subcommand("sort", "sort an array, counting data comparisons");
    sort->add_option("--algo", sort_algo, "lrm | runs")
        ->required()
        ->check(CLI::IsMember({"lrm", "runs"}));
    sort->add_option("--in", sort_in, "input array file")->required();
    sort->add_option("--out", sort_out, "sorted output file (default stdout)");
    sort->add_option("--stats", sort_stats_path, "write counter JSON here");
    sort->callback([&] { run_sort(sort_algo, sort_in, sort_out, sort_stats_path); });

    // rmq build / rmq query
    CLI::App* rmq = app.add_subcommand("rmq", "range-minimum indexing");
    rmq->require_subcommand(1);
    std::string rb_kind, rb_in, rb_out;
    CLI::App* rmq_build = rmq->add_subcommand("build", "build and store an index");
    rmq_build->add_option("--index", rb_kind, "plain | sruns | runs")
        ->required()
        ->check(CLI::IsMember({"plain", "sruns", "runs"}));
    rmq_build->add_option("--in", rb_in, "input array file")->required();
    rmq_build->add_option("--out", rb_out, "index container file")->required();
    rmq_build->callback([&] { run_rmq_build(rb_kind, rb_in, rb_out); });

    std::string rq_idx, rq_data;
    std::size_t rq_i = 0, rq_j = 0;
    CLI::App* rmq_query = rmq->add_subcommand("query", "leftmost minimum position in [i..j]");
    rmq_query->add_option("--idx", rq_idx, "index container file")->required();
    rmq_query->add_option("--data", rq_data, "source array (systematic index only)");
    rmq_query->add_option("i", rq_i, "range start, 1-based")->required();
    rmq_query->add_option("j", rq_j, "range end, inclusive")->required();
    rmq_query->callback([&] { run_rmq_query(rq_idx, rq_data, rq_i, rq_j); });

    // perm encode / apply / inverse / size
    CLI::App* perm = app.add_subcommand("perm", "permutation codec");
    perm->require_subcommand(1);
    std::string pe_in, pe_out;
    bool pe_with_index = false;
    CLI::App* pe = perm->add_subcommand("encode", "compress a permutation");
    pe->add_option("--in", pe_in, "permutation file, values 1..n")->required();
    pe->add_option("--out", pe_out, "code container file")->required();
    pe->add_flag("--with-index", pe_with_index,
                 "retain the minima tree for psv/rmq queries on the code");
    pe->callback([&] { run_perm_encode(pe_in, pe_out, pe_with_index); });

    std::string pa_code;
    std::size_t pa_i = 0;
    CLI::App* pa = perm->add_subcommand("apply", "evaluate the permutation at i");
    pa->add_option("--code", pa_code, "code container file")->required();
    pa->add_option("i", pa_i, "position, 1-based")->required();
    pa->callback([&] { std::cout << load_code(pa_code).apply(pa_i) << "\n"; });

    std::string pi_code;
    std::size_t pi_v = 0;
    CLI::App* pinv = perm->add_subcommand("inverse", "find the position mapping to v");
    pinv->add_option("--code", pi_code, "code container file")->required();
    pinv->add_option("v", pi_v, "value, 1-based")->required();
    pinv->callback([&] { std::cout << load_code(pi_code).inverse(pi_v) << "\n"; });

    std::string ps_code;
    bool ps_json = false;
    CLI::App* ps = perm->add_subcommand("size", "itemized bit counts of a stored code");
    ps->add_option("--code", ps_code, "code container file")->required();
    ps->add_flag("--json", ps_json, "machine-readable output");
    ps->callback([&] { run_perm_size(ps_code, ps_json); });

    // bench
    std::size_t bench_n = 0, bench_queries = 256;
    std::uint64_t bench_seed = 0;
    bool bench_no_meta = false;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand(
        "bench", "sweep the run count over powers of two and report counters and sizes");
    bench->add_option("--n", bench_n, "permutation length per point")->required();
    bench->add_option("--seed", bench_seed, "base seed; point k uses seed+k")
        ->envname("LRMKIT_SEED");
    bench->add_option("--queries", bench_queries, "range queries per batch");
    bench->add_flag("--no-meta", bench_no_meta, "omit timestamps for byte-stable output");
    bench->add_option("--out", bench_out, "output file (default stdout)");
    bench->callback(
        [&] { run_bench(bench_n, bench_seed, bench_queries, bench_no_meta, bench_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const lrmkit::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lrmkit::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
