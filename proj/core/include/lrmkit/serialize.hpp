#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <lrmkit/lrm.hpp>
#include <lrmkit/permcode.hpp>
#include <lrmkit/rmq.hpp>

namespace lrmkit {

// Arrays travel as UTF-8 text: whitespace-separated signed decimal 64-bit
// integers, written one per line. Anything that does not lex as such raises
// parse_error carrying the 1-based line and column of the first bad byte.
std::vector<std::int64_t> read_int_array(std::istream& in);
void write_int_array(std::ostream& out, const std::vector<std::int64_t>& v);
std::vector<std::int64_t> load_int_array(const std::string& path); // io_error when unreadable
void store_int_array(const std::string& path, const std::vector<std::int64_t>& v);

// Structures travel in the LRMK container: magic "LRMK", version byte, type
// tag, flag byte, then one length-prefixed little-endian payload. Bit strings
// inside the payload carry their bit count (which fixes the byte padding) and
// are packed LSB-first; padding bits must read back zero. Loaders throw
// io_error on anything wrong with the file — bad magic, unknown version or
// type, truncation, trailing bytes, or sections that fail the target
// structure's own cross-checks.
enum class lrmk_type : std::uint8_t {
    minima_tree = 1,
    rmq_plain = 2,
    rmq_strict_runs = 3,
    rmq_runs = 4,
    permutation = 5,
};

void save(std::ostream& out, const lrm_tree& t);
void save(std::ostream& out, const plain_rmq_index& idx);
void save(std::ostream& out, const strict_runs_rmq_index& idx);
void save(std::ostream& out, const runs_rmq_index& idx);
void save(std::ostream& out, const perm_code& c);

lrm_tree load_minima_tree(std::istream& in);
plain_rmq_index load_rmq_plain(std::istream& in);
strict_runs_rmq_index load_rmq_strict_runs(std::istream& in);
runs_rmq_index load_rmq_runs(std::istream& in);
perm_code load_perm_code(std::istream& in);

// Any of the three index types, dispatched on the stored tag.
using any_rmq_index = std::variant<plain_rmq_index, strict_runs_rmq_index, runs_rmq_index>;
any_rmq_index load_any_rmq(std::istream& in);

} // namespace lrmkit
