#ifndef QUADSPIN_SYSTEM_IO_HPP
#define QUADSPIN_SYSTEM_IO_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "quadspin/matrix.hpp"

namespace quadspin {

// In-memory form of the shared system file format:
//   {"n": int, "m": int, "field": {"kind": "fp"|"q", "p": int?},
//    "gram": [[row-major entries] x m], "_meta"?: {...}, "_expect"?: {...}}
// Gram matrices must be symmetric as given; asymmetric input is rejected,
// not symmetrized. Entries are integers or "a/b" strings.
struct SystemData {
    FieldSpec field;
    int n{0};
    int m{0};
    std::variant<std::vector<Matrix<Rat>>, std::vector<Matrix<Fp>>> grams;
    std::string meta_json;    // raw JSON object text, "" when absent
    std::string expect_json;  // raw JSON object text, "" when absent

    const std::vector<Matrix<Rat>>& rat() const { return std::get<0>(grams); }
    const std::vector<Matrix<Fp>>& fp() const { return std::get<1>(grams); }
};

SystemData parse_system_json(const std::string& text);
SystemData load_system_file(const std::string& path);

// Canonical serialization: fixed key order, gram entries as integers where
// possible and "a/b" strings otherwise. Identical inputs give identical
// bytes.
std::string serialize_system(const SystemData& sys);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// FNV-1a 64-bit, printed as 16 hex digits; used for manifest input hashes.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace quadspin

#endif
