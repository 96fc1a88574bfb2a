#include "quadspin/system_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quadspin {

using nlohmann::ordered_json;

namespace {

template <class K>
std::vector<Matrix<K>> parse_grams(const ordered_json& gram, int d, const K& like,
                                   const FieldSpec& field) {
    std::vector<Matrix<K>> out;
    for (const auto& flat : gram) {
        if (!flat.is_array() || static_cast<int>(flat.size()) != d * d)
            throw OperationalError("system json: each gram must have (2n)^2 row-major entries");
        Matrix<K> b(static_cast<std::size_t>(d), static_cast<std::size_t>(d), like);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const auto& cell = flat[static_cast<std::size_t>(i * d + j)];
                std::string text;
                if (cell.is_number_integer())
                    text = std::to_string(cell.get<long long>());
                else if (cell.is_string())
                    text = cell.get<std::string>();
                else
                    throw OperationalError("system json: entries must be integers or \"a/b\" strings");
                if constexpr (std::is_same_v<K, Fp>)
                    b.at(i, j) = fp_from_string(text, field.p);
                else
                    b.at(i, j) = rat_from_string(text);
            }
        if (!(b == b.transpose()))
            throw OperationalError("system json: gram matrix is not symmetric (input rejected, "
                                   "not symmetrized)");
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

SystemData parse_system_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw OperationalError("system json: parse error at byte " + std::to_string(e.byte) +
                               ": " + e.what());
    }
    if (!j.is_object()) throw OperationalError("system json: top level must be an object");
    for (const char* key : {"n", "m", "field", "gram"})
        if (!j.contains(key)) throw OperationalError(std::string("system json: missing key ") + key);

    SystemData sys;
    sys.n = j["n"].get<int>();
    sys.m = j["m"].get<int>();
    if (sys.n < 2 || sys.n > 4) throw OperationalError("system json: n must be 2, 3 or 4");
    if (sys.m < 1 || sys.m > 4) throw OperationalError("system json: m must be between 1 and 4");

    const auto& f = j["field"];
    if (!f.is_object() || !f.contains("kind"))
        throw OperationalError("system json: field must be {\"kind\": ...}");
    const std::string kind = f["kind"].get<std::string>();
    if (kind == "q")
        sys.field = FieldSpec::rationals();
    else if (kind == "fp") {
        if (!f.contains("p")) throw OperationalError("system json: fp field needs p");
        sys.field = FieldSpec::prime(f["p"].get<std::uint64_t>());
    } else
        throw OperationalError("system json: field.kind must be \"fp\" or \"q\"");

    const auto& gram = j["gram"];
    if (!gram.is_array() || static_cast<int>(gram.size()) != sys.m)
        throw OperationalError("system json: gram must be an array of m matrices");
    const int d = 2 * sys.n;
    if (sys.field.kind == FieldSpec::Kind::prime_field)
        sys.grams = parse_grams<Fp>(gram, d, Fp(0, sys.field.p), sys.field);
    else
        sys.grams = parse_grams<Rat>(gram, d, Rat(0), sys.field);

    if (j.contains("_meta")) sys.meta_json = j["_meta"].dump();
    if (j.contains("_expect")) sys.expect_json = j["_expect"].dump();
    return sys;
}

SystemData load_system_file(const std::string& path) {
    return parse_system_json(read_file(path));
}

std::string serialize_system(const SystemData& sys) {
    ordered_json j;
    j["n"] = sys.n;
    j["m"] = sys.m;
    if (sys.field.kind == FieldSpec::Kind::prime_field)
        j["field"] = {{"kind", "fp"}, {"p", sys.field.p}};
    else
        j["field"] = {{"kind", "q"}};
    ordered_json gram = ordered_json::array();
    auto emit = [&](const auto& mats) {
        for (const auto& b : mats) {
            ordered_json flat = ordered_json::array();
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t jcol = 0; jcol < b.cols(); ++jcol) {
                    const auto& x = b.at(i, jcol);
                    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Fp>) {
                        flat.push_back(x.v);
                    } else {
                        if (x.get_den() == 1 && x.get_num().fits_slong_p())
                            flat.push_back(static_cast<long long>(x.get_num().get_si()));
                        else
                            flat.push_back(scalar_str(x));
                    }
                }
            gram.push_back(std::move(flat));
        }
    };
    std::visit(emit, sys.grams);
    j["gram"] = std::move(gram);
    if (!sys.meta_json.empty()) j["_meta"] = ordered_json::parse(sys.meta_json);
    if (!sys.expect_json.empty()) j["_expect"] = ordered_json::parse(sys.expect_json);
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OperationalError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OperationalError("cannot write file: " + path);
    out << bytes;
    if (!out) throw OperationalError("write failed: " + path);
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace quadspin
