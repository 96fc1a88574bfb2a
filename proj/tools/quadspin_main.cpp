#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadspin/version.hpp"
#include "suites.hpp"

using namespace quadspin;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitOperational = 2;

ordered_json manifest(const std::string& command, const FieldSpec& field, int n, int m,
                      std::uint64_t seed) {
    return ordered_json{{"tool", kToolName}, {"version", kVersion}, {"command", command},
                        {"n", n},           {"m", m},               {"field", field.str()},
                        {"seed", seed}};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

FieldSpec field_from_flag_or_env(std::string flag) {
    if (flag.empty()) {
        if (const char* env = std::getenv("QF_DEFAULT_FIELD")) flag = env;
    }
    if (flag.empty()) flag = "fp:10007";
    return FieldSpec::parse(flag);
}

int cmd_gen(int n, int m, const std::string& field_flag, std::uint64_t seed,
            const std::string& out_path) {
    const FieldSpec field = field_from_flag_or_env(field_flag);
    SystemData sys;
    sys.field = field;
    sys.n = n;
    sys.m = m;
    if (field.kind == FieldSpec::Kind::prime_field) {
        std::vector<Matrix<Fp>> grams;
        for (const auto& s : random_system<Fp>(static_cast<std::size_t>(n),
                                               static_cast<std::size_t>(m), Fp(0, field.p), seed))
            grams.push_back(s.gram());
        sys.grams = std::move(grams);
    } else {
        std::vector<Matrix<Rat>> grams;
        for (const auto& s : random_system<Rat>(static_cast<std::size_t>(n),
                                                static_cast<std::size_t>(m), Rat(0), seed))
            grams.push_back(s.gram());
        sys.grams = std::move(grams);
    }
    sys.meta_json = manifest("gen", field, n, m, seed).dump();
    emit(serialize_system(sys), out_path);
    return kExitOk;
}

template <class K>
LinearSystem<K> to_system(const SystemData& data);
template <>
LinearSystem<Rat> to_system(const SystemData& data) {
    return LinearSystem<Rat>(static_cast<std::size_t>(data.n), data.rat());
}
template <>
LinearSystem<Fp> to_system(const SystemData& data) {
    return LinearSystem<Fp>(static_cast<std::size_t>(data.n), data.fp());
}

int cmd_verify(const std::string& path, const std::string& suite, std::size_t trials,
               std::uint64_t seed, bool seed_given, int jobs, const std::string& out_path,
               bool pretty) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string bytes = read_file(path);
    SystemData data = parse_system_json(bytes);

    const bool randomized = (suite != "ranks");
    if (randomized && !seed_given)
        throw OperationalError("suite '" + suite + "' is randomized: --seed is required");

    cli::SuiteResult result;
    if (suite == "ranks") {
        result = cli::run_suite_ranks(static_cast<std::size_t>(2 * data.n),
                                      static_cast<std::size_t>(data.m), data.expect_json);
    } else {
        if (data.field.kind != FieldSpec::Kind::prime_field)
            throw OperationalError("suite '" + suite +
                                   "' needs a prime-field system (isotropic search over Q is not "
                                   "supported)");
        LinearSystem<Fp> sys = to_system<Fp>(data);
        if (suite == "mf")
            result = cli::run_suite_mf(sys, trials, seed, jobs);
        else if (suite == "lemma")
            result = cli::run_suite_lemma(sys, trials, seed, jobs);
        else if (suite == "ses")
            result = cli::run_suite_ses(sys, trials, seed, jobs);
        else if (suite == "hom")
            result = cli::run_suite_hom(sys, trials, seed, jobs);
        else if (suite == "ideal-dims")
            result = cli::run_suite_ideal_dims(sys, trials, seed, jobs, data.expect_json);
        else if (suite == "complex")
            result = cli::run_suite_complex(sys, trials, seed, jobs);
        else
            throw OperationalError("unknown suite: " + suite);
    }

    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    ordered_json rep;
    rep["meta"] = manifest("verify", data.field, data.n, data.m, seed);
    rep["meta"]["suite"] = result.suite;
    rep["meta"]["trials"] = trials;
    rep["meta"]["jobs"] = jobs;
    rep["meta"]["input_fnv1a64"] = fnv1a64_hex(bytes);
    rep["meta"]["wall_ms"] = wall_ms;
    rep["cases"] = ordered_json::array();
    for (const auto& c : result.cases) {
        rep["cases"].push_back(ordered_json{{"index", c.index},
                                            {"inputs", c.inputs},
                                            {"expected", c.expected},
                                            {"got", c.got},
                                            {"pass", c.pass}});
    }
    rep["notes"] = result.notes;
    rep["passed"] = result.cases.size() - result.failed();
    rep["failed"] = result.failed();
    rep["pass"] = result.pass();

    if (pretty) {
        std::cout << "suite " << result.suite << ": " << (result.cases.size() - result.failed())
                  << "/" << result.cases.size() << " cases passed (" << wall_ms << " ms)\n";
        for (const auto& c : result.cases)
            if (!c.pass)
                std::cout << "  case " << c.index << " FAILED: expected " << c.expected
                          << ", got " << c.got << "\n";
        for (const auto& nte : result.notes) std::cout << "  note: " << nte << "\n";
        if (!out_path.empty()) write_file(out_path, rep.dump(2) + "\n");
    } else {
        emit(rep.dump(2) + "\n", out_path);
    }
    return result.pass() ? kExitOk : kExitMathFailure;
}

int cmd_strata(const std::string& path, std::uint64_t p, const std::string& out_path) {
    SystemData data = parse_system_json(read_file(path));
    StrataReport rep;
    if (data.field.kind == FieldSpec::Kind::prime_field)
        rep = strata_scan(to_system<Fp>(data), p);
    else
        rep = strata_scan(to_system<Rat>(data), p);
    std::string csv = "corank,count\n";
    for (const auto& [c, k] : rep.counts) csv += std::to_string(c) + "," + std::to_string(k) + "\n";
    emit(csv, out_path);
    return kExitOk;
}

template <class K>
ordered_json poly_terms_json(const MultiPoly<K>& poly) {
    ordered_json terms = ordered_json::object();
    for (const auto& [e, c] : poly.terms()) {
        std::string key;
        for (std::size_t i = 0; i < e.size(); ++i)
            key += (i ? "," : "") + std::to_string(e[i]);
        terms[key] = scalar_str(c);
    }
    return terms;
}

int cmd_disc(const std::string& path, const std::string& out_path, bool pretty) {
    SystemData data = parse_system_json(read_file(path));
    ordered_json rep;
    rep["meta"] = manifest("disc", data.field, data.n, data.m, 0);
    int degree = -1;
    bool degenerate = false;
    if (data.field.kind == FieldSpec::Kind::prime_field) {
        auto d = discriminant(to_system<Fp>(data));
        degree = d.degree;
        degenerate = d.degenerate;
        rep["terms"] = poly_terms_json(d.poly);
    } else {
        auto d = discriminant(to_system<Rat>(data));
        degree = d.degree;
        degenerate = d.degenerate;
        rep["terms"] = poly_terms_json(d.poly);
    }
    rep["degree"] = degree;
    rep["expected_degree"] = 2 * data.n;
    rep["degenerate"] = degenerate;

    int exit_code = kExitOk;
    if (!data.expect_json.empty()) {
        auto j = nlohmann::json::parse(data.expect_json);
        if (j.contains("disc_degree") && j["disc_degree"].get<int>() != degree) {
            rep["expect_mismatch"] = "disc_degree";
            exit_code = kExitMathFailure;
        }
    }
    if (pretty)
        std::cout << "disc degree " << degree << " (expected " << 2 * data.n << ")"
                  << (degenerate ? ", degenerate" : "") << "\n";
    else
        emit(rep.dump(2) + "\n", out_path);
    return exit_code;
}

int cmd_cover(const std::string& path, std::uint64_t scan_prime, const std::string& out_path,
              bool pretty) {
    SystemData data = parse_system_json(read_file(path));
    std::optional<LinearSystem<Fp>> scanned;
    DoubleCoverReport<Fp> rep = [&] {
        if (data.field.kind == FieldSpec::Kind::prime_field) {
            scanned = to_system<Fp>(data);
            return double_cover_report(*scanned);
        }
        auto r = double_cover_report(to_system<Rat>(data), scan_prime);
        if (r.meta.scan == DoubleCoverReportMeta::Scan::reduced)
            scanned = reduce_system(to_system<Rat>(data), r.meta.prime);
        return r;
    }();

    ordered_json j;
    j["meta"] = manifest("cover", data.field, data.n, data.m, 0);
    j["branch_smooth"] = rep.branch_smooth;
    j["discriminant"] = {{"degree", rep.disc.degree},
                         {"degenerate", rep.disc.degenerate},
                         {"terms", poly_terms_json(rep.disc.poly)}};
    j["singular_candidates"] = ordered_json::array();
    for (const auto& lam : rep.candidates_rank) {
        ordered_json entry;
        entry["lambda"] = cli::lambda_json(lam);
        entry["corank"] = scanned ? corank_at(*scanned, lam) : 2;
        j["singular_candidates"].push_back(entry);
    }
    j["methods_agree"] = rep.methods_agree;
    const char* mode = rep.meta.scan == DoubleCoverReportMeta::Scan::full        ? "full"
                       : rep.meta.scan == DoubleCoverReportMeta::Scan::reduced   ? "reduced"
                                                                                 : "unavailable";
    j["scan"] = {{"mode", mode}, {"prime", rep.meta.prime}};
    if (pretty)
        std::cout << "branch_smooth: " << (rep.branch_smooth ? "true" : "false") << ", "
                  << rep.candidates_rank.size() << " singular candidate(s), scan " << mode << "\n";
    else
        emit(j.dump(2) + "\n", out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with quadrics, Clifford algebras and spinor ideals"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random system of quadrics");
    int gen_n = 0, gen_m = 0;
    std::string gen_field, gen_out;
    std::uint64_t gen_seed = 0;
    gen->add_option("--n", gen_n, "half-dimension n (dim V = 2n)")->required();
    gen->add_option("--m", gen_m, "number of quadrics (2, 3 or 4)")->required();
    gen->add_option("--field", gen_field, "field spec: fp:<p> or q (default from QF_DEFAULT_FIELD)");
    gen->add_option("--seed", gen_seed, "generation seed")->required();
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite against a system file");
    std::string v_path, v_suite, v_out;
    std::size_t v_trials = 50;
    std::uint64_t v_seed = 0;
    int v_jobs = 1;
    bool v_pretty = false;
    verify->add_option("system", v_path, "system JSON file")->required();
    verify->add_option("--suite", v_suite, "mf | lemma | ses | hom | ranks | ideal-dims | complex")
        ->required();
    verify->add_option("--trials", v_trials, "number of randomized cases");
    auto* seed_opt = verify->add_option("--seed", v_seed, "suite seed (mandatory when randomized)");
    verify->add_option("--jobs", v_jobs, "worker threads (output order is by case index)");
    verify->add_option("--out", v_out, "write the JSON report here");
    verify->add_flag("--pretty", v_pretty, "human-readable rendering instead of JSON");

    // strata
    auto* strata = app.add_subcommand("strata", "full corank scan over P^{m-1}(F_p), CSV output");
    std::string s_path, s_out;
    std::uint64_t s_p = 11;
    strata->add_option("system", s_path, "system JSON file")->required();
    strata->add_option("--p", s_p, "scan prime (default 11)");
    strata->add_option("--out", s_out, "output path (default stdout)");

    // disc
    auto* disc = app.add_subcommand("disc", "discriminant of the system");
    std::string d_path, d_out;
    bool d_pretty = false;
    disc->add_option("system", d_path, "system JSON file")->required();
    disc->add_option("--out", d_out, "output path (default stdout)");
    disc->add_flag("--pretty", d_pretty, "human-readable rendering");

    // cover
    auto* cover = app.add_subcommand("cover", "double cover report (branch data, singular candidates)");
    std::string c_path, c_out;
    std::uint64_t c_prime = 0;
    bool c_pretty = false;
    cover->add_option("system", c_path, "system JSON file")->required();
    cover->add_option("--scan-prime", c_prime, "reduction prime for rational systems");
    cover->add_option("--out", c_out, "output path (default stdout)");
    cover->add_flag("--pretty", c_pretty, "human-readable rendering");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitOperational;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_n, gen_m, gen_field, gen_seed, gen_out);
        if (verify->parsed())
            return cmd_verify(v_path, v_suite, v_trials, v_seed, seed_opt->count() > 0, v_jobs,
                              v_out, v_pretty);
        if (strata->parsed()) return cmd_strata(s_path, s_p, s_out);
        if (disc->parsed()) return cmd_disc(d_path, d_out, d_pretty);
        if (cover->parsed()) return cmd_cover(c_path, c_prime, c_out, c_pretty);
    } catch (const MathCheckError& e) {
        std::cerr << "mathematical check failed: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const OperationalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOperational;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOperational;
    }
    return kExitOperational;
}
