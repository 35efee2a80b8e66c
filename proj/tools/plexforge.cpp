// plexforge: command-line front end. Every command prints one JSON document
// on stdout; squares and entry sets go to files.
//
// Exit codes: 0 success (or Excluded), 10 Inconclusive, 2 usage error,
// 3 data error, 1 acceptance failures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plexforge/analyze.hpp"
#include "plexforge/bounds.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/report.hpp"
#include "plexforge/search.hpp"
#include "plexforge/species.hpp"
#include "plexforge/suite.hpp"

namespace fs = std::filesystem;
using namespace plexforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInconclusive = 10;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes `text` and returns its sha256.
std::string write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << text;
    return sha256_hex(text);
}

Json input_params(const std::string& path, const std::string& text)
{
    Json j;
    j["input"] = path;
    j["input_sha256"] = sha256_hex(text);
    return j;
}

struct Context {
    std::string command;
    Json parameters = Json::object();
    Json result = Json::object();
    int exit_code = kExitOk;
};

// construct ------------------------------------------------------------

struct ConstructArgs {
    std::string variant;
    int n = 0;
    int k = 0;
    int m = 0;
    int index = 0;
    std::string out = ".";
};

void cmd_construct(const ConstructArgs& a, Context& ctx)
{
    ctx.parameters = {{"variant", a.variant}, {"n", a.n}, {"k", a.k}, {"m", a.m}, {"index", a.index}, {"out", a.out}};
    std::optional<LatinSquare> square;
    std::optional<EntrySet> plex;
    int plex_k = 0;
    if (a.variant == "cyclic") {
        square = build_cyclic(a.n);
    } else if (a.variant == "kk2") {
        KK2Params p{a.k, a.m};
        square = build_modified_square(p);
        plex = build_plex(p);
        plex_k = a.k;
    } else if (a.variant == "mod4") {
        const int index = a.index ? a.index : mod4_square_index(a.n);
        square = build_mod4_square(a.n, index);
        ctx.parameters["index"] = index;
        if (index == mod4_square_index(a.n)) {
            plex = build_plex(TriplexVariant::mod4(a.n));
            plex_k = 3;
        }
    } else if (a.variant == "mod10of12" || a.variant == "mod2of12") {
        auto v = a.variant == "mod10of12" ? TriplexVariant::mod10of12(a.m) : TriplexVariant::mod2of12(a.m);
        square = build_modified_square(v);
        plex = build_plex(v);
        plex_k = 3;
    } else if (a.variant == "special") {
        square = build_special_square(a.n);
        plex = build_special_triplex(a.n);
        plex_k = 3;
    } else {
        throw Error(ErrorCode::BadParams, "unknown variant " + a.variant);
    }
    const fs::path dir(a.out);
    ctx.result["order"] = square->order();
    ctx.result["square_path"] = (dir / "square.txt").string();
    ctx.result["square_file_sha256"] = write_file(dir / "square.txt", to_text(*square));
    ctx.result["square_digest"] = digest(*square);
    if (plex) {
        const auto plex_path = dir / "plex.txt";
        write_file(plex_path, to_text(*plex));
        // Reload so the check covers what was written.
        const auto reloaded = parse_entry_set(read_file(plex_path.string()));
        ctx.result["plex_path"] = (dir / "plex.txt").string();
        ctx.result["plex_file_sha256"] = sha256_hex(to_text(reloaded));
        ctx.result["plex_k"] = plex_k;
        ctx.result["plex_size"] = reloaded.size();
        ctx.result["plex_verified"] = is_plex(*square, reloaded, plex_k);
    }
}

// search ---------------------------------------------------------------

struct SearchArgs {
    std::string path;
    int k = 1;
    bool count = false;
    bool exists = false;
    int jobs = 0;
    std::uint64_t seed = 0;
    std::uint64_t node_limit = 0;
    std::uint64_t solution_limit = 0;
    bool delta_pruning = false;
    std::string witness_out;
};

void cmd_search(const SearchArgs& a, Context& ctx)
{
    const auto text = read_file(a.path);
    const auto square = parse_square(text);
    ctx.parameters = input_params(a.path, text);
    const int jobs = a.jobs > 0 ? a.jobs : default_jobs();
    ctx.parameters.update(Json{{"k", a.k},
                               {"mode", a.count ? "count" : "exists"},
                               {"jobs", jobs},
                               {"seed", a.seed},
                               {"delta_pruning", a.delta_pruning}});
    SearchBudget budget;
    budget.deterministic_seed = a.seed;
    if (a.node_limit)
        budget.node_limit = a.node_limit;
    if (a.solution_limit)
        budget.solution_limit = a.solution_limit;
    SearchOptions options;
    options.jobs = jobs;
    options.delta_pruning = a.delta_pruning;
    const auto outcome = a.count ? count_plexes(square, a.k, budget, options) : find_plex(square, a.k, budget, options);
    ctx.result = to_json(outcome, a.witness_out.empty());
    ctx.result["square_digest"] = digest(square);
    if (outcome.witness && !a.witness_out.empty()) {
        ctx.result["witness_path"] = a.witness_out;
        ctx.result["witness_file_sha256"] = write_file(a.witness_out, to_text(*outcome.witness));
    }
}

// certify --------------------------------------------------------------

struct CertifyArgs {
    std::string path;
    std::string method = "matching";
    int k = 1;
    int m = 1;
    int r = 0;
    bool no_tighten = false;
    std::string out;
};

void cmd_certify(const CertifyArgs& a, Context& ctx)
{
    const auto text = read_file(a.path);
    const auto square = parse_square(text);
    ctx.parameters = input_params(a.path, text);
    ctx.parameters.update(Json{{"method", a.method}, {"k", a.k}, {"m", a.m}, {"r", a.r}});
    Certificate cert;
    if (a.method == "botrows")
        cert = botrows_certificate(square, a.k, a.m, a.r);
    else if (a.method == "matching")
        cert = matching_certificate(square, a.k, a.m, !a.no_tighten);
    else if (a.method == "steptype")
        cert = steptype_certificate(square, a.k, a.m);
    else
        throw Error(ErrorCode::BadParams, "unknown method " + a.method);
    ctx.result = to_json(cert);
    ctx.result["verified"] = verify_certificate(cert, square);
    if (!a.out.empty())
        write_file(a.out, to_json(cert).dump(2) + "\n");
    ctx.exit_code = cert.conclusion == Conclusion::Excluded ? kExitOk : kExitInconclusive;
}

// verify ---------------------------------------------------------------

void cmd_verify(const std::string& cert_path, const std::string& square_path, Context& ctx)
{
    const auto cert_text = read_file(cert_path);
    const auto square_text = read_file(square_path);
    Json j;
    try {
        j = Json::parse(cert_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("certificate json: ") + e.what());
    }
    const auto cert = certificate_from_json(j);
    const auto square = parse_square(square_text);
    ctx.parameters = {{"certificate", cert_path},
                      {"certificate_sha256", sha256_hex(cert_text)},
                      {"input", square_path},
                      {"input_sha256", sha256_hex(square_text)}};
    const bool ok = verify_certificate(cert, square);
    ctx.result = {{"verified", ok}, {"conclusion", to_string(cert.conclusion)}};
    ctx.exit_code = ok ? (cert.conclusion == Conclusion::Excluded ? kExitOk : kExitInconclusive) : kExitData;
}

// enumerate ------------------------------------------------------------

struct EnumerateArgs {
    std::string path;
    bool classify = false;
    bool transversal_check = false;
    std::string out;
};

void cmd_enumerate(const EnumerateArgs& a, Context& ctx)
{
    const auto text = read_file(a.path);
    const auto rect = parse_rectangle(text);
    ctx.parameters = input_params(a.path, text);
    ctx.parameters.update(Json{{"classify", a.classify}, {"transversal_check", a.transversal_check}, {"out", a.out}});
    std::vector<LatinSquare> squares;
    std::string stream;
    for_each_completion(rect, [&](const LatinSquare& sq) {
        if (!stream.empty())
            stream += "\n";
        stream += to_text(sq);
        squares.push_back(sq);
        return true;
    });
    ctx.result["count"] = squares.size();
    ctx.result["stream_sha256"] = sha256_hex(stream);
    if (!a.out.empty()) {
        write_file(a.out, stream);
        ctx.result["out_path"] = a.out;
    }
    if (a.transversal_check) {
        Json counts = Json::array();
        std::uint64_t transversal_free = 0;
        for (const auto& sq : squares) {
            const auto c = count_transversals(sq).count.value_or(0);
            counts.push_back(c);
            transversal_free += c == 0;
        }
        ctx.result["transversal_counts"] = counts;
        ctx.result["transversal_free"] = transversal_free;
    }
    if (a.classify) {
        const auto classes = classify(squares);
        ctx.result["class_count"] = classes.size();
        ctx.result["classes"] = species_report(classes);
    }
}

// bounds ---------------------------------------------------------------

struct BoundsArgs {
    std::string formula;
    int n = 0;
    int k = 0;
    int a = 0;
    int m = 0;
    std::string mode = "quadratic";
};

void cmd_bounds(const BoundsArgs& a, Context& ctx)
{
    LogBound bound;
    if (a.formula == "extension") {
        ctx.parameters = {{"formula", a.formula}, {"n", a.n}, {"k", a.k}};
        bound = extension_bound(a.n, a.k);
    } else if (a.formula == "stepcount") {
        ctx.parameters = {{"formula", a.formula}, {"a", a.a}, {"m", a.m}};
        bound = step_count_bound(a.a, a.m);
    } else if (a.formula == "species-floor") {
        ctx.parameters = {{"formula", a.formula}, {"n", a.n}, {"mode", a.mode}};
        SpeciesFloorMode mode;
        if (a.mode == "quadratic")
            mode = SpeciesFloorMode::Quadratic;
        else if (a.mode == "three-halves")
            mode = SpeciesFloorMode::ThreeHalves;
        else
            throw Error(ErrorCode::BadParams, "unknown mode " + a.mode);
        bound = species_floor(a.n, mode);
    } else {
        throw Error(ErrorCode::BadParams, "unknown formula " + a.formula);
    }
    ctx.result = to_json(bound);
}

// suite ----------------------------------------------------------------

void cmd_suite(const std::vector<int>& only, Context& ctx)
{
    ctx.parameters = {{"criteria", only}};
    std::vector<CriterionResult> results;
    auto report = [&](const CriterionResult& r) {
        std::cerr << format_result(r) << '\n';
        results.push_back(r);
    };
    if (only.empty()) {
        run_acceptance_suite(report);
    } else {
        for (int id : only)
            report(run_criterion(id));
    }
    Json rows = Json::array();
    int failed = 0;
    for (const auto& r : results) {
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"elapsed_ms", static_cast<long long>(r.elapsed_ms)},
                        {"budget_ms", static_cast<long long>(r.budget_ms)},
                        {"detail", r.detail}});
        failed += !r.passed;
    }
    ctx.result = {{"criteria", rows}, {"failed", failed}};
    ctx.exit_code = failed ? kExitFailed : kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Latin squares, plexes and nonexistence certificates"};
    app.require_subcommand(1);

    ConstructArgs construct;
    auto* c_construct = app.add_subcommand("construct", "Build a square (and its plex) into --out");
    c_construct->add_option("variant", construct.variant, "cyclic | kk2 | mod4 | mod10of12 | mod2of12 | special")
        ->required();
    c_construct->add_option("--n", construct.n, "Order");
    c_construct->add_option("--k", construct.k, "Plex size (kk2)");
    c_construct->add_option("--m", construct.m, "Family parameter");
    c_construct->add_option("--index", construct.index, "mod4: which of L_1, L_2, L_3");
    c_construct->add_option("--out", construct.out, "Output directory");

    SearchArgs search;
    auto* c_search = app.add_subcommand("search", "Exact k-plex search");
    c_search->add_option("square", search.path, "Square file")->required();
    c_search->add_option("--k", search.k, "Plex size");
    auto* count_flag = c_search->add_flag("--count", search.count, "Count all k-plexes");
    c_search->add_flag("--exists", search.exists, "Stop at the first k-plex (default)")->excludes(count_flag);
    c_search->add_option("--jobs", search.jobs, "Worker threads (default PLEXFORGE_JOBS or 1)");
    c_search->add_option("--seed", search.seed, "Value-order seed (0 = natural order)");
    c_search->add_option("--node-limit", search.node_limit, "Give up after this many nodes");
    c_search->add_option("--solution-limit", search.solution_limit, "Stop counting at this many plexes");
    c_search->add_flag("--delta-pruning", search.delta_pruning, "Prune on the delta residue law");
    c_search->add_option("--witness-out", search.witness_out, "Write the witness entry set here");

    CertifyArgs certify;
    auto* c_certify = app.add_subcommand("certify", "Nonexistence certificate");
    c_certify->add_option("square", certify.path, "Square file")->required();
    c_certify->add_option("--method", certify.method, "botrows | matching | steptype");
    c_certify->add_option("--k", certify.k, "Odd plex size");
    c_certify->add_option("--m", certify.m, "Odd divisor of n");
    c_certify->add_option("--r", certify.r, "Bottom rows (botrows)");
    c_certify->add_flag("--no-tighten", certify.no_tighten, "Skip the symbol-multiplier tightening");
    c_certify->add_option("--out", certify.out, "Also write the certificate JSON here");

    std::string verify_cert;
    std::string verify_square;
    auto* c_verify = app.add_subcommand("verify", "Re-check a certificate against a square");
    c_verify->add_option("certificate", verify_cert, "Certificate JSON")->required();
    c_verify->add_option("square", verify_square, "Square file")->required();

    EnumerateArgs enumerate;
    auto* c_enumerate = app.add_subcommand("enumerate", "All completions of a latin rectangle");
    c_enumerate->add_option("rectangle", enumerate.path, "Rectangle file")->required();
    c_enumerate->add_flag("--classify", enumerate.classify, "Group completions into species");
    c_enumerate->add_flag("--transversal-check", enumerate.transversal_check, "Count transversals per square");
    c_enumerate->add_option("--out", enumerate.out, "Write the completions here, blank-line separated");

    BoundsArgs bounds;
    auto* c_bounds = app.add_subcommand("bounds", "Evaluate a counting bound");
    c_bounds->add_option("formula,--formula", bounds.formula, "extension | stepcount | species-floor")->required();
    c_bounds->add_option("--n", bounds.n, "Order");
    c_bounds->add_option("--k", bounds.k, "Given rows (extension)");
    c_bounds->add_option("--a", bounds.a, "Power of two (stepcount)");
    c_bounds->add_option("--m", bounds.m, "Odd part (stepcount)");
    c_bounds->add_option("--mode", bounds.mode, "quadratic | three-halves (species-floor)");

    std::vector<int> only;
    auto* c_suite = app.add_subcommand("suite", "Run the acceptance criteria");
    c_suite->add_option("--criterion", only, "Run only these criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Context ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (c_construct->parsed()) {
            ctx.command = "construct";
            cmd_construct(construct, ctx);
        } else if (c_search->parsed()) {
            ctx.command = "search";
            cmd_search(search, ctx);
        } else if (c_certify->parsed()) {
            ctx.command = "certify";
            cmd_certify(certify, ctx);
        } else if (c_verify->parsed()) {
            ctx.command = "verify";
            cmd_verify(verify_cert, verify_square, ctx);
        } else if (c_enumerate->parsed()) {
            ctx.command = "enumerate";
            cmd_enumerate(enumerate, ctx);
        } else if (c_bounds->parsed()) {
            ctx.command = "bounds";
            cmd_bounds(bounds, ctx);
        } else if (c_suite->parsed()) {
            ctx.command = "suite";
            cmd_suite(only, ctx);
        }
    } catch (const Error& e) {
        ctx.result = {{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
        ctx.exit_code = kExitData;
    } catch (const std::exception& e) {
        ctx.result = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        ctx.exit_code = kExitData;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << command_report(ctx.command, ctx.parameters, ctx.result, elapsed).dump(2) << '\n';
    return ctx.exit_code;
}
