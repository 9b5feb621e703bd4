// trace_shape: compute / verify / scan / lattice front end.
//
// Exit codes: 0 ok, 1 a verdict is false or lattices are not isometric,
// 2 usage or validation error, 3 internal certification failure.

#include "shape/errors.hpp"
#include "shape/ideallat.hpp"
#include "shape/serialize.hpp"
#include "shape/shapelab.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace shape;

namespace {

enum Exit { Ok = 0, False = 1, Usage = 2, Internal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldArgs {
    int ell = 0;
    std::int64_t conductor = 0;
    std::vector<std::int64_t> primes;
    bool wild = false;
    std::vector<std::int64_t> subgroup;
};

struct Config {
    std::string format = "json";
    std::string output;
    int verbose = 0;
    FieldArgs field;
    std::int64_t max_conductor = 0;
    unsigned jobs = 1;
    std::string gram_a, gram_b;
    int k = 0;
};

// TRACE_SHAPE_LOG: off|error|warn|info|debug|trace, or 0..3. -v raises it.
void setup_logging(int verbose) {
    auto logger = spdlog::stderr_logger_st("trace_shape");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char *env = std::getenv("TRACE_SHAPE_LOG")) {
        const std::string v = env;
        if (v == "0") level = spdlog::level::off;
        else if (v == "1") level = spdlog::level::info;
        else if (v == "2") level = spdlog::level::debug;
        else if (v == "3") level = spdlog::level::trace;
        else level = spdlog::level::from_str(v); // unknown names map to off
    }
    for (int i = 0; i < verbose && level > spdlog::level::trace; ++i)
        level = static_cast<spdlog::level::level_enum>(level - 1);
    spdlog::set_level(level);
}

std::vector<FieldSpec> select_fields(const FieldArgs &a) {
    if (!a.subgroup.empty()) {
        if (!a.conductor) throw UsageError("--subgroup needs --conductor");
        return {make_field_spec(a.ell, a.conductor, a.subgroup)};
    }
    if (a.conductor) return fields_with_conductor(a.ell, a.conductor);
    return enumerate_fields(a.ell, a.primes, a.wild);
}

void emit_report(std::ostream &out, const std::string &format, const ShapeReport &r) {
    if (format == "json") out << to_json(r).dump() << '\n';
    else if (format == "csv") out << csv_row(r) << '\n';
    else out << pretty(r) << '\n';
}

int run_fields(const Config &c, std::ostream &out, bool verify) {
    const auto specs = select_fields(c.field);
    if (specs.empty()) throw UsageError("no field matches the selection");
    spdlog::info("{} field(s) selected", specs.size());
    if (c.format == "csv") out << csv_header() << '\n';
    bool all = true;
    for (const auto &s : specs) {
        spdlog::debug("ell={} f={} |H|={}", s.ell, s.conductor, s.subgroup.size());
        const ShapeReport r = verify_main_theorem(s);
        all = all && r.verdicts.all_true();
        emit_report(out, c.format, r);
    }
    return verify && !all ? False : Ok;
}

int run_scan(const Config &c, std::ostream &out) {
    if (c.max_conductor < 1) throw UsageError("--max-conductor must be at least 1");
    spdlog::info("scanning ell={} up to f={} with {} job(s)", c.field.ell, c.max_conductor, c.jobs);
    const ScanResult res = scan(c.field.ell, c.max_conductor, c.jobs);
    bool all = true;
    if (c.format == "csv") out << csv_header() << '\n';
    for (const auto &r : res.reports) {
        all = all && r.verdicts.all_true();
        emit_report(out, c.format, r);
    }
    const bool ok = all && res.classes_consistent;
    if (c.format == "json") {
        Json s = {{"ell", std::to_string(c.field.ell)},
                  {"max_conductor", std::to_string(c.max_conductor)},
                  {"fields", std::to_string(res.reports.size())},
                  {"all_verdicts_true", all},
                  {"classes_consistent", res.classes_consistent}};
        out << Json{{"summary", s}}.dump() << '\n';
    } else if (c.format == "csv") {
        out << "summary," << c.field.ell << ',' << c.max_conductor << ',' << res.reports.size() << ','
            << (all ? "true" : "false") << ',' << (res.classes_consistent ? "true" : "false") << '\n';
    } else {
        out << "summary    ell=" << c.field.ell << " max_conductor=" << c.max_conductor
            << " fields=" << res.reports.size() << " all_verdicts_true=" << (all ? "true" : "false")
            << " classes_consistent=" << (res.classes_consistent ? "true" : "false") << '\n';
    }
    return ok ? Ok : False;
}

GramMatrix read_gram(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
    return gram_from_json(j);
}

int run_isometry(const Config &c, std::ostream &out) {
    const GramMatrix a = read_gram(c.gram_a), b = read_gram(c.gram_b);
    const auto w = is_isometric(a, b);
    if (c.format == "json") {
        Json j = {{"isometric", w.has_value()}};
        if (w) j["witness"] = matrix_to_json(w->transform);
        else j["result"] = "not isometric";
        out << j.dump() << '\n';
    } else if (w) {
        out << "isometric, witness U with U^T A U = B:\n" << w->transform.to_string() << '\n';
    } else {
        out << "not isometric\n";
    }
    return w ? Ok : False;
}

int run_craig(const Config &c, std::ostream &out) {
    const GramMatrix g = craig_gram(c.field.ell, c.k);
    if (c.format == "json") {
        out << Json{{"ell", std::to_string(c.field.ell)},
                    {"k", std::to_string(c.k)},
                    {"gram", matrix_to_json(g.matrix())},
                    {"det", g.determinant().get_str()}}
                   .dump()
            << '\n';
    } else {
        out << g.matrix().to_string() << '\n';
    }
    return Ok;
}

void add_field_options(CLI::App *sub, FieldArgs &f) {
    sub->add_option("--ell", f.ell, "odd prime degree")->required();
    auto *cond = sub->add_option("--conductor", f.conductor, "conductor f");
    auto *primes = sub->add_option("--primes", f.primes, "tamely ramified primes")->delimiter(',');
    auto *wild = sub->add_flag("--wild", f.wild, "ell is (wildly) ramified");
    sub->add_option("--subgroup", f.subgroup, "kernel H of the character, comma separated")->delimiter(',');
    cond->excludes(primes)->excludes(wild);
}

int dispatch(int argc, char **argv) {
    Config c;
    CLI::App app{"Trace-zero forms and shapes of cyclic fields of prime degree"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("--output,-o", c.output, "write output to this file instead of stdout");
    app.add_flag("-v,--verbose", c.verbose, "more logging on stderr");

    auto *compute = app.add_subcommand("compute", "shape report for the selected field(s)");
    add_field_options(compute, c.field);
    auto *verify = app.add_subcommand("verify", "like compute; exit 1 unless every verdict holds");
    add_field_options(verify, c.field);

    auto *scan_cmd = app.add_subcommand("scan", "verify every field up to a conductor bound");
    scan_cmd->add_option("--ell", c.field.ell, "odd prime degree")->required();
    scan_cmd->add_option("--max-conductor", c.max_conductor, "conductor bound")->required();
    scan_cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();

    auto *lattice = app.add_subcommand("lattice", "lattice utilities");
    lattice->require_subcommand(1);
    auto *iso = lattice->add_subcommand("isometry", "decide A ~ B and print a witness");
    iso->add_option("--gram-a", c.gram_a, "JSON Gram file")->required();
    iso->add_option("--gram-b", c.gram_b, "JSON Gram file")->required();
    auto *craig = lattice->add_subcommand("craig", "Gram of the Craig lattice");
    craig->add_option("--ell", c.field.ell, "odd prime")->required();
    craig->add_option("--k", c.k, "ideal power 1..ell-1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return Usage;
    }
    setup_logging(c.verbose);

    if ((compute->parsed() || verify->parsed()) && !c.field.conductor && c.field.primes.empty() && !c.field.wild) {
        std::cerr << "error: give --conductor, or --primes and/or --wild\n";
        return Usage;
    }

    std::ofstream file;
    if (!c.output.empty()) {
        file.open(c.output, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << c.output << '\n';
            return Usage;
        }
    }
    // buffer everything so that a failure never leaves half a report behind
    std::ostringstream buf;
    int code = Ok;
    if (compute->parsed()) code = run_fields(c, buf, false);
    else if (verify->parsed()) code = run_fields(c, buf, true);
    else if (scan_cmd->parsed()) code = run_scan(c, buf);
    else if (iso->parsed()) code = run_isometry(c, buf);
    else code = run_craig(c, buf);
    (c.output.empty() ? std::cout : file) << buf.str();
    return code;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ShapeError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? Usage : Internal;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Internal;
    } catch (...) {
        return Internal;
    }
}
