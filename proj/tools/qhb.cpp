// qhb: classify rational homology ball pairs (p, q) against the smooth
// quadratic-residue test, the almost-complex extension condition, and the
// Evans-Smith symplectic condition, and emit verifiable lattice certificates.
//
// Exit codes: 0 success, 1 user-input error, 2 internal consistency failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhb/obstruct.hpp"
#include "qhb/report.hpp"

namespace {

using qhb::i64;
using qhb::ordered_json;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    i64 elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit_document(const qhb::ReportDocument& doc) {
    std::cout << qhb::to_json(doc).dump(2) << '\n';
}

int run_classify(i64 p, i64 q, const std::string& format) {
    Timer timer;
    qhb::ObstructionReport report = qhb::classify(p, q);
    if (format == "json") {
        qhb::ReportDocument doc;
        doc.command = "classify";
        doc.inputs = ordered_json{{"p", p}, {"q", q}, {"format", format}};
        doc.results.push_back(qhb::to_json(report));
        doc.timing_ms = timer.elapsed_ms();
        emit_document(doc);
    } else if (format == "csv") {
        std::cout << qhb::report_csv_header() << '\n'
                  << qhb::to_csv_row(report) << '\n';
    } else {
        std::cout << qhb::detail::report_table({report});
    }
    return report.consistent ? 0 : 2;
}

int run_verify(i64 p, i64 q, const std::string& format) {
    Timer timer;
    qhb::VerifyCertificate cert = qhb::make_verify_certificate(p, q);
    if (format == "json") {
        qhb::ReportDocument doc;
        doc.command = "verify";
        doc.inputs = ordered_json{{"p", p}, {"q", q}, {"format", format}};
        doc.results.push_back(qhb::to_json(cert));
        doc.timing_ms = timer.elapsed_ms();
        emit_document(doc);
    } else {
        // The certificate is hierarchical; CSV degrades to the table form.
        std::cout << qhb::detail::verify_table(cert);
    }
    return cert.all_ok ? 0 : 2;
}

int run_search(i64 p_max, const std::vector<std::string>& require,
               const std::vector<std::string>& exclude, const std::string& format,
               const std::string& out_path) {
    qhb::SearchFilter filter;
    auto set_flag = [&](const std::string& name, bool value) {
        auto& slot = name == "qr" ? filter.qr : name == "cond2" ? filter.cond2 : filter.es;
        if (slot && *slot != value)
            throw CLI::ValidationError("--require and --exclude conflict on " + name);
        slot = value;
    };
    for (const std::string& name : require) set_flag(name, true);
    for (const std::string& name : exclude) set_flag(name, false);

    Timer timer;
    std::vector<qhb::ObstructionReport> results = qhb::search(p_max, filter);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return 1;
        }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;

    if (format == "json") {
        for (const auto& r : results) os << qhb::to_json(r).dump() << '\n';
    } else if (format == "csv") {
        os << qhb::report_csv_header() << '\n';
        for (const auto& r : results) os << qhb::to_csv_row(r) << '\n';
    } else {
        os << qhb::detail::report_table(results);
    }

    i64 total = 0;
    for (i64 p = 2; p <= p_max; ++p)
        for (i64 q = 1; q < p; ++q)
            if (qhb::gcd(p, q) == 1) ++total;
    std::cerr << "search: matched " << results.size() << " of " << total
              << " coprime pairs (p <= " << p_max << ") in " << timer.elapsed_ms()
              << " ms\n";

    for (const auto& r : results)
        if (!r.consistent) return 2;
    return 0;
}

int run_markov(i64 max_z, bool check, const std::string& format) {
    Timer timer;
    std::vector<qhb::MarkovTriple> triples;
    if (const char* cache = std::getenv("QHB_MARKOV_CACHE"); cache && *cache)
        triples = qhb::enumerate_triples_cached(max_z, cache);
    else
        triples = qhb::enumerate_triples(max_z);

    bool agree = true;
    if (check) {
        std::vector<qhb::MarkovTriple> brute = qhb::brute_markov_scan(max_z);
        agree = brute == triples;
        std::cerr << "check: tree enumeration " << (agree ? "==" : "!=")
                  << " brute-force scan (" << triples.size() << " triples)\n";
    }

    if (format == "json") {
        qhb::ReportDocument doc;
        doc.command = "markov";
        doc.inputs = ordered_json{{"max", max_z}, {"check", check}, {"format", format}};
        for (const auto& tr : triples) doc.results.push_back(qhb::to_json(tr));
        doc.timing_ms = timer.elapsed_ms();
        emit_document(doc);
    } else if (format == "csv") {
        std::cout << "x,y,z\n";
        for (const auto& tr : triples)
            std::cout << tr.x << ',' << tr.y << ',' << tr.z << '\n';
    } else {
        for (const auto& tr : triples)
            std::cout << tr.x << ' ' << tr.y << ' ' << tr.z << '\n';
    }
    return agree ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedding obstructions for rational homology balls B_{p,q}"};
    app.require_subcommand(1);

    std::string format = "table";
    i64 p = 0, q = 0, p_max = 0, max_z = 0;
    bool check = false;
    std::vector<std::string> require, exclude;
    std::string out_path;

    const auto filter_names = CLI::IsMember({"qr", "cond2", "es"});
    const auto format_names = CLI::IsMember({"table", "json", "csv"});

    CLI::App* classify = app.add_subcommand("classify", "classify one pair (p, q)");
    classify->add_option("-p", p, "numerator parameter p")->required();
    classify->add_option("-q", q, "denominator parameter q")->required();
    classify->add_option("--format", format, "output format")->check(format_names);

    CLI::App* verify =
        app.add_subcommand("verify", "full lattice certificate for one pair");
    verify->add_option("-p", p, "numerator parameter p")->required();
    verify->add_option("-q", q, "denominator parameter q")->required();
    verify->add_option("--format", format, "output format")->check(format_names);

    CLI::App* search = app.add_subcommand("search", "classify all pairs up to p-max");
    search->add_option("--p-max", p_max, "largest p to classify")->required();
    search->add_option("--require", require, "flags that must hold (qr, cond2, es)")
        ->check(filter_names);
    search->add_option("--exclude", exclude, "flags that must fail (qr, cond2, es)")
        ->check(filter_names);
    search->add_option("--format", format, "output format")->check(format_names);
    search->add_option("--out", out_path, "write rows to a file instead of stdout");

    CLI::App* markov = app.add_subcommand("markov", "enumerate Markov triples");
    markov->add_option("--max", max_z, "largest coordinate to enumerate")->required();
    markov->add_flag("--check", check, "compare against the brute-force scan");
    markov->add_option("--format", format, "output format")->check(format_names);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(classify)) return run_classify(p, q, format);
        if (app.got_subcommand(verify)) return run_verify(p, q, format);
        if (app.got_subcommand(search))
            return run_search(p_max, require, exclude, format, out_path);
        return run_markov(max_z, check, format);
    } catch (const qhb::ConsistencyFailure& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const qhb::NoUnimodularCompletion& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const qhb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
