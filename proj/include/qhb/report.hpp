#pragma once

// Machine-readable output: versioned report documents (schema_version "1"),
// JSON with fixed field order, CSV with the fixed column set
//   p,q,pq_minus_1,qr_pass,condition2_c,extension_x,es_s,es_t,
//   q2_plus_9_mod_p,consistent
// and plain-text tables. JSON serialization is stable: parsing an emitted
// document and re-serializing reproduces it byte for byte.

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qhb/lattice.hpp"
#include "qhb/markov.hpp"
#include "qhb/obstruct.hpp"

namespace qhb {

using ordered_json = nlohmann::ordered_json;

// Full certificate for one root c: the unimodular completion, the kernel
// vector, and the extension coefficient when p | cq+3.
struct RootCertificate {
    i64 c = 0;
    i64 a_last = 0;
    i64 det = 0;
    KernelVector kernel;
    std::optional<ExtensionClass> extension;
};

struct VerifyCertificate {
    ChainCertificate chain;
    std::vector<RootCertificate> roots;
    bool all_ok = false;
};

// Chain identities plus per-root lattice certificates for every square root
// of pq-1 mod p^2. Lattice verification failures throw ConsistencyFailure.
inline VerifyCertificate make_verify_certificate(i64 p, i64 q) {
    VerifyCertificate cert;
    cert.chain = chain_certificate(p, q);
    for (i64 c : sqrts_mod_p2(cert.chain.p * cert.chain.q - 1, p).roots) {
        RootCertificate rc;
        rc.c = c;
        ExtendedGram gram = gram_extend(p, q, c);
        rc.a_last = gram.a_last;
        rc.det = gram.det;
        rc.kernel = kernel_vector(p, q, c);
        rc.extension = extension_coefficient(p, q, c);
        cert.roots.push_back(std::move(rc));
    }
    cert.all_ok = cert.chain.all_ok();
    return cert;
}

// --- JSON -------------------------------------------------------------------

inline ordered_json to_json(const MarkovTriple& tr) {
    return ordered_json::array({tr.x, tr.y, tr.z});
}

inline ordered_json to_json(const ESWitness& w) {
    return ordered_json{
        {"s", w.s}, {"t", w.t}, {"triple", to_json(w.triple)}, {"sign", w.sign}};
}

inline ordered_json to_json(const ObstructionReport& r) {
    ordered_json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["pq_minus_1"] = r.pq_minus_1;
    j["qr_pass"] = r.qr_pass;
    j["roots"] = r.roots.roots;
    j["condition2_c"] = r.condition2_c ? ordered_json(*r.condition2_c) : nullptr;
    j["extension_x"] = r.extension_x ? ordered_json(*r.extension_x) : nullptr;
    j["es"] = r.es ? to_json(*r.es) : ordered_json(nullptr);
    j["q2_plus_9_mod_p"] = r.q2_plus_9_mod_p;
    j["consistent"] = r.consistent;
    return j;
}

inline ordered_json to_json(const VerifyCertificate& cert) {
    ordered_json j;
    j["p"] = cert.chain.p;
    j["q"] = cert.chain.q;
    j["a"] = cert.chain.string.a;
    j["d"] = cert.chain.d;
    j["dn_check"] = cert.chain.dn_check;
    j["p2_check"] = cert.chain.p2_check;
    j["sum_check"] = cert.chain.sum_check;
    j["roots"] = ordered_json::array();
    for (const RootCertificate& rc : cert.roots) {
        ordered_json rj;
        rj["c"] = rc.c;
        rj["a_last"] = rc.a_last;
        rj["det"] = rc.det;
        rj["b"] = rc.kernel.b;
        rj["sign_h"] = rc.kernel.sign_h;
        if (rc.extension)
            rj["extension"] =
                ordered_json{{"x", rc.extension->x}, {"pairing", rc.extension->pairing}};
        else
            rj["extension"] = nullptr;
        j["roots"].push_back(std::move(rj));
    }
    j["all_ok"] = cert.all_ok;
    return j;
}

// Versioned envelope for one CLI invocation.
struct ReportDocument {
    std::string schema_version = "1";
    std::string command;
    ordered_json inputs = ordered_json::object();
    ordered_json results = ordered_json::array();
    i64 timing_ms = 0;
};

inline ordered_json to_json(const ReportDocument& doc) {
    ordered_json j;
    j["schema_version"] = doc.schema_version;
    j["command"] = doc.command;
    j["inputs"] = doc.inputs;
    j["results"] = doc.results;
    j["timing_ms"] = doc.timing_ms;
    return j;
}

// --- CSV --------------------------------------------------------------------

inline std::string report_csv_header() {
    return "p,q,pq_minus_1,qr_pass,condition2_c,extension_x,es_s,es_t,"
           "q2_plus_9_mod_p,consistent";
}

inline std::string to_csv_row(const ObstructionReport& r) {
    auto opt = [](const std::optional<i64>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    std::ostringstream os;
    os << r.p << ',' << r.q << ',' << r.pq_minus_1 << ','
       << (r.qr_pass ? "true" : "false") << ',' << opt(r.condition2_c) << ','
       << opt(r.extension_x) << ',' << (r.es ? std::to_string(r.es->s) : "") << ','
       << (r.es ? std::to_string(r.es->t) : "") << ',' << r.q2_plus_9_mod_p << ','
       << (r.consistent ? "true" : "false");
    return os.str();
}

// --- tables -----------------------------------------------------------------

namespace detail {

inline std::string join_i64(const std::vector<i64>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

inline std::string report_table(const std::vector<ObstructionReport>& reports) {
    static constexpr const char* names[] = {"p",    "q",     "pq-1", "qr_pass",
                                            "c",    "x",     "es_s", "es_t",
                                            "q2+9%p", "consistent"};
    auto cells = [](const ObstructionReport& r) {
        auto opt = [](const std::optional<i64>& v) {
            return v ? std::to_string(*v) : std::string("-");
        };
        return std::vector<std::string>{
            std::to_string(r.p),
            std::to_string(r.q),
            std::to_string(r.pq_minus_1),
            r.qr_pass ? "true" : "false",
            opt(r.condition2_c),
            opt(r.extension_x),
            r.es ? std::to_string(r.es->s) : "-",
            r.es ? std::to_string(r.es->t) : "-",
            std::to_string(r.q2_plus_9_mod_p),
            r.consistent ? "true" : "false"};
    };
    std::size_t widths[10];
    for (int i = 0; i < 10; ++i) widths[i] = std::string(names[i]).size();
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back(cells(r));
        for (int i = 0; i < 10; ++i) widths[i] = std::max(widths[i], rows.back()[i].size());
    }
    std::ostringstream os;
    for (int i = 0; i < 10; ++i)
        os << (i ? "  " : "") << std::left << std::setw(int(widths[i])) << names[i];
    os << '\n';
    for (const auto& row : rows) {
        for (int i = 0; i < 10; ++i)
            os << (i ? "  " : "") << std::left << std::setw(int(widths[i])) << row[i];
        os << '\n';
    }
    return os.str();
}

inline std::string verify_table(const VerifyCertificate& cert) {
    std::ostringstream os;
    const auto& ch = cert.chain;
    os << "pair (" << ch.p << ", " << ch.q << ")   p^2 = " << ch.string.num
       << "   pq-1 = " << ch.string.den << '\n';
    os << "a = " << join_i64(ch.string.a) << '\n';
    os << "d = " << join_i64(ch.d) << '\n';
    os << "dn_check  = " << (ch.dn_check ? "true" : "false")
       << "   (d_n = p^2 - pq - 1)\n";
    os << "p2_check  = " << (ch.p2_check ? "true" : "false")
       << "   (a_n d_n - d_{n-1} = p^2)\n";
    os << "sum_check = " << (ch.sum_check ? "true" : "false")
       << "   (sum (2 - a_i) d_i = -pq)\n";
    if (cert.roots.empty())
        os << "no roots: pq-1 is not a quadratic residue mod p^2\n";
    for (const RootCertificate& rc : cert.roots) {
        os << "root c = " << rc.c << ":  a_last = " << rc.a_last
           << "  det = " << rc.det << '\n';
        os << "  b = " << join_i64(rc.kernel.b) << "  sign_h = " << rc.kernel.sign_h
           << '\n';
        if (rc.extension)
            os << "  extension: x = " << rc.extension->x
               << "  pairing = " << rc.extension->pairing << '\n';
        else
            os << "  extension: none (p does not divide cq+3)\n";
    }
    os << "all_ok = " << (cert.all_ok ? "true" : "false") << '\n';
    return os.str();
}

} // namespace detail

} // namespace qhb
