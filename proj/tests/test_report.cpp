#include <catch2/catch_amalgamated.hpp>

#include "qhb/report.hpp"

using namespace qhb;

TEST_CASE("verify certificate matches the worked example") {
    VerifyCertificate cert = make_verify_certificate(5, 1);
    CHECK(cert.chain.string.a == std::vector<i64>{7, 2, 2, 2});
    CHECK(cert.chain.d == std::vector<i64>{1, 7, 13, 19});
    CHECK(cert.all_ok);
    REQUIRE(cert.roots.size() == 2);
    CHECK(cert.roots[0].c == 2);
    CHECK(cert.roots[0].a_last == 3);
    CHECK(cert.roots[0].det == 1);
    CHECK(cert.roots[0].kernel.b == std::vector<i64>{2, 14, 26, 38, 25});
    REQUIRE(cert.roots[0].extension.has_value());
    CHECK(cert.roots[0].extension->x == 1);
    CHECK(cert.roots[1].c == 23);
    CHECK_FALSE(cert.roots[1].extension.has_value());

    VerifyCertificate c21 = make_verify_certificate(2, 1);
    CHECK(c21.chain.string.a == std::vector<i64>{4});
    REQUIRE(c21.roots.size() >= 1);
    CHECK(c21.roots[0].c == 1);
    CHECK(c21.roots[0].kernel.b == std::vector<i64>{1, 4});

    // (17,5): c = 132 carries the extension, 5*132+3 = 39*17
    VerifyCertificate c175 = make_verify_certificate(17, 5);
    CHECK(c175.all_ok);
    bool found = false;
    for (const auto& rc : c175.roots)
        if (rc.c == 132) {
            REQUIRE(rc.extension.has_value());
            CHECK(rc.extension->x == 39);
            found = true;
        }
    CHECK(found);

    // no roots at all: certificate still reports the chain identities
    VerifyCertificate c31 = make_verify_certificate(3, 1);
    CHECK(c31.roots.empty());
    CHECK(c31.all_ok);
}

TEST_CASE("CSV column order is fixed") {
    CHECK(report_csv_header() ==
          "p,q,pq_minus_1,qr_pass,condition2_c,extension_x,es_s,es_t,"
          "q2_plus_9_mod_p,consistent");
    CHECK(to_csv_row(classify(10, 1)) == "10,1,9,true,47,5,,,0,true");
    CHECK(to_csv_row(classify(5, 4)) == "5,4,19,true,13,11,1,2,0,true");
    CHECK(to_csv_row(classify(3, 1)) == "3,1,2,false,,,,,1,true");
}

TEST_CASE("JSON field order and values") {
    ordered_json j = to_json(classify(10, 1));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"p", "q", "pq_minus_1", "qr_pass",
                                           "roots", "condition2_c", "extension_x",
                                           "es", "q2_plus_9_mod_p", "consistent"});
    CHECK(j["condition2_c"] == 47);
    CHECK(j["es"].is_null());

    ordered_json j54 = to_json(classify(5, 4));
    CHECK(j54["es"]["s"] == 1);
    CHECK(j54["es"]["t"] == 2);
    CHECK(j54["es"]["triple"] == ordered_json::array({1, 2, 5}));
}

TEST_CASE("JSON round trip is byte-identical") {
    ReportDocument doc;
    doc.command = "classify";
    doc.inputs = ordered_json{{"p", 17}, {"q", 5}, {"format", "json"}};
    doc.results.push_back(to_json(classify(17, 5)));
    doc.timing_ms = 12;

    std::string pretty = to_json(doc).dump(2);
    CHECK(ordered_json::parse(pretty).dump(2) == pretty);

    std::string compact = to_json(classify(5, 4)).dump();
    CHECK(ordered_json::parse(compact).dump() == compact);

    std::string verify = to_json(make_verify_certificate(5, 1)).dump(2);
    CHECK(ordered_json::parse(verify).dump(2) == verify);
}

TEST_CASE("document envelope fields") {
    ReportDocument doc;
    doc.command = "markov";
    ordered_json j = to_json(doc);
    CHECK(j["schema_version"] == "1");
    CHECK(j["results"].is_array());
    CHECK(j["timing_ms"].is_number_integer());
}
