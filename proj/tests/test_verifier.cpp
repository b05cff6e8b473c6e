#include "qdual/verifier.hpp"

#include "doctest.h"
#include "json.hpp"

using namespace qdual;

namespace {

VerifyConfig tiny_config() {
    VerifyConfig cfg;
    cfg.k_max = 2;
    cfg.n_max = 1;
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST_CASE("verify_main single instances") {
    VerifyConfig cfg = tiny_config();

    Report r1 = verify_main(parse_word6("BC"), 0, cfg);
    CHECK(r1.cases.size() == 1);
    CHECK(r1.cases[0].verdict == Verdict::Equal);
    CHECK(r1.cases[0].proved);

    Report r2 = verify_main(parse_word6("BD.AB"), 1, cfg);
    CHECK(r2.cases[0].verdict == Verdict::Equal);
    CHECK(r2.cases[0].dual == "CD.AC");

    CHECK_THROWS_AS(verify_main(parse_word6("AB.BD"), 0, cfg), NotAdmissible);
}

TEST_CASE("sweep over small words is clean and proved") {
    VerifyConfig cfg = tiny_config();
    Report r = sweep_main(cfg);
    // tau-deduplicated: 1 empty + BC + 6 of the 9 length-2 words, per N
    CHECK(r.cases.size() == 16);
    CHECK(r.clean());
    for (const CaseResult& c : r.cases) {
        CHECK(c.verdict == Verdict::Equal);
        CHECK(c.proved);
        CHECK(c.conjectural);
    }
}

TEST_CASE("modp sweeps are deterministic for a fixed seed") {
    VerifyConfig cfg = tiny_config();
    cfg.mode = EqMode::ModP;
    Report a = sweep_main(cfg);
    Report b = sweep_main(cfg);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.clean());
    for (const CaseResult& c : a.cases) CHECK(c.verdict == Verdict::ProbablyEqual);
}

TEST_CASE("sweep never skips tau-fixed words") {
    VerifyConfig cfg = tiny_config();
    Report r = sweep_main(cfg);
    bool saw_bc = false, saw_bdac = false;
    for (const CaseResult& c : r.cases) {
        saw_bc = saw_bc || c.word == "BC";
        saw_bdac = saw_bdac || c.word == "BD.AC";  // tau-fixed length-2 word
    }
    CHECK(saw_bc);
    CHECK(saw_bdac);
}

TEST_CASE("specialized suites pass on small budgets") {
    VerifyConfig cfg = tiny_config();

    Report s41 = suite_41(cfg);
    CHECK(s41.clean());
    CHECK(s41.count(Verdict::Equal) == static_cast<int>(s41.cases.size()));

    // the full 3-variable grid route on the same small budget
    VerifyConfig cfg1 = cfg;
    cfg1.k_max = 1;
    Report s41f = suite_41(cfg1, /*full_vars=*/true);
    CHECK(s41f.clean());

    Report s42 = suite_42(cfg, 1, 2, 1, 3);
    CHECK(s42.clean());
    CHECK_FALSE(s42.has_proved_failure());

    Report s43 = suite_43(cfg, 12);
    CHECK(s43.clean());

    Report s44 = suite_44(cfg);
    CHECK(s44.clean());

    VerifyConfig cfg3 = cfg;
    cfg3.mq = 10;
    cfg3.mz = 4;
    Report s3 = suite_section3(cfg3, 2, 2, 3);
    CHECK(s3.clean());

    Report br = suite_bridges(cfg, 2, 1);
    CHECK(br.clean());
}

TEST_CASE("report JSON round-trips byte-identically") {
    VerifyConfig cfg = tiny_config();
    Report r = sweep_main(cfg);
    std::string once = r.to_json();
    auto parsed = nlohmann::ordered_json::parse(once);
    CHECK(parsed.dump(2) == once);
    CHECK(parsed["suite"] == "main");
    CHECK(parsed["summary"]["failed"] == 0);
    CHECK(parsed["cases"].size() == r.cases.size());
}

TEST_CASE("classical spot check at modest settings") {
    // empty word: both sides are exactly 1
    ClassicalCheck empty = classical_limit_check({}, 1.0, -1.0, 3.0, 2.0, 64);
    CHECK(empty.q_discrepancy == 0.0);
    CHECK(empty.duality_gap == 0.0);

    // k = 1: closed forms on both sides, coarse N already close
    ClassicalCheck one = classical_limit_check(parse_word6("BC"), 1.0, -1.0, 3.0, 2.0, 1 << 10);
    CHECK(one.q_discrepancy < 5e-3);
    CHECK(one.duality_gap < 1e-12);

    // k = 2 at a coarse step count; the acceptance run uses N = 2^12
    ClassicalCheck two = classical_limit_check(parse_word6("BD.AB"), 1.0, -1.0, 3.0, 2.0, 1 << 10);
    CHECK(two.q_discrepancy < 5e-3);
    CHECK(two.duality_gap < 1e-6);
}
