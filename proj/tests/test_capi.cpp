#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "pellrank.h"

namespace {
struct Ctx {
    pr_ctx* p = pr_ctx_new();
    ~Ctx() { pr_ctx_free(p); }
};
}

TEST_CASE("C API: symbols and predicates") {
    Ctx c;
    int out = 0;
    CHECK(pr_kronecker(c.p, 5, 11, &out) == PR_OK);
    CHECK(out == 1);
    CHECK(pr_kronecker(c.p, 3, 0, &out) == PR_EDOMAIN);
    CHECK(std::strlen(pr_last_error(c.p)) > 0);
    CHECK(pr_hilbert(c.p, -1, -1, -1, &out) == PR_OK);
    CHECK(out == -1);
    CHECK(pr_in_pell_family(c.p, 40, &out) == PR_OK);
    CHECK(out == 1);
    CHECK(pr_is_fundamental_discriminant(c.p, 20, &out) == PR_OK);
    CHECK(out == 0);
}

TEST_CASE("C API: pell") {
    Ctx c;
    int out = 0;
    CHECK(pr_neg_pell_solvable(c.p, 5, PR_PELL_PERIOD, &out) == PR_OK);
    CHECK(out == 1);
    CHECK(pr_neg_pell_solvable(c.p, 8, PR_PELL_PERIOD, &out) == PR_OK);
    CHECK(out == 0);
    CHECK(pr_neg_pell_solvable(c.p, 8, PR_PELL_FUNDAMENTAL, &out) == PR_OK);
    CHECK(out == 1);
    char* x = nullptr;
    char* y = nullptr;
    CHECK(pr_neg_pell_witness(c.p, 65, &x, &y) == PR_OK);
    CHECK(std::string(x) == "8");
    CHECK(std::string(y) == "1");
    pr_string_free(x);
    pr_string_free(y);
    CHECK(pr_neg_pell_witness(c.p, 8, &x, &y) == PR_EDOMAIN);
}

TEST_CASE("C API: redei and oracle") {
    Ctx c;
    int out = -1;
    CHECK(pr_redei_symbol(c.p, 1, 29, 5, &out) == PR_OK);
    CHECK(out == 0);
    CHECK(pr_redei_symbol(c.p, 5, 13, 17, &out) == PR_EDOMAIN);
    CHECK(pr_is_acceptable(c.p, 5, 29, &out) == PR_OK);
    CHECK(out == 1);
    CHECK(pr_is_admissible(c.p, 5, 13, 17, &out) == PR_OK);
    CHECK(out == 0);
    CHECK(pr_rk4(c.p, 1105, &out) == PR_OK);
    int rk4 = out;
    CHECK(pr_rk8(c.p, 1105, &out) == PR_OK);
    CHECK(out <= rk4);
    int rk2, rk4n, rk8n, rk4o, np;
    int64_t h = 0;
    CHECK(pr_oracle_profile(c.p, 1105, 0, &rk2, &rk4n, &rk8n, &rk4o, &np, &h) == PR_OK);
    CHECK(rk4n == rk4);
    CHECK(rk2 == 2);
    int pairing = -1;
    CHECK(pr_artin_pairing(c.p, 145, 5, -1, &pairing) == PR_OK);
    CHECK((pairing == 0 || pairing == 1));
}

TEST_CASE("C API: densities") {
    Ctx c;
    double v = 0;
    CHECK(pr_alpha(c.p, &v) == PR_OK);
    CHECK(v == doctest::Approx(0.41942).epsilon(1e-4));
    CHECK(pr_beta(c.p, &v) == PR_OK);
    CHECK(v > 1.25);
    CHECK(pr_theorem2_density(c.p, 1, 0, &v) == PR_OK);
    double a;
    pr_alpha(c.p, &a);
    CHECK(v == doctest::Approx(a / 4).epsilon(1e-12));
    double dist[7];
    CHECK(pr_corank_dist(c.p, 2, dist, 3) == PR_OK);
    CHECK(dist[0] == doctest::Approx(0.5));
    CHECK(pr_corank_dist(c.p, 6, dist, 3) == PR_EDOMAIN);  // buffer too small
    CHECK(pr_markov_stationary(c.p, 6, dist, 7) == PR_OK);
    CHECK(dist[0] == doctest::Approx(a).epsilon(1e-12));
    CHECK(pr_q_prob(c.p, 1, 0, &v) == PR_OK);
    CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("C API: commands") {
    Ctx c;
    const char* tmp = "/tmp/pellrank_capi_cache.csv";
    std::remove(tmp);
    pr_run_config cfg{};
    cfg.max_d = 2000;
    cfg.threads = 2;
    cfg.format = "csv";
    cfg.cache_path = tmp;
    char* text = nullptr;
    CHECK(pr_cmd_analyze(c.p, &cfg, &text) == PR_OK);
    CHECK(std::string(text).find("analyzed") != std::string::npos);
    pr_string_free(text);
    text = nullptr;
    CHECK(pr_cmd_density(c.p, &cfg, &text) == PR_OK);
    std::string rep(text);
    CHECK(rep.find("alpha,0.4194224418") != std::string::npos);
    pr_string_free(text);
    text = nullptr;
    cfg.format = "json";
    CHECK(pr_cmd_density(c.p, &cfg, &text) == PR_OK);
    CHECK(std::string(text).find("\"alpha\"") != std::string::npos);
    pr_string_free(text);
    text = nullptr;
    int violation = -1;
    CHECK(pr_cmd_verify(c.p, "markov", 100000, 7, 0, 1, &text, &violation) == PR_OK);
    CHECK(violation == 0);
    pr_string_free(text);
    text = nullptr;
    CHECK(pr_cmd_verify(c.p, "nonsense", 0, 0, 0, 1, &text, &violation) == PR_EDOMAIN);
    CHECK(pr_cmd_spacing(c.p, 5000, 10.0, 3.0, "csv", &text) == PR_OK);
    CHECK(std::string(text).find("phi") != std::string::npos);
    pr_string_free(text);
    std::remove(tmp);
}
