// Command-line front end: analyze / density / verify / spacing over the
// pellrank C API. Exit codes: 0 ok, 1 verification failure, 2 io,
// 3 missing prerequisite, 4 resource bound, 64 usage.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "pellrank.h"

namespace {

int map_error(int code) {
    switch (code) {
        case PR_OK: return 0;
        case PR_EVERIFY: return 1;
        case PR_EIO: return 2;
        case PR_ELIMIT: return 4;
        case PR_EDOMAIN: return 64;
        default: return 2;
    }
}

struct CtxGuard {
    pr_ctx* ctx = pr_ctx_new();
    ~CtxGuard() { pr_ctx_free(ctx); }
};

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { pr_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-primary class-group invariants for the negative Pell family"};
    app.fallthrough();
    app.set_config("--config", "", "plain key=value config file; flags override");

    std::int64_t max_d = 10000;
    int threads = 1;
    std::uint64_t seed = 0;
    std::int64_t oracle_bound = 0;
    std::string cache = "pellrank-cache.csv";
    std::string format = "csv";
    std::string suite = "redei";
    std::uint64_t trials = 0;
    std::int64_t x = 100000;
    double y1 = 10.0, eta = 3.0;

    app.add_option("--max", max_d, "largest discriminant to sweep");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized suites and cache validation");
    app.add_option("--oracle-bound", oracle_bound, "cross-check rows against the form class group up to this bound");
    app.add_option("--cache", cache, "result cache path");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--suite", suite, "verify suite: redei|reflection|combinatorics|markov|oracle");
    app.add_option("--trials", trials, "trial count for randomized suites (0 = suite default)");
    app.add_option("--y1", y1, "comfortable-spacing threshold");
    app.add_option("--eta", eta, "regular-spacing parameter");

    auto* cmd_analyze = app.add_subcommand("analyze", "sweep Pell-family discriminants into the cache");
    auto* cmd_density = app.add_subcommand("density", "empirical vs theoretical density report");
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    auto* cmd_spacing = app.add_subcommand("spacing", "prime-spacing statistics of S(x)");
    cmd_spacing->add_option("--x", x, "enumerate S(x) up to x");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    CtxGuard g;
    pr_run_config cfg{};
    cfg.max_d = max_d;
    cfg.threads = threads;
    cfg.seed = seed;
    cfg.oracle_bound = oracle_bound;
    cfg.cache_path = cache.empty() ? nullptr : cache.c_str();
    cfg.format = format.c_str();

    if (cmd_analyze->parsed()) {
        StringGuard out;
        int rc = pr_cmd_analyze(g.ctx, &cfg, &out.s);
        if (rc != PR_OK) {
            std::fprintf(stderr, "analyze: %s\n", pr_last_error(g.ctx));
            return map_error(rc);
        }
        std::fputs(out.s, stdout);
        return 0;
    }

    if (cmd_density->parsed()) {
        bool max_given = app.count("--max") > 0;
        if (!max_given) {
            std::ifstream probe(cache);
            if (!probe) {
                std::fprintf(stderr, "density: cache %s missing and no --max to build it\n", cache.c_str());
                return 3;
            }
            cfg.max_d = 0;  // report over whatever the cache holds
        }
        StringGuard out;
        int rc = pr_cmd_density(g.ctx, &cfg, &out.s);
        if (rc != PR_OK) {
            std::fprintf(stderr, "density: %s\n", pr_last_error(g.ctx));
            return map_error(rc);
        }
        std::fputs(out.s, stdout);
        return 0;
    }

    if (cmd_verify->parsed()) {
        StringGuard out;
        int violation = 0;
        int rc = pr_cmd_verify(g.ctx, suite.c_str(), trials, seed, max_d, threads, &out.s, &violation);
        if (rc != PR_OK) {
            std::fprintf(stderr, "verify: %s\n", pr_last_error(g.ctx));
            return map_error(rc);
        }
        std::fputs(out.s, stdout);
        return violation ? 1 : 0;
    }

    if (cmd_spacing->parsed()) {
        StringGuard out;
        int rc = pr_cmd_spacing(g.ctx, x, y1, eta, format.c_str(), &out.s);
        if (rc != PR_OK) {
            std::fprintf(stderr, "spacing: %s\n", pr_last_error(g.ctx));
            return map_error(rc);
        }
        std::fputs(out.s, stdout);
        return 0;
    }
    return 64;
}
