#include "pellrank.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "arith.hpp"
#include "combinatorics.hpp"
#include "densities.hpp"
#include "pell.hpp"
#include "quadforms.hpp"
#include "redei.hpp"
#include "reflection.hpp"
#include "spacing.hpp"
#include "sweep.hpp"
#include "verify.hpp"

using namespace pellrank;
using arith::i64;
using ordered_json = nlohmann::ordered_json;

struct pr_ctx {
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int guarded(pr_ctx* ctx, Fn&& fn) {
    if (!ctx) return PR_EDOMAIN;
    try {
        return fn();
    } catch (const std::domain_error& e) {
        ctx->last_error = e.what();
        return PR_EDOMAIN;
    } catch (const std::length_error& e) {
        ctx->last_error = e.what();
        return PR_ELIMIT;
    } catch (const std::runtime_error& e) {
        ctx->last_error = e.what();
        return PR_EIO;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return PR_EINTERNAL;
    }
}

std::string format_double(double v, int digits = 10) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(digits);
    ss << v;
    return ss.str();
}

// ---- density report rendering ----

std::string density_csv(const densities::DensityReport& rep) {
    std::ostringstream out;
    double a = rep.alpha_value, b = rep.beta_value;
    out << "section,key,value\n";
    out << "constants,alpha," << format_double(a) << "\n";
    out << "constants,one_minus_alpha," << format_double(1 - a) << "\n";
    out << "constants,beta," << format_double(b) << "\n";
    out << "constants,alpha_beta," << format_double(a * b) << "\n";
    out << "constants,fk_lower_5alpha_over_4," << format_double(1.25 * a) << "\n";
    out << "constants,fk_upper_2_thirds," << format_double(2.0 / 3.0) << "\n";
    out << "note,exponent," << densities::DensityReport::exponent_note << "\n";
    out << "\nX,count_D,count_solvable,solvable_fraction\n";
    for (const auto& c : rep.ladder) {
        double frac = c.count_d ? double(c.count_solvable) / double(c.count_d) : 0.0;
        out << c.cutoff << "," << c.count_d << "," << c.count_solvable << "," << format_double(frac)
            << "\n";
    }
    out << "\nX,n,count_n,fraction,pi_n\n";
    for (const auto& c : rep.ladder)
        for (const auto& [n, cnt] : c.counts_n) {
            double frac = c.count_d ? double(cnt) / double(c.count_d) : 0.0;
            double pin = a * static_cast<double>(densities::stationary_over_alpha(n));
            out << c.cutoff << "," << n << "," << cnt << "," << format_double(frac) << ","
                << format_double(pin) << "\n";
        }
    out << "\nX,n,m,count_nm,fraction,theorem2,ratio\n";
    for (const auto& c : rep.ladder)
        for (const auto& [nm, cnt] : c.counts_nm) {
            double frac = c.count_d ? double(cnt) / double(c.count_d) : 0.0;
            double th = densities::theorem2_density(nm.first, nm.second);
            out << c.cutoff << "," << nm.first << "," << nm.second << "," << cnt << ","
                << format_double(frac) << "," << format_double(th) << ","
                << (th > 0 ? format_double(frac / th, 6) : std::string("nan")) << "\n";
        }
    return out.str();
}

std::string density_json(const densities::DensityReport& rep) {
    ordered_json j;
    double a = rep.alpha_value, b = rep.beta_value;
    j["constants"]["alpha"] = format_double(a);
    j["constants"]["one_minus_alpha"] = format_double(1 - a);
    j["constants"]["beta"] = format_double(b);
    j["constants"]["alpha_beta"] = format_double(a * b);
    j["constants"]["fk_lower_5alpha_over_4"] = format_double(1.25 * a);
    j["constants"]["fk_upper_2_thirds"] = format_double(2.0 / 3.0);
    j["note"] = densities::DensityReport::exponent_note;
    j["ladder"] = ordered_json::array();
    for (const auto& c : rep.ladder) {
        ordered_json e;
        e["X"] = c.cutoff;
        e["count_D"] = c.count_d;
        e["count_solvable"] = c.count_solvable;
        e["solvable_fraction"] = c.count_d ? double(c.count_solvable) / double(c.count_d) : 0.0;
        e["rk4"] = ordered_json::array();
        for (const auto& [n, cnt] : c.counts_n) {
            ordered_json r;
            r["n"] = n;
            r["count"] = cnt;
            r["fraction"] = c.count_d ? double(cnt) / double(c.count_d) : 0.0;
            r["pi_n"] = a * static_cast<double>(densities::stationary_over_alpha(n));
            e["rk4"].push_back(r);
        }
        e["nm"] = ordered_json::array();
        for (const auto& [nm, cnt] : c.counts_nm) {
            ordered_json r;
            r["n"] = nm.first;
            r["m"] = nm.second;
            r["count"] = cnt;
            double frac = c.count_d ? double(cnt) / double(c.count_d) : 0.0;
            double th = densities::theorem2_density(nm.first, nm.second);
            r["fraction"] = frac;
            r["theorem2"] = th;
            r["ratio"] = th > 0 ? frac / th : 0.0;
            e["nm"].push_back(r);
        }
        j["ladder"].push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string spacing_csv(const spacing::SpacingReport& rep) {
    std::ostringstream out;
    out << "section,key,value\n";
    out << "counts,x," << rep.counts.x << "\n";
    out << "counts,phi," << rep.counts.phi << "\n";
    out << "counts,mu," << format_double(rep.counts.mu, 6) << "\n";
    out << "counts,mertens_estimate," << format_double(rep.mertens_estimate, 6) << "\n";
    out << "params,y1," << format_double(rep.y1, 3) << "\n";
    out << "params,eta," << format_double(rep.eta, 3) << "\n";
    i64 sum_r = 0;
    for (auto& [r, c] : rep.counts.phi_r) sum_r += c;
    out << "counts,sum_phi_r," << sum_r << "\n";
    out << "\nr,phi_r\n";
    for (auto& [r, c] : rep.counts.phi_r) out << r << "," << c << "\n";
    out << "\ny1,total,fail_comfortable,frac_comfortable\n";
    for (const auto& t : rep.y1_trend) {
        out << format_double(t.y1, 3) << "," << t.total << "," << t.fail_comfortable << ","
            << (t.total ? format_double(double(t.fail_comfortable) / double(t.total), 6)
                        : std::string("0"))
            << "\n";
    }
    out << "\nr,total,fail_comfortable,frac_comfortable,fail_regular,frac_regular,fail_extravagant,"
           "frac_extravagant\n";
    for (const auto& row : rep.rows) {
        auto frac = [&](i64 f) { return row.total ? format_double(double(f) / double(row.total), 6) : std::string("0"); };
        out << row.r << "," << row.total << "," << row.fail_comfortable << ","
            << frac(row.fail_comfortable) << "," << row.fail_regular << "," << frac(row.fail_regular)
            << "," << row.fail_extravagant << "," << frac(row.fail_extravagant) << "\n";
    }
    return out.str();
}

std::string spacing_json(const spacing::SpacingReport& rep) {
    ordered_json j;
    j["x"] = rep.counts.x;
    j["phi"] = rep.counts.phi;
    j["mu"] = rep.counts.mu;
    j["mertens_estimate"] = rep.mertens_estimate;
    j["y1"] = rep.y1;
    j["eta"] = rep.eta;
    j["phi_r"] = ordered_json::array();
    for (auto& [r, c] : rep.counts.phi_r) j["phi_r"].push_back({{"r", r}, {"count", c}});
    j["y1_trend"] = ordered_json::array();
    for (const auto& t : rep.y1_trend)
        j["y1_trend"].push_back({{"y1", t.y1},
                                 {"total", t.total},
                                 {"fail_comfortable", t.fail_comfortable}});
    j["rows"] = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json e;
        e["r"] = row.r;
        e["total"] = row.total;
        e["fail_comfortable"] = row.fail_comfortable;
        e["fail_regular"] = row.fail_regular;
        e["fail_extravagant"] = row.fail_extravagant;
        j["rows"].push_back(e);
    }
    return j.dump(2) + "\n";
}

}  // namespace

extern "C" {

pr_ctx* pr_ctx_new(void) { return new pr_ctx(); }

void pr_ctx_free(pr_ctx* ctx) { delete ctx; }

const char* pr_last_error(const pr_ctx* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

int pr_kronecker(pr_ctx* ctx, int64_t a, int64_t n, int* out) {
    return guarded(ctx, [&] {
        *out = arith::kronecker(a, n);
        return PR_OK;
    });
}

int pr_hilbert(pr_ctx* ctx, int64_t a, int64_t b, int64_t place, int* out) {
    return guarded(ctx, [&] {
        *out = arith::hilbert(a, b, place);
        return PR_OK;
    });
}

int pr_is_fundamental_discriminant(pr_ctx* ctx, int64_t d, int* out) {
    return guarded(ctx, [&] {
        *out = arith::is_fundamental_discriminant(d) ? 1 : 0;
        return PR_OK;
    });
}

int pr_in_pell_family(pr_ctx* ctx, int64_t d, int* out) {
    return guarded(ctx, [&] {
        *out = arith::in_pell_family(d) ? 1 : 0;
        return PR_OK;
    });
}

int pr_neg_pell_solvable(pr_ctx* ctx, int64_t d, int method, int* out) {
    return guarded(ctx, [&] {
        switch (method) {
            case PR_PELL_PERIOD: *out = pell::neg_pell_by_period(d).solvable ? 1 : 0; break;
            case PR_PELL_UNIT: *out = pell::neg_pell_by_unit(d).solvable ? 1 : 0; break;
            case PR_PELL_FUNDAMENTAL: *out = pell::neg_pell_fundamental(d) ? 1 : 0; break;
            default: throw std::domain_error("pr_neg_pell_solvable: unknown method");
        }
        return PR_OK;
    });
}

int pr_neg_pell_witness(pr_ctx* ctx, int64_t d, char** x_out, char** y_out) {
    return guarded(ctx, [&] {
        pell::PellVerdict v = pell::neg_pell_by_period(d);
        if (!v.solvable || !v.witness) throw std::domain_error("pr_neg_pell_witness: equation unsolvable");
        *x_out = dup_string(v.witness->first.str());
        *y_out = dup_string(v.witness->second.str());
        return PR_OK;
    });
}

int pr_is_acceptable(pr_ctx* ctx, int64_t a, int64_t b, int* out) {
    return guarded(ctx, [&] {
        *out = redei::is_acceptable(arith::SquareClass::from_integer(a),
                                    arith::SquareClass::from_integer(b))
                       .acceptable
                   ? 1
                   : 0;
        return PR_OK;
    });
}

int pr_is_admissible(pr_ctx* ctx, int64_t a, int64_t b, int64_t c, int* out) {
    return guarded(ctx, [&] {
        *out = redei::is_admissible(arith::SquareClass::from_integer(a),
                                    arith::SquareClass::from_integer(b),
                                    arith::SquareClass::from_integer(c))
                       .admissible
                   ? 1
                   : 0;
        return PR_OK;
    });
}

int pr_redei_symbol(pr_ctx* ctx, int64_t a, int64_t b, int64_t c, int* out) {
    return guarded(ctx, [&] {
        *out = redei::redei_symbol(a, b, c);
        return PR_OK;
    });
}

int pr_artin_pairing(pr_ctx* ctx, int64_t d, int64_t a, int64_t b, int* out) {
    return guarded(ctx, [&] {
        *out = redei::artin_pairing(d, arith::SquareClass::from_integer(a),
                                    arith::SquareClass::from_integer(b));
        return PR_OK;
    });
}

int pr_rk4(pr_ctx* ctx, int64_t d, int* out) {
    return guarded(ctx, [&] {
        if (!arith::in_pell_family(d)) throw std::domain_error("pr_rk4: D not in the Pell family");
        *out = redei::rk4_via_redei_matrix(d);
        return PR_OK;
    });
}

int pr_rk8(pr_ctx* ctx, int64_t d, int* out) {
    return guarded(ctx, [&] {
        if (!arith::in_pell_family(d)) throw std::domain_error("pr_rk8: D not in the Pell family");
        *out = redei::rk8_via_pairing(d);
        return PR_OK;
    });
}

int pr_oracle_profile(pr_ctx* ctx, int64_t d, int64_t oracle_bound, int* rk2, int* rk4_narrow,
                      int* rk8_narrow, int* rk4_ordinary, int* neg_pell, int64_t* h_plus) {
    return guarded(ctx, [&] {
        quadforms::ClassGroup g(d, oracle_bound > 0 ? oracle_bound : 1000000);
        quadforms::TwoPartProfile p = g.profile();
        if (rk2) *rk2 = p.rk2;
        if (rk4_narrow) *rk4_narrow = p.rk4_narrow;
        if (rk8_narrow) *rk8_narrow = p.rk8_narrow;
        if (rk4_ordinary) *rk4_ordinary = p.rk4_ordinary;
        if (neg_pell) *neg_pell = p.neg_pell ? 1 : 0;
        if (h_plus) *h_plus = g.class_number();
        return PR_OK;
    });
}

int pr_alpha(pr_ctx* ctx, double* out) {
    return guarded(ctx, [&] {
        *out = densities::alpha();
        return PR_OK;
    });
}

int pr_beta(pr_ctx* ctx, double* out) {
    return guarded(ctx, [&] {
        *out = densities::beta();
        return PR_OK;
    });
}

int pr_theorem2_density(pr_ctx* ctx, int n, int m, double* out) {
    return guarded(ctx, [&] {
        *out = densities::theorem2_density(n, m);
        return PR_OK;
    });
}

int pr_q_prob(pr_ctx* ctx, int n2, int n3, double* out) {
    return guarded(ctx, [&] {
        *out = static_cast<double>(densities::q_prob(n2, n3));
        return PR_OK;
    });
}

int pr_corank_dist(pr_ctx* ctx, int n, double* out, size_t len) {
    return guarded(ctx, [&] {
        if (len < size_t(n) + 1) throw std::domain_error("pr_corank_dist: buffer too small");
        auto dist = densities::corank_dist_chain(n);
        for (int k = 0; k <= n; ++k) out[k] = static_cast<double>(dist[std::size_t(k)]);
        return PR_OK;
    });
}

int pr_markov_stationary(pr_ctx* ctx, int n_top, double* out, size_t len) {
    return guarded(ctx, [&] {
        if (len < size_t(n_top) + 1) throw std::domain_error("pr_markov_stationary: buffer too small");
        auto pi = densities::markov_stationary(n_top);
        for (int k = 0; k <= n_top; ++k) out[k] = pi[std::size_t(k)];
        return PR_OK;
    });
}

int pr_cmd_analyze(pr_ctx* ctx, const pr_run_config* cfg, char** summary_out) {
    return guarded(ctx, [&] {
        if (!cfg) throw std::domain_error("pr_cmd_analyze: null config");
        sweep::RunConfig rc;
        rc.max_d = cfg->max_d;
        rc.threads = cfg->threads > 0 ? cfg->threads : 1;
        rc.seed = cfg->seed;
        rc.oracle_bound = cfg->oracle_bound;
        rc.cache_path = cfg->cache_path ? cfg->cache_path : "";
        auto rows = sweep::analyze_with_cache(rc);
        std::ostringstream ss;
        i64 shown = 0;
        for (const auto& r : rows)
            if (r.d <= rc.max_d) ++shown;
        ss << "analyzed " << shown << " Pell-family discriminants up to " << rc.max_d;
        if (!rc.cache_path.empty()) ss << " (cache: " << rc.cache_path << ")";
        ss << "\n";
        if (summary_out) *summary_out = dup_string(ss.str());
        return PR_OK;
    });
}

int pr_cmd_density(pr_ctx* ctx, const pr_run_config* cfg, char** report_out) {
    return guarded(ctx, [&] {
        if (!cfg) throw std::domain_error("pr_cmd_density: null config");
        std::vector<sweep::ResultRow> rows;
        std::string path = cfg->cache_path ? cfg->cache_path : "";
        bool have = false;
        if (!path.empty()) {
            std::ifstream probe(path);
            have = bool(probe);
        }
        if (have) {
            rows = sweep::load_cache(path);
            if (!rows.empty() && rows.back().d < cfg->max_d) have = false;
        }
        if (!have) {
            if (cfg->max_d <= 0)
                throw std::runtime_error("pr_cmd_density: cache missing and no max_d to build it");
            sweep::RunConfig rc;
            rc.max_d = cfg->max_d;
            rc.threads = cfg->threads > 0 ? cfg->threads : 1;
            rc.seed = cfg->seed;
            rc.oracle_bound = cfg->oracle_bound;
            rc.cache_path = path;
            rows = sweep::analyze_with_cache(rc);
        }
        i64 max_cut = cfg->max_d > 0 ? cfg->max_d : (rows.empty() ? 0 : rows.back().d);
        auto rep = sweep::density_report(rows, max_cut);
        std::string fmt = cfg->format ? cfg->format : "csv";
        std::string text = fmt == "json" ? density_json(rep) : density_csv(rep);
        if (report_out) *report_out = dup_string(text);
        return PR_OK;
    });
}

int pr_cmd_verify(pr_ctx* ctx, const char* suite, uint64_t trials, uint64_t seed, int64_t max_d,
                  int threads, char** report_out, int* violation) {
    return guarded(ctx, [&] {
        if (!suite) throw std::domain_error("pr_cmd_verify: null suite");
        verify::SuiteResult res = verify::run_suite(suite, trials, seed, max_d, threads);
        std::ostringstream ss;
        ss << "suite " << res.suite << (res.passed ? ": PASS" : ": FAIL") << "\n";
        for (const auto& line : res.lines) ss << "  " << line << "\n";
        if (!res.passed && !res.first_failure.empty()) ss << "  first failure: " << res.first_failure << "\n";
        if (report_out) *report_out = dup_string(ss.str());
        if (violation) *violation = res.passed ? 0 : 1;
        if (!res.passed && res.first_failure.rfind("unknown suite", 0) == 0)
            throw std::domain_error(res.first_failure);
        return PR_OK;
    });
}

int pr_cmd_spacing(pr_ctx* ctx, int64_t x, double y1, double eta, const char* format,
                   char** report_out) {
    return guarded(ctx, [&] {
        if (x > 100000000) throw std::length_error("pr_cmd_spacing: x above the sweep bound");
        auto rep = spacing::spacing_statistics(x, y1, eta);
        std::string fmt = format ? format : "csv";
        std::string text = fmt == "json" ? spacing_json(rep) : spacing_csv(rep);
        if (report_out) *report_out = dup_string(text);
        return PR_OK;
    });
}

void pr_string_free(char* s) { std::free(s); }

}  // extern "C"
