// Command-line driver for the identity laboratory.
//
// Exit status: 0 when every requested verification passes, 1 when any case
// fails, 2 on usage errors, hypothesis violations and excluded parameters.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tbl/bessel.hpp"
#include "tbl/characters.hpp"
#include "tbl/errors.hpp"
#include "tbl/identities.hpp"
#include "tbl/report.hpp"
#include "tbl/specfun.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string complex_text(tbl::cplx z) {
    return fmt("%.16g", z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt("%.16g", std::abs(z.imag())) + "i";
}

tbl::cplx parse_complex(const std::string& s) {
    // "re" or "re,im"
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw UsageError("cannot parse complex value '" + s + "' (expected re or re,im)");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw UsageError("cannot parse complex value '" + s + "' (expected re,im)");
    }
    std::string rest;
    if (in >> rest) throw UsageError("trailing characters in '" + s + "'");
    return {re, im};
}

void require_known_theorem(const std::string& id) {
    const auto ids = tbl::theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) return;
    std::string msg = "unknown theorem '" + id + "'; valid IDs:";
    for (const auto& v : ids) msg += " " + v;
    throw UsageError(msg);
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw UsageError("cannot write '" + path + "'");
    return &file;
}

int cmd_list_characters(int q) {
    const auto chars = tbl::enumerate_characters(q);
    std::printf("%-6s %-6s %-6s %-10s %-10s %-5s\n", "index", "parity", "order", "conductor", "primitive", "real");
    for (const auto& chi : chars) {
        std::printf("%-6d %-6s %-6d %-10d %-10s %-5s\n", chi.index(),
                    chi.parity() == tbl::Parity::Even ? "even" : "odd", chi.order(), chi.conductor(),
                    chi.is_primitive() ? "yes" : "no", chi.is_real() ? "yes" : "no");
    }
    return exit_pass;
}

int cmd_lvalue(int q, int index, const std::string& s_text) {
    const tbl::cplx s = parse_complex(s_text);
    const auto chi = tbl::character(q, index);
    const auto ev = tbl::dirichlet_L_eval(s, chi);
    std::cout << "L(" << complex_text(s) << ", chi_" << q << "," << index << ") = " << complex_text(ev.value) << '\n'
              << "method: " << tbl::to_string(ev.method) << '\n';
    return exit_pass;
}

int cmd_bessel(const std::string& kind, double nu, double x) {
    double v = 0.0;
    if (kind == "K") v = tbl::bessel_K(nu, x);
    else if (kind == "I") v = tbl::bessel_I(nu, x);
    else if (kind == "J") v = tbl::bessel_J(nu, x);
    else if (kind == "Y") v = tbl::bessel_Y(nu, x);
    else throw UsageError("--kind must be one of K, I, J, Y");
    std::cout << kind << "_" << fmt("%.17g", nu) << "(" << fmt("%.17g", x) << ") = " << fmt("%.17g", v) << '\n';
    return exit_pass;
}

void print_verification(const tbl::VerificationReport& r) {
    std::cout << r.input.theorem_id << (r.pass ? "  PASS" : "  FAIL") << '\n'
              << "  lhs     = " << complex_text(r.lhs) << "  (" << r.lhs_terms << " terms)\n"
              << "  rhs     = " << complex_text(r.rhs) << "  (" << r.rhs_terms << " terms)\n"
              << "  abs_err = " << fmt("%.3e", r.abs_err) << "  rel_err = " << fmt("%.3e", r.rel_err)
              << "  tolerance = " << fmt("%.1e", r.tolerance) << '\n';
    for (const auto& p : r.rhs_parts) std::cout << "  rhs part  " << p.name << ": " << complex_text(p.value) << '\n';
    for (const auto& d : r.diagnostics) std::cout << "  note      " << d.name << ": " << complex_text(d.value) << '\n';
    std::cout << "  wall " << fmt("%.1f", r.wall_ms) << " ms\n";
}

struct VerifyArgs {
    tbl::IdentityCase c;
    std::optional<int> k;
    std::optional<double> nu;
    std::optional<int> N;
    double tol = 0.0;
    std::string format = "text";
};

int cmd_verify(VerifyArgs& v) {
    require_known_theorem(v.c.theorem_id);
    v.c.k = v.k;
    v.c.nu = v.nu;
    v.c.N = v.N;
    const auto r = tbl::verify(v.c, v.tol);
    if (v.format == "structured") std::cout << tbl::report_record(r, 2) << '\n';
    else print_verification(r);
    return r.pass ? exit_pass : exit_fail;
}

struct SuiteArgs {
    bool all = false;
    std::string filter;
    bool full_grid = false;
    std::string format = "text";
    std::string out;
    long long terms = 0;
    double tol_scale = 1.0;
    unsigned threads = 0;
};

int cmd_suite(const SuiteArgs& a) {
    if (a.all == !a.filter.empty()) throw UsageError("suite needs exactly one of --all or --filter");
    tbl::SuiteOptions o;
    o.pattern = a.all ? "*" : a.filter;
    o.voronoi_full_grid = a.full_grid;
    o.voronoi_terms = a.terms;
    o.tolerance_scale = a.tol_scale;
    o.threads = a.threads;
    const auto reports = tbl::run_suite(o);
    std::ofstream file;
    std::ostream& os = *open_output(a.out, file);
    if (a.format == "structured") {
        // a single document to a file; line-delimited records to stdout
        if (a.out.empty() || a.out == "-") tbl::write_jsonl(os, reports);
        else tbl::write_json(os, reports);
    } else {
        tbl::write_text(os, reports);
    }
    if (&os != &std::cout) {
        const auto s = tbl::summarize(reports);
        std::cout << s.passed << "/" << s.total << " passed; report written to " << a.out << '\n';
    }
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    return ok ? exit_pass : exit_fail;
}

int cmd_positivity(int q_max) {
    const auto entries = tbl::positivity_scan(q_max);
    bool ok = true;
    std::printf("%-4s %-6s %-6s %s\n", "q", "index", "parity", "L(1, chi)");
    for (const auto& e : entries) {
        std::printf("%-4d %-6d %-6s %.15f\n", e.q, e.index, e.parity == tbl::Parity::Even ? "even" : "odd", e.value);
        ok = ok && e.value > 0.0;
    }
    std::printf("%zu real primitive characters, %s\n", entries.size(), ok ? "all positive" : "NOT all positive");
    return ok ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character-twisted Bessel series and Voronoi identity checks"};
    app.require_subcommand(1);

    int lc_q = 0;
    auto* lc = app.add_subcommand("list-characters", "List the characters mod q in index order");
    lc->add_option("--q", lc_q, "modulus")->required();

    int lv_q = 0, lv_idx = 0;
    std::string lv_s;
    auto* lv = app.add_subcommand("lvalue", "Evaluate L(s, chi)");
    lv->add_option("--q", lv_q, "modulus")->required();
    lv->add_option("--char", lv_idx, "character index (see list-characters)")->required();
    lv->add_option("--s", lv_s, "argument as re or re,im")->required();

    std::string bk;
    double b_nu = 0.0, b_x = 0.0;
    auto* bs = app.add_subcommand("bessel", "Evaluate a Bessel function of real order");
    bs->add_option("--kind", bk, "K, I, J or Y")->required();
    bs->add_option("--nu", b_nu, "order")->required();
    bs->add_option("--x", b_x, "argument")->required();

    VerifyArgs va;
    auto* vf = app.add_subcommand("verify", "Verify one identity at one parameter point");
    vf->add_option("--theorem", va.c.theorem_id, "theorem id, e.g. T2_1, C3_2, T4_5")->required();
    vf->add_option("--q", va.c.q, "modulus of chi (of chi2 for two-character theorems)");
    vf->add_option("--char", va.c.char_index, "index of chi (of chi1 for two-character theorems)");
    vf->add_option("--p", va.c.p, "modulus of chi1 for two-character theorems");
    vf->add_option("--char2", va.c.char2_index, "index of chi2 mod q for two-character theorems");
    vf->add_option("--k", va.k, "integer order k");
    vf->add_option("--nu", va.nu, "order nu");
    vf->add_option("--a", va.c.a, "a > 0");
    vf->add_option("--x", va.c.x, "x > 0");
    vf->add_option("--N", va.N, "truncation index of the Cohen-type identities");
    vf->add_option("--alpha", va.c.alpha, "left end of the Voronoi interval");
    vf->add_option("--beta", va.c.beta, "right end of the Voronoi interval");
    vf->add_option("--f", va.c.test_function, "Voronoi test function: exp, t2, gauss, poly4");
    vf->add_option("--terms", va.c.voronoi_terms, "Voronoi kernel terms (default depends on the modulus)");
    vf->add_option("--tol", va.tol, "tolerance (default: the theorem's)");
    vf->add_option("--format", va.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

    SuiteArgs sa;
    auto* su = app.add_subcommand("suite", "Run the registered parameter points");
    su->add_flag("--all", sa.all, "every theorem");
    su->add_option("--filter", sa.filter, "glob over theorem ids, e.g. 'T3_*'");
    su->add_flag("--full-grid", sa.full_grid, "Voronoi: every test function and interval");
    su->add_option("--format", sa.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    su->add_option("--out", sa.out, "output file (default stdout)");
    su->add_option("--terms", sa.terms, "Voronoi kernel terms");
    su->add_option("--tol-scale", sa.tol_scale, "multiplies every tolerance")->check(CLI::PositiveNumber);
    su->add_option("--threads", sa.threads, "worker threads (default: hardware)");

    int pos_q = 50;
    auto* ps = app.add_subcommand("positivity", "L(1, chi) for real primitive characters");
    ps->add_option("--q-max", pos_q, "largest modulus")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*lc) return cmd_list_characters(lc_q);
        if (*lv) return cmd_lvalue(lv_q, lv_idx, lv_s);
        if (*bs) return cmd_bessel(bk, b_nu, b_x);
        if (*vf) return cmd_verify(va);
        if (*su) return cmd_suite(sa);
        if (*ps) return cmd_positivity(pos_q);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const tbl::HypothesisError& e) {
        std::cerr << "hypothesis violated (" << e.theorem() << "): " << e.clause() << '\n';
        return exit_usage;
    } catch (const tbl::ExcludedParameter& e) {
        std::cerr << "excluded parameter: " << e.what() << '\n';
        return exit_usage;
    } catch (const tbl::InvalidModulus& e) {
        std::cerr << "invalid modulus: " << e.what() << '\n';
        return exit_usage;
    } catch (const tbl::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return exit_usage;
    } catch (const tbl::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fail;
    }
    return exit_usage;
}
