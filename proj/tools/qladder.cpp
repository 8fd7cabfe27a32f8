// qladder: tables, Gram matrices, identity suites and q -> 1 sweeps.
//
// Exit codes: 0 success, 1 usage or parse error, 2 inadmissible parameters,
// 3 an identity failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qladder/classical.hpp"
#include "qladder/errors.hpp"
#include "qladder/inner.hpp"
#include "qladder/io.hpp"
#include "qladder/ladder.hpp"
#include "qladder/verify.hpp"

using namespace qladder;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_admissibility = 2;
constexpr int exit_identity = 3;

constexpr int exact_comfort_limit = 16;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamArgs {
    std::string family = "q-racah";
    std::string alpha;
    std::string beta;
    std::string delta;
    std::string q;
    int N = -1;
};

struct OutputArgs {
    std::string format = "json";
    std::string output;
    std::string backend;
};

Rational parse_param(const std::string& name, const std::string& text)
{
    if (text.empty()) {
        throw UsageError("missing --" + name);
    }
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

std::string resolve_backend(const std::string& flag)
{
    std::string b = flag;
    if (b.empty()) {
        const char* env = std::getenv("QLADDER_BACKEND");
        b = env ? env : "exact";
    }
    if (b != "exact" && b != "float") {
        throw UsageError("backend must be 'exact' or 'float', got '" + b + "'");
    }
    return b;
}

void emit(const OutputArgs& out, const std::string& text)
{
    if (out.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.output, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + out.output + "'");
    }
    f << text;
}

void warn_size(const std::string& backend, int N)
{
    if (backend == "exact" && N > exact_comfort_limit) {
        std::cerr << "warning: exact arithmetic with N = " << N << " > " << exact_comfort_limit
                  << "; rational sizes grow quickly\n";
    }
}

template <Field F>
F to_field(const Rational& r)
{
    return field_traits<F>::from_rational(r);
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

template <Field F>
struct FamilyRun {
    Json params;
    std::vector<GridFunction<F>> ladder, closed, hyper;
};

template <Field F>
FamilyRun<F> run_family(const ParamArgs& a)
{
    FamilyRun<F> run;
    auto fill = [&](const auto& p, auto values) {
        run.params = params_json(p);
        for (int n = 0; n <= p.N(); ++n) {
            run.ladder.push_back(values(p, n, Route::ladder));
            run.closed.push_back(values(p, n, Route::closed_form));
            run.hyper.push_back(values(p, n, Route::hypergeometric));
        }
    };
    const F al = to_field<F>(parse_param("alpha", a.alpha));
    const F be = to_field<F>(parse_param("beta", a.beta));
    const F de = to_field<F>(parse_param("delta", a.delta));
    if (a.family == "q-racah") {
        const F q = to_field<F>(parse_param("q", a.q));
        fill(QRacahParams<F>::create(al, be, de, q, a.N),
             [](const auto& p, int n, Route r) { return qracah_values(p, n, r); });
    } else if (a.family == "racah") {
        fill(RacahParams<F>::create(al, be, de, a.N),
             [](const auto& p, int n, Route r) { return racah_values(p, n, r); });
    } else {
        throw UsageError("--family must be 'q-racah' or 'racah'");
    }
    return run;
}

Route parse_route(const std::string& s)
{
    if (s == "ladder") {
        return Route::ladder;
    }
    if (s == "closed") {
        return Route::closed_form;
    }
    if (s == "hyper") {
        return Route::hypergeometric;
    }
    throw UsageError("--route must be 'ladder', 'closed' or 'hyper'");
}

template <Field F>
int table_impl(const ParamArgs& a, const OutputArgs& o, const std::string& backend, Route route)
{
    const auto run = run_family<F>(a);
    const auto& chosen = route == Route::ladder ? run.ladder : route == Route::closed_form ? run.closed : run.hyper;
    const int N = a.N;
    bool all_agree = true;
    std::vector<std::string> provenance;
    for (int x = 0; x <= N; ++x) {
        bool agree = true;
        for (int n = 0; n <= N; ++n) {
            const auto i = static_cast<std::size_t>(n);
            const auto j = static_cast<std::size_t>(x);
            agree = agree && field_equal(run.ladder[i][j], run.closed[i][j]) &&
                    field_equal(run.ladder[i][j], run.hyper[i][j]);
        }
        all_agree = all_agree && agree;
        provenance.push_back(agree ? "ladder=closed=hyper" : "MISMATCH");
    }

    std::string text;
    if (o.format == "csv") {
        std::vector<std::string> header{"x"};
        for (int n = 0; n <= N; ++n) {
            header.push_back("n=" + std::to_string(n));
        }
        header.push_back("routes");
        std::vector<std::vector<std::string>> rows;
        for (int x = 0; x <= N; ++x) {
            std::vector<std::string> r{std::to_string(x)};
            for (int n = 0; n <= N; ++n) {
                r.push_back(to_string(chosen[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]));
            }
            r.push_back(provenance[static_cast<std::size_t>(x)]);
            rows.push_back(std::move(r));
        }
        std::ostringstream os;
        write_csv(os, header, rows);
        text = os.str();
    } else {
        Json rows = Json::array();
        for (int x = 0; x <= N; ++x) {
            Json vals = Json::array();
            for (int n = 0; n <= N; ++n) {
                vals.push_back(to_string(chosen[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]));
            }
            rows.push_back(Json{{"x", x}, {"values", vals}, {"routes", provenance[static_cast<std::size_t>(x)]}});
        }
        Json j{{"family", a.family},
               {"backend", backend},
               {"params", run.params},
               {"cross_checked", Json::array({"ladder", "closed", "hyper"})},
               {"routes_agree", all_agree},
               {"rows", rows}};
        text = j.dump(2) + "\n";
    }
    emit(o, text);
    if (!all_agree) {
        std::cerr << "error: construction routes disagree\n";
        return exit_identity;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// gram
// ---------------------------------------------------------------------------

template <Field F>
int gram_impl(const ParamArgs& a, const OutputArgs& o, const std::string& backend)
{
    const F al = to_field<F>(parse_param("alpha", a.alpha));
    const F be = to_field<F>(parse_param("beta", a.beta));
    const F de = to_field<F>(parse_param("delta", a.delta));
    Matrix<F> g;
    std::vector<F> closed;
    bool positive = false;
    Json params;
    if (a.family == "q-racah") {
        const F q = to_field<F>(parse_param("q", a.q));
        const auto p = QRacahParams<F>::create(al, be, de, q, a.N);
        const auto w = weight(p);
        g = gram(qracah_family(p), w);
        for (int n = 0; n <= a.N; ++n) {
            closed.push_back(norm_closed_form(p, n));
        }
        positive = weight_positive(w);
        params = params_json(p);
    } else if (a.family == "racah") {
        const auto p = RacahParams<F>::create(al, be, de, a.N);
        const auto w = weight(p);
        g = gram(racah_family(p), w);
        for (int n = 0; n <= a.N; ++n) {
            closed.push_back(racah_norm(p, n));
        }
        positive = weight_positive(w);
        params = params_json(p);
    } else {
        throw UsageError("--family must be 'q-racah' or 'racah'");
    }

    const std::size_t k = g.size();
    bool ok = true;
    std::vector<bool> match(k);
    for (std::size_t n = 0; n < k; ++n) {
        match[n] = field_equal(g[n][n], closed[n]);
        ok = ok && match[n];
        for (std::size_t m = 0; m < k; ++m) {
            if (m != n && !field_equal(g[n][m], F(0))) {
                ok = false;
            }
        }
    }

    std::string text;
    if (o.format == "csv") {
        std::vector<std::string> header{"n"};
        for (std::size_t m = 0; m < k; ++m) {
            header.push_back("m=" + std::to_string(m));
        }
        header.push_back("closed_form");
        header.push_back("closed_form_match");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t n = 0; n < k; ++n) {
            std::vector<std::string> r{std::to_string(n)};
            for (std::size_t m = 0; m < k; ++m) {
                r.push_back(to_string(g[n][m]));
            }
            r.push_back(to_string(closed[n]));
            r.push_back(match[n] ? "true" : "false");
            rows.push_back(std::move(r));
        }
        std::ostringstream os;
        write_csv(os, header, rows);
        text = os.str();
    } else {
        Json matrix = Json::array();
        Json diag = Json::array();
        for (std::size_t n = 0; n < k; ++n) {
            Json row = Json::array();
            for (std::size_t m = 0; m < k; ++m) {
                row.push_back(to_string(g[n][m]));
            }
            matrix.push_back(std::move(row));
            diag.push_back(Json{{"n", n},
                                {"value", to_string(g[n][n])},
                                {"closed_form", to_string(closed[n])},
                                {"closed_form_match", static_cast<bool>(match[n])}});
        }
        Json j{{"family", a.family}, {"backend", backend}, {"params", params},     {"gram", matrix},
               {"diagonal", diag},   {"passed", ok},       {"weight_positive", positive}};
        text = j.dump(2) + "\n";
    }
    emit(o, text);
    if (!ok) {
        std::cerr << "error: Gram matrix does not match the orthogonality relations\n";
        return exit_identity;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int verify_impl(VerifyConfig cfg, const ParamArgs& a, bool fixed, const OutputArgs& o)
{
    if (fixed) {
        if (a.N < 0) {
            throw UsageError("--N is required with explicit parameters");
        }
        Rational alpha = parse_param("alpha", a.alpha);
        Rational beta = parse_param("beta", a.beta);
        Rational delta = parse_param("delta", a.delta);
        Rational q = parse_param("q", a.q);
        cfg.fixed =
            QRacahParams<Rational>::create(std::move(alpha), std::move(beta), std::move(delta), std::move(q), a.N);
        warn_size("exact", a.N);
    } else {
        warn_size("exact", cfg.n_max);
    }
    std::vector<SuiteResult> results;
    try {
        results = run_verify(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed();
    }

    std::string text;
    if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : results) {
            rows.push_back({r.suite, r.passed() ? "pass" : "fail", std::to_string(r.samples),
                            std::to_string(r.checks), std::to_string(r.failures.size()),
                            std::to_string(r.rejections)});
        }
        std::ostringstream os;
        write_csv(os, {"suite", "status", "samples", "checks", "failures", "rejections"}, rows);
        text = os.str();
    } else {
        text = verify_report_json(results, cfg).dump(2) + "\n";
    }
    emit(o, text);
    for (const auto& r : results) {
        for (const auto& f : r.failures) {
            std::cerr << "FAIL " << to_json(f).dump() << "\n";
        }
    }
    return ok ? exit_ok : exit_identity;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

int limit_impl(const ParamArgs& a, const std::vector<double>& eps, const OutputArgs& o)
{
    const double alpha = parse_param("alpha", a.alpha).to_double();
    const double beta = parse_param("beta", a.beta).to_double();
    const double delta = parse_param("delta", a.delta).to_double();
    const auto p = RacahParams<double>::create(alpha, beta, delta, a.N);
    const auto rep = q_limit_compare(p, eps);
    bool finite = true;
    std::string text;
    if (o.format == "csv") {
        std::vector<std::string> header{"epsilon", "max_abs_error"};
        for (int n = 0; n <= a.N; ++n) {
            header.push_back("n=" + std::to_string(n));
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : rep.rows) {
            finite = finite && row.finite;
            std::vector<std::string> r{to_string(row.epsilon), to_string(row.max_abs_error)};
            for (double e : row.per_n) {
                r.push_back(to_string(e));
            }
            rows.push_back(std::move(r));
        }
        std::ostringstream os;
        write_csv(os, header, rows);
        text = os.str();
    } else {
        Json rows = Json::array();
        for (const auto& row : rep.rows) {
            finite = finite && row.finite;
            Json per_n = Json::array();
            for (double e : row.per_n) {
                per_n.push_back(e);
            }
            rows.push_back(Json{{"epsilon", row.epsilon}, {"max_abs_error", row.max_abs_error}, {"per_n", per_n}});
        }
        Json params{{"alpha", a.alpha}, {"beta", a.beta}, {"delta", a.delta}, {"N", a.N}};
        Json j{{"correspondence", rep.correspondence},
               {"backend", "float"},
               {"params", params},
               {"rows", rows},
               {"decreasing", rep.decreasing()},
               {"ratios", rep.ratios()},
               {"observed_orders", rep.observed_orders()}};
        text = j.dump(2) + "\n";
    }
    emit(o, text);
    if (!finite) {
        std::cerr << "error: non-finite values in the limit sweep\n";
        return exit_identity;
    }
    return exit_ok;
}

void add_param_options(CLI::App* cmd, ParamArgs& a, bool family)
{
    if (family) {
        cmd->add_option("--family", a.family, "q-racah or racah")->capture_default_str();
    }
    cmd->add_option("--alpha", a.alpha, "alpha as p/q");
    cmd->add_option("--beta", a.beta, "beta as p/q");
    cmd->add_option("--delta", a.delta, "delta as p/q");
    cmd->add_option("--q", a.q, "base q as p/q (q-racah only)");
    cmd->add_option("--N", a.N, "level N");
}

void add_output_options(CLI::App* cmd, OutputArgs& o, bool backend)
{
    cmd->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", o.output, "output file (default stdout)");
    if (backend) {
        cmd->add_option("--backend", o.backend, "exact or float (default: $QLADDER_BACKEND, else exact)");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ladder constructions and exact identity checks for q-Racah and Racah polynomials"};
    app.require_subcommand(1);

    ParamArgs table_args;
    OutputArgs table_out;
    std::string route = "ladder";
    auto* table = app.add_subcommand("table", "polynomial values r_n(x), rows x, columns n");
    add_param_options(table, table_args, true);
    table->add_option("--route", route, "ladder, closed or hyper")->capture_default_str();
    add_output_options(table, table_out, true);

    ParamArgs gram_args;
    OutputArgs gram_out;
    auto* gramc = app.add_subcommand("gram", "Gram matrix of the family against the closed-form norms");
    add_param_options(gramc, gram_args, true);
    add_output_options(gramc, gram_out, true);

    VerifyConfig vcfg;
    ParamArgs verify_args;
    OutputArgs verify_out;
    std::vector<std::string> suites;
    auto* verify = app.add_subcommand("verify", "run identity suites over sampled parameters (exact)");
    verify->add_option("--suite", suites, "suite names or 'all'")->delimiter(',');
    verify->add_option("--samples", vcfg.samples, "parameter samples per suite")->capture_default_str();
    verify->add_option("--seed", vcfg.seed, "sampler seed")->capture_default_str();
    verify->add_option("--N-max", vcfg.n_max, "largest level N")->capture_default_str();
    add_param_options(verify, verify_args, false);
    // Test-only: breaks one identity on purpose to exercise failure reporting.
    verify->add_option("--corrupt-suite", vcfg.corrupt)->group("");
    add_output_options(verify, verify_out, false);

    ParamArgs limit_args;
    OutputArgs limit_out;
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    auto* limit = app.add_subcommand("limit", "compare q-Racah at q = 1 - eps with Racah (float)");
    add_param_options(limit, limit_args, false);
    limit->add_option("--eps", eps, "epsilon values")->delimiter(',');
    add_output_options(limit, limit_out, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*table) {
            const std::string backend = resolve_backend(table_out.backend);
            const Route r = parse_route(route);
            if (table_args.N < 0) {
                throw UsageError("--N is required");
            }
            warn_size(backend, table_args.N);
            return backend == "exact" ? table_impl<Rational>(table_args, table_out, backend, r)
                                      : table_impl<double>(table_args, table_out, backend, r);
        }
        if (*gramc) {
            const std::string backend = resolve_backend(gram_out.backend);
            if (gram_args.N < 0) {
                throw UsageError("--N is required");
            }
            warn_size(backend, gram_args.N);
            return backend == "exact" ? gram_impl<Rational>(gram_args, gram_out, backend)
                                      : gram_impl<double>(gram_args, gram_out, backend);
        }
        if (*verify) {
            vcfg.suites = suites;
            if (vcfg.samples < 1 || vcfg.n_max < 1) {
                throw UsageError("--samples and --N-max must be positive");
            }
            if (!vcfg.corrupt.empty() && vcfg.corrupt != "watson") {
                throw UsageError("only the watson suite can be corrupted");
            }
            const bool fixed = !verify_args.alpha.empty() || !verify_args.beta.empty() ||
                               !verify_args.delta.empty() || !verify_args.q.empty();
            return verify_impl(vcfg, verify_args, fixed, verify_out);
        }
        if (*limit) {
            if (limit_args.N < 0) {
                throw UsageError("--N is required");
            }
            return limit_impl(limit_args, eps, limit_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const AdmissibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_admissibility;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_admissibility;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
