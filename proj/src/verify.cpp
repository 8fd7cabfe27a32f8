#include "qladder/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "qladder/classical.hpp"
#include "qladder/hyper.hpp"
#include "qladder/inner.hpp"
#include "qladder/ladder.hpp"
#include "qladder/qracah_ops.hpp"
#include "qladder/sampler.hpp"

namespace qladder {

namespace {

using Q = Rational;
using GF = GridFunction<Q>;

/// Bookkeeping shared by the suites: counts checks and records failures.
class Recorder {
public:
    explicit Recorder(SuiteResult& res) : res_(res) {}

    void start_sample(std::size_t index, std::string family, Json params)
    {
        sample_ = index;
        family_ = std::move(family);
        params_ = std::move(params);
    }

    bool check(bool ok, const std::string& what, int N = -1, int n = -1, int x = -1, const std::string& lhs = "",
               const std::string& rhs = "")
    {
        ++res_.checks;
        if (!ok) {
            res_.failures.push_back({res_.suite, sample_, family_, what, params_, N, n, x, lhs, rhs});
        }
        return ok;
    }

    bool equal(const Q& lhs, const Q& rhs, const std::string& what, int N = -1, int n = -1, int x = -1)
    {
        return check(lhs == rhs, what, N, n, x, lhs.str(), rhs.str());
    }

    /// Componentwise equality; records the first differing site.
    bool equal(const GF& lhs, const GF& rhs, const std::string& what, int N = -1, int n = -1)
    {
        if (lhs.size() != rhs.size()) {
            return check(false, what + " (size)", N, n, -1, std::to_string(lhs.size()), std::to_string(rhs.size()));
        }
        for (std::size_t x = 0; x < lhs.size(); ++x) {
            if (!(lhs[x] == rhs[x])) {
                return equal(lhs[x], rhs[x], what, N, n, static_cast<int>(x));
            }
        }
        return check(true, what, N, n, -1);
    }

    bool identity(const IdentityReport<Q>& r, const std::string& what, int N = -1, int n = -1, int x = -1)
    {
        return check(r.equal, what, N, n, x, r.lhs.str(), r.rhs.str());
    }

    SuiteResult& result() { return res_; }

private:
    SuiteResult& res_;
    std::size_t sample_ = 0;
    std::string family_;
    Json params_;
};

/// A sampled q-Racah parameter set admissible through level top + 1.
struct QSample {
    QRacahParams<Q> p;
    int top;
};

struct RSample {
    RacahParams<Q> p;
    int top;
};

std::vector<QSample> qracah_samples(const VerifyConfig& cfg, ParamSampler& s, int samples)
{
    std::vector<QSample> out;
    if (cfg.fixed) {
        const int N = cfg.fixed->N();
        out.push_back({cfg.fixed->at_level(N + 1), N});
        return out;
    }
    for (int i = 0; i < samples; ++i) {
        out.push_back({s.qracah(cfg.n_max + 1), cfg.n_max});
    }
    return out;
}

std::vector<RSample> racah_samples(const VerifyConfig& cfg, ParamSampler& s, int samples)
{
    std::vector<RSample> out;
    for (int i = 0; i < samples; ++i) {
        out.push_back({s.racah(cfg.n_max + 1), cfg.n_max});
    }
    return out;
}

Json level_params(const QRacahParams<Q>& p, int N)
{
    return params_json(QRacahParams<Q>::unchecked(p.alpha(), p.beta(), p.delta(), p.q(), N));
}

Json level_params(const RacahParams<Q>& p, int N)
{
    Json j = params_json(p);
    j["N"] = N;
    return j;
}

void record_factorization(Recorder& rec, const FactorizationReport<Q>& r)
{
    for (int c = 0; c < 4; ++c) {
        for (std::size_t x = 0; x < r.holds[static_cast<std::size_t>(c)].size(); ++x) {
            const bool ok = r.holds[static_cast<std::size_t>(c)][x];
            std::string lhs;
            std::string rhs;
            if (c == 2) {
                lhs = r.a_values[x].str();
                rhs = r.a_closed.str();
            } else if (c == 3) {
                lhs = r.b_values[x].str();
                rhs = r.b_closed.str();
            }
            rec.check(ok, condition_name(static_cast<Condition>(c)), r.level, -1, static_cast<int>(x), lhs, rhs);
        }
    }
}

void check_constants_chain(Recorder& rec, const FactorQuadruple<Q>& fq, int top)
{
    for (int k = 0; k < top; ++k) {
        rec.equal(fq.a_const(k + 1), fq.b_const(k), "a_{k+1} = b_k", k);
    }
}

// ---------------------------------------------------------------------------

void suite_factorization(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        const std::vector<FactorQuadruple<Q>> families = {
            build_factors(p), hahn_factors(p.alpha(), p.beta()), qhahn_factors(p.alpha(), p.beta(), p.q())};
        for (const auto& fq : families) {
            rec.start_sample(i, fq.family, level_params(p, top));
            for (int N = 1; N <= top; ++N) {
                record_factorization(rec, verify_factorization_conditions(fq, N));
            }
            check_constants_chain(rec, fq, top);
        }
        // Operators assembled from the factors coincide with the explicit ones.
        rec.start_sample(i, "q-racah", level_params(p, top));
        const auto fq = build_factors(p);
        for (int N = 1; N <= top; ++N) {
            rec.check(raising_from_factors(fq, N).coeffs() == build_R(p, N).coeffs(), "R_N from factors", N);
            rec.check(lowering_from_factors(fq, N).coeffs() == build_L(p, N).coeffs(), "L_N from factors", N);
            rec.check(second_order_from_factors(fq, N).coeffs() == build_D(p, N).coeffs(), "D_N from factors", N);
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        const auto fq = racah_factors(p);
        for (int N = 1; N <= top; ++N) {
            record_factorization(rec, verify_factorization_conditions(fq, N));
            rec.check(raising_from_factors(fq, N).coeffs() == racah_build_R(p, N).coeffs(), "R_N from factors", N);
            rec.check(lowering_from_factors(fq, N).coeffs() == racah_build_L(p, N).coeffs(), "L_N from factors", N);
            rec.check(second_order_from_factors(fq, N).coeffs() == racah_build_D(p, N).coeffs(), "D_N from factors",
                      N);
        }
        check_constants_chain(rec, fq, top);
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

/// Adjointness of R and L, and self-adjointness of D, for one family.
template <class P, class BuildR, class BuildL, class BuildD, class Weight>
void adjointness_for(Recorder& rec, ParamSampler& s, const P& p, int top, BuildR R, BuildL L, BuildD D, Weight w)
{
    for (int N = 1; N <= top; ++N) {
        const auto wN = w(p.at_level(N));
        const auto wM = w(p.at_level(N - 1));
        const auto r = R(p, N - 1);
        const auto l = L(p, N);
        const GF f1 = s.grid_function(N - 1);
        const GF f2 = s.grid_function(N);
        rec.equal(inner_product(r.apply(f1), f2, wN), inner_product(f1, l.apply(f2), wM), "<R f1, f2> = <f1, L f2>",
                  N);
        rec.check(adjoint_matrix_check(r, l, wN, wM), "W_N R = L^T W_{N-1}", N);
        const auto d = D(p, N);
        const GF g1 = s.grid_function(N);
        const GF g2 = s.grid_function(N);
        rec.equal(inner_product(d.apply(g1), g2, wN), inner_product(g1, d.apply(g2), wN), "<D f1, f2> = <f1, D f2>",
                  N);
    }
}

void suite_adjointness(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        adjointness_for(
            rec, s, p, top, [](const auto& pp, int N) { return build_R(pp, N); },
            [](const auto& pp, int N) { return build_L(pp, N); }, [](const auto& pp, int N) { return build_D(pp, N); },
            [](const auto& pp) { return weight(pp, WeightForm::scalar1); });
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        adjointness_for(
            rec, s, p, top, [](const auto& pp, int N) { return racah_build_R(pp, N); },
            [](const auto& pp, int N) { return racah_build_L(pp, N); },
            [](const auto& pp, int N) { return racah_build_D(pp, N); }, [](const auto& pp) { return weight(pp); });
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

template <class P, class BuildR, class BuildL, class BuildD, class A, class B>
void commutation_for(Recorder& rec, ParamSampler& s, const P& p, int top, BuildR R, BuildL L, BuildD D, A a, B b)
{
    for (int N = 1; N <= top; ++N) {
        const GF f = s.grid_function(N);
        const GF LR = L(p, N + 1).apply(R(p, N).apply(f));
        const GF RL = R(p, N - 1).apply(L(p, N).apply(f));
        const GF Df = D(p, N).apply(f);
        rec.equal(LR - RL, (b(p, N) - a(p, N)) * f, "L_{N+1} R_N - R_{N-1} L_N = (b_N - a_N) I", N);
        rec.equal(RL, a(p, N) * f - Df, "R_{N-1} L_N = -D_N + a_N", N);
        rec.equal(LR, b(p, N) * f - Df, "L_{N+1} R_N = -D_N + b_N", N);
        rec.equal(a(p, N + 1), b(p, N), "a_{N+1} = b_N", N);
    }
}

void suite_commutation(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        commutation_for(
            rec, s, p, top, [](const auto& pp, int N) { return build_R(pp, N); },
            [](const auto& pp, int N) { return build_L(pp, N); }, [](const auto& pp, int N) { return build_D(pp, N); },
            [](const auto& pp, int N) { return qracah_a(pp, N); },
            [](const auto& pp, int N) { return qracah_b(pp, N); });
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        commutation_for(
            rec, s, p, top, [](const auto& pp, int N) { return racah_build_R(pp, N); },
            [](const auto& pp, int N) { return racah_build_L(pp, N); },
            [](const auto& pp, int N) { return racah_build_D(pp, N); },
            [](const auto& pp, int N) { return racah_a(pp, N); }, [](const auto& pp, int N) { return racah_b(pp, N); });
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

void suite_eigenvalue(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        const LadderCoefficients<Q> lc(build_factors(p));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            const auto D = build_D(p, N);
            std::vector<GF> fam;
            std::vector<Q> lambdas;
            for (int n = 0; n <= N; ++n) {
                auto poly = qracah(pN, n);
                const Q lam = qracah_eigenvalue(p, n);
                rec.equal(D.apply(poly.values), lam * poly.values, "D_N r_n = lambda_n r_n", N, n);
                rec.check(poly.eigen_certified, "eigenvalue certificate", N, n);
                rec.equal(lc.eigenvalue(n, N), lam, "a_N - sum (b_k - a_k) = lambda_n", N, n);
                rec.equal(lc.sum_bk_ak(n, N), qracah_sum_closed(p, n, N), "sum (b_k - a_k) closed form", N, n);
                for (int m = n; m <= N; ++m) {
                    rec.equal(lc.prod_sum(m, n, N), qracah_prod_sum_closed(p, m, n, N), "prod sum closed form", N, n,
                              m);
                }
                // L_N f_{N,n} = sum (b_k - a_k) f_{N-1,n}; for n = N the seed is annihilated.
                if (N >= 1) {
                    const GF lf = build_L(p, N).apply(ladder_image(p, n, N));
                    const GF expect = n < N ? lc.sum_bk_ak(n, N) * ladder_image(p, n, N - 1) : GF::zeros(N - 1);
                    rec.equal(lf, expect, "L_N f_{N,n} = sum (b_k - a_k) f_{N-1,n}", N, n);
                }
                fam.push_back(std::move(poly.values));
                lambdas.push_back(lam);
            }
            rec.check(!is_zero(determinant(value_matrix(fam))), "completeness: det [r_n(x)] != 0", N);
            rec.check(pairwise_distinct(lambdas), "eigenvalues pairwise distinct", N);
            if (N == top) {
                Json l = Json::array();
                for (std::size_t n = 0; n < lambdas.size(); ++n) {
                    l.push_back(Json{{"n", n}, {"lambda", lambdas[n].str()}});
                }
                res.details.push_back(
                    Json{{"sample", i}, {"family", "q-racah"}, {"params", level_params(p, N)}, {"eigenvalues", l}});
            }
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        const LadderCoefficients<Q> lc(racah_factors(p));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            const auto D = racah_build_D(p, N);
            std::vector<GF> fam;
            std::vector<Q> lambdas;
            for (int n = 0; n <= N; ++n) {
                GF r = racah_values(pN, n, Route::ladder);
                const Q lam = racah_eigenvalue(p, n);
                rec.equal(D.apply(r), lam * r, "D_N r_n = n(alpha+beta+n+1) r_n", N, n);
                rec.equal(lc.eigenvalue(n, N), lam, "a_N - sum (b_k - a_k) = lambda_n", N, n);
                rec.equal(lc.sum_bk_ak(n, N), racah_sum_closed(p, n, N), "sum (b_k - a_k) closed form", N, n);
                for (int m = n; m <= N; ++m) {
                    rec.equal(lc.prod_sum(m, n, N), racah_prod_sum_closed(p, m, n, N), "prod sum closed form", N, n,
                              m);
                }
                fam.push_back(std::move(r));
                lambdas.push_back(lam);
            }
            rec.check(!is_zero(determinant(value_matrix(fam))), "completeness: det [r_n(x)] != 0", N);
            rec.check(pairwise_distinct(lambdas), "eigenvalues pairwise distinct", N);
            if (N == top) {
                Json l = Json::array();
                for (std::size_t n = 0; n < lambdas.size(); ++n) {
                    l.push_back(Json{{"n", n}, {"lambda", lambdas[n].str()}});
                }
                res.details.push_back(
                    Json{{"sample", i}, {"family", "racah"}, {"params", level_params(p, N)}, {"eigenvalues", l}});
            }
        }
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

void gram_offdiagonal(Recorder& rec, const Matrix<Q>& g, int N)
{
    for (std::size_t n = 0; n < g.size(); ++n) {
        for (std::size_t m = 0; m < g.size(); ++m) {
            if (n != m) {
                rec.equal(g[n][m], Q(0), "<r_n, r_m> = 0 for n != m", N, static_cast<int>(n),
                          static_cast<int>(m));
            }
        }
    }
}

void suite_orthogonality(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            const auto w1 = weight(pN, WeightForm::scalar1);
            rec.equal(w1.w, weight(pN, WeightForm::scalar2).w, "scalar1 weight = scalar2 weight", N);
            gram_offdiagonal(rec, gram(qracah_family(pN), w1), N);
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            gram_offdiagonal(rec, gram(racah_family(pN), weight(pN)), N);
        }
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

void suite_norms(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        const LadderCoefficients<Q> lc(build_factors(p));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            const auto w = weight(pN);
            const auto g = gram(qracah_family(pN), w);
            for (int n = 0; n <= N; ++n) {
                const Q closed = norm_closed_form(pN, n);
                rec.equal(g[n][n], closed, "<r_n, r_n> = norm closed form", N, n);
                if (auto shown = norm_displayed_quotient(pN, n)) {
                    rec.equal(*shown, closed, "norm quotient form = product form", N, n);
                }
                const auto pn = p.at_level(n);
                const GF sd = seed(p, n);
                const Q seed_norm = inner_product(sd, sd, weight(pn));
                if (N == n) {
                    rec.equal(seed_norm, norm_base_case(pn, n), "||r_n(.; n)||^2 base case", N, n);
                }
                const GF f = ladder_image(p, n, N);
                rec.equal(inner_product(f, f, w), lc.prod_sum(n, n, N) * seed_norm,
                          "||R_{N-1}...R_n seed||^2 = prod_sum ||seed||^2", N, n);
            }
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        const LadderCoefficients<Q> lc(racah_factors(p));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            const auto w = weight(pN);
            const auto g = gram(racah_family(pN), w);
            for (int n = 0; n <= N; ++n) {
                rec.equal(g[n][n], racah_norm(pN, n), "<r_n, r_n> = norm closed form", N, n);
                const auto pn = p.at_level(n);
                const GF sd = racah_seed(p, n);
                const Q seed_norm = inner_product(sd, sd, weight(pn));
                if (N == n) {
                    rec.equal(seed_norm, racah_norm_base_case(pn, n), "||r_n(.; n)||^2 base case", N, n);
                }
                const GF f = racah_raise_iterated(p, sd, N);
                rec.equal(inner_product(f, f, w), lc.prod_sum(n, n, N) * seed_norm,
                          "||R_{N-1}...R_n seed||^2 = prod_sum ||seed||^2", N, n);
            }
        }
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

void suite_6phi5(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    for (int i = 0; i < cfg.samples; ++i) {
        for (int n = 0; n <= cfg.identity_n_max; ++n) {
            auto r = s.retry([&] {
                auto rep = check_6phi5_summation(s.nonzero(), s.nonzero(), s.nonzero(), n, s.unit_interval());
                return rep;
            });
            rec.start_sample(static_cast<std::size_t>(i), "random", report_json(r)["params"]);
            rec.identity(r, "6phi5 summation", -1, n);
        }
    }
    // The specialization giving the norm of r_n(.; n).
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        for (int n = 0; n <= top; ++n) {
            const Q qn = p.qp(-n);
            rec.identity(check_6phi5_summation(p.delta() * qn, qn / p.beta(), p.delta() / p.alpha() * qn, n, p.q()),
                         "6phi5 at the norm specialization", n, n);
        }
    }
    res.samples = static_cast<std::size_t>(cfg.samples) + qs.size();
    res.rejections = s.rejections();
}

void suite_watson(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    const Q scale = cfg.corrupt == "watson" ? Q(2) : Q(1);
    for (int i = 0; i < cfg.samples; ++i) {
        for (int n = 0; n <= cfg.identity_n_max; ++n) {
            auto r = s.retry([&] {
                return check_watson(s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero(), n,
                                    s.unit_interval(), scale);
            });
            rec.start_sample(static_cast<std::size_t>(i), "random", report_json(r)["params"]);
            rec.identity(r, "watson 8phi7 -> 4phi3", -1, n);
        }
    }
    // The q-Racah specialization: Watson turns the 8phi7 form into the 4phi3 form.
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            rec.start_sample(i, "q-racah", level_params(p, N));
            for (int n = 0; n <= N; ++n) {
                const GF r = qracah_values(pN, n, Route::ladder);
                const Q qn = p.qp(-n);
                for (int x = 0; x <= N - n; ++x) {
                    auto rep = check_watson(p.delta() * qn, qn / p.beta(), p.delta() / p.alpha() * qn,
                                            p.delta() * p.qp(x - N), p.qp(-x), n, p.q(), scale);
                    rec.identity(rep, "watson at the q-Racah specialization", N, n, x);
                    rec.equal(eval_8phi7_qracah(pN, n, x), r[static_cast<std::size_t>(x)], "8phi7 form = r_n(x)", N,
                              n, x);
                }
            }
        }
    }
    res.samples = static_cast<std::size_t>(cfg.samples) + qs.size();
    res.rejections = s.rejections();
}

void suite_dougall(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    for (int i = 0; i < cfg.samples; ++i) {
        for (int n = 0; n <= cfg.identity_n_max; ++n) {
            auto r = s.retry([&] { return check_dougall_5F4(s.nonzero(), s.nonzero(), s.nonzero(), n); });
            rec.start_sample(static_cast<std::size_t>(i), "random", report_json(r)["params"]);
            rec.identity(r, "dougall 5F4", -1, n);
        }
    }
    // Racah norm specialization a = delta - n, c = -(beta + n), d = -(alpha - delta + n).
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        const Q& al = p.alpha();
        const Q& be = p.beta();
        const Q& de = p.delta();
        for (int n = 0; n <= top; ++n) {
            const auto pn = p.at_level(n);
            auto rep = check_dougall_5F4(de - Q(n), -(be + Q(n)), -(al - de + Q(n)), n);
            rec.identity(rep, "dougall at the Racah norm specialization", n, n);
            const Q pre = pochhammer(be + Q(1), n) * pochhammer(al - de + Q(1), n) /
                          (factorial<Q>(n) * pochhammer(-de, n));
            const GF sd = racah_seed(p, n);
            rec.equal(inner_product(sd, sd, weight(pn)), pre * rep.lhs, "||r_n(.; n)||^2 = prefactor * 5F4", n, n);
            rec.equal(pre * rep.rhs, racah_norm_base_case(pn, n), "prefactor * Dougall product = base-case norm", n, n);
        }
    }
    res.samples = static_cast<std::size_t>(cfg.samples) + rs.size();
    res.rejections = s.rejections();
}

void suite_whipple(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    for (int i = 0; i < cfg.samples; ++i) {
        for (int n = 0; n <= cfg.identity_n_max; ++n) {
            auto r = s.retry([&] {
                return check_whipple_7F6(s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero(), n);
            });
            rec.start_sample(static_cast<std::size_t>(i), "random", report_json(r)["params"]);
            rec.identity(r, "whipple 7F6 -> 4F3", -1, n);
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        const Q& al = p.alpha();
        const Q& be = p.beta();
        const Q& de = p.delta();
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            rec.start_sample(i, "racah", level_params(p, N));
            for (int n = 0; n <= N; ++n) {
                const GF r = racah_values(pN, n, Route::ladder);
                for (int x = 0; x <= N - n; ++x) {
                    auto rep = check_whipple_7F6(de - Q(n), -be - Q(n), -al + de - Q(n), Q(-x), Q(x - N) + de, n);
                    rec.identity(rep, "whipple at the Racah specialization", N, n, x);
                    rec.equal(eval_7F6_racah(pN, n, x), r[static_cast<std::size_t>(x)], "7F6 form = r_n(x)", N, n, x);
                }
            }
        }
    }
    res.samples = static_cast<std::size_t>(cfg.samples) + rs.size();
    res.rejections = s.rejections();
}

void suite_first_order(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            for (int n = 0; n <= N; ++n) {
                auto rep = first_order_relations_check(p, n, N);
                for (const auto& row : rep.raising) {
                    rec.check(row.holds, "first-order relation, level N+1", N, n, row.x, row.lhs.str(), row.rhs.str());
                }
                for (const auto& row : rep.lowering) {
                    rec.check(row.holds, "first-order relation, level N-1", N, n, row.x, row.lhs.str(), row.rhs.str());
                }
            }
        }
    }
    res.samples = qs.size();
    res.rejections = s.rejections();
}

void suite_mu_poly(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            for (int n = 0; n <= N; ++n) {
                const GF r = qracah_values(pN, n, Route::ladder);
                auto chk = mu_polynomial_check(pN, n, r);
                rec.equal(chk.predicted, r, "degree-n interpolation in mu(x) reproduces r_n", N, n);
            }
        }
    }
    res.samples = qs.size();
    res.rejections = s.rejections();
}

void suite_limit(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    const std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    const int top = std::min(cfg.n_max, 4);
    for (int i = 0; i < std::max(cfg.samples, 3); ++i) {
        const auto p = s.racah(top);
        rec.start_sample(static_cast<std::size_t>(i), "racah", params_json(p));
        const auto pf = RacahParams<double>::create(p.alpha().to_double(), p.beta().to_double(),
                                                    p.delta().to_double(), top);
        const auto rep = q_limit_compare(pf, eps);
        Json rows = Json::array();
        for (const auto& row : rep.rows) {
            rec.check(row.finite, "finite error", top, -1, -1, field_traits<double>::to_string(row.epsilon));
            rec.check(row.per_n.at(0) == 0.0, "n = 0 error is exactly 0", top, 0, -1,
                      field_traits<double>::to_string(row.per_n.at(0)), "0");
            Json per_n = Json::array();
            for (double e : row.per_n) {
                per_n.push_back(e);
            }
            rows.push_back(Json{{"epsilon", row.epsilon}, {"max_abs_error", row.max_abs_error}, {"per_n", per_n}});
        }
        rec.check(rep.decreasing(), "error strictly decreases as epsilon shrinks", top, -1, -1);
        Json ratios = Json::array();
        for (double r : rep.ratios()) {
            ratios.push_back(r);
        }
        Json orders = Json::array();
        for (double o : rep.observed_orders()) {
            orders.push_back(o);
        }
        res.details.push_back(Json{{"sample", i},
                                   {"correspondence", rep.correspondence},
                                   {"params", params_json(p)},
                                   {"rows", rows},
                                   {"ratios", ratios},
                                   {"observed_orders", orders}});
    }
    res.samples = static_cast<std::size_t>(std::max(cfg.samples, 3));
    res.rejections = s.rejections();
}

void suite_routes(const VerifyConfig& cfg, SuiteResult& res)
{
    ParamSampler s(cfg.seed, res.suite);
    Recorder rec(res);
    auto qs = qracah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& [p, top] = qs[i];
        rec.start_sample(i, "q-racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            for (int n = 0; n <= N; ++n) {
                const GF lad = qracah_values(pN, n, Route::ladder);
                rec.equal(lad, qracah_values(pN, n, Route::closed_form), "ladder = closed form", N, n);
                rec.equal(lad, qracah_values(pN, n, Route::hypergeometric), "ladder = 4phi3", N, n);
                rec.equal(lad[0], Q(1), "r_n(0) = 1", N, n, 0);
                const GF sd = seed(p, n);
                if (n >= 1) {
                    rec.check(build_L(p, n).apply(sd).is_zero(), "L_n seed = 0", n, n);
                }
                const auto chain = raise_chain(p, sd, N);
                rec.equal(chain.iterated, chain.closed, "iterated raising = closed raising sum", N, n);
                const GF f = s.grid_function(n);
                const auto gen = raise_chain(p, f, N);
                rec.equal(gen.iterated, gen.closed, "iterated raising = closed raising sum (random f)", N, n);
            }
        }
    }
    auto rs = racah_samples(cfg, s, cfg.samples);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [p, top] = rs[i];
        rec.start_sample(i, "racah", level_params(p, top));
        for (int N = 0; N <= top; ++N) {
            const auto pN = p.at_level(N);
            for (int n = 0; n <= N; ++n) {
                const GF lad = racah_values(pN, n, Route::ladder);
                rec.equal(lad, racah_values(pN, n, Route::closed_form), "ladder = closed form", N, n);
                rec.equal(lad, racah_values(pN, n, Route::hypergeometric), "ladder = 4F3", N, n);
                rec.equal(lad[0], Q(1), "r_n(0) = 1", N, n, 0);
                const GF sd = racah_seed(p, n);
                if (n >= 1) {
                    rec.check(racah_build_L(p, n).apply(sd).is_zero(), "L_n seed = 0", n, n);
                }
                const GF f = s.grid_function(n);
                const auto gen = racah_raise_chain(p, f, N);
                rec.equal(gen.iterated, gen.closed, "iterated raising = closed raising sum (random f)", N, n);
            }
        }
    }
    res.samples = qs.size() + rs.size();
    res.rejections = s.rejections();
}

using SuiteFn = std::function<void(const VerifyConfig&, SuiteResult&)>;

const std::map<std::string, SuiteFn>& registry()
{
    static const std::map<std::string, SuiteFn> suites = {
        {"6phi5", suite_6phi5},
        {"adjointness", suite_adjointness},
        {"commutation", suite_commutation},
        {"dougall", suite_dougall},
        {"eigenvalue", suite_eigenvalue},
        {"factorization-conditions", suite_factorization},
        {"first-order", suite_first_order},
        {"limit", suite_limit},
        {"mu-poly", suite_mu_poly},
        {"norms", suite_norms},
        {"orthogonality", suite_orthogonality},
        {"routes", suite_routes},
        {"watson", suite_watson},
        {"whipple", suite_whipple},
    };
    return suites;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg)
{
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    SuiteResult res;
    res.suite = name;
    it->second(cfg, res);
    return res;
}

std::vector<SuiteResult> run_verify(const VerifyConfig& cfg)
{
    std::vector<std::string> selected;
    const bool all = cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), "all") != cfg.suites.end();
    if (all) {
        selected = suite_names();
    } else {
        for (const auto& s : cfg.suites) {
            if (!registry().contains(s)) {
                throw std::invalid_argument("unknown suite '" + s + "'");
            }
            selected.push_back(s);
        }
        std::sort(selected.begin(), selected.end());
        selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    }
    std::vector<SuiteResult> out;
    for (const auto& s : selected) {
        out.push_back(run_suite(s, cfg));
    }
    return out;
}

Json to_json(const FailureRecord& f)
{
    Json j{{"suite", f.suite}, {"sample", f.sample}, {"family", f.family}, {"check", f.check}, {"params", f.params}};
    if (f.N >= 0) {
        j["N"] = f.N;
    }
    if (f.n >= 0) {
        j["n"] = f.n;
    }
    if (f.x >= 0) {
        j["x"] = f.x;
    }
    j["lhs"] = f.lhs;
    j["rhs"] = f.rhs;
    return j;
}

Json to_json(const SuiteResult& r)
{
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        failures.push_back(to_json(f));
    }
    Json j{{"suite", r.suite},
           {"passed", r.passed()},
           {"samples", r.samples},
           {"checks", r.checks},
           {"rejections", r.rejections},
           {"failures", std::move(failures)}};
    if (!r.details.empty()) {
        j["details"] = r.details;
    }
    return j;
}

Json verify_report_json(const std::vector<SuiteResult>& results, const VerifyConfig& cfg)
{
    Json suites = Json::array();
    bool ok = true;
    for (const auto& r : results) {
        suites.push_back(to_json(r));
        ok = ok && r.passed();
    }
    Json config{{"samples", cfg.samples}, {"seed", cfg.seed}, {"N_max", cfg.n_max}};
    if (cfg.fixed) {
        config["params"] = params_json(*cfg.fixed);
    }
    return Json{{"backend", "exact"}, {"config", std::move(config)}, {"passed", ok}, {"suites", std::move(suites)}};
}

} // namespace qladder
