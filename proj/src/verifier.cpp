#include "qdual/verifier.hpp"

#include "qdual/parallel.hpp"
#include "qdual/shifts.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace qdual {

namespace {

using Clock = std::chrono::steady_clock;
using OJson = nlohmann::ordered_json;

std::int64_t elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Generic assignment with D pinned to 1. Every bracket factor t/(t-u) is
// invariant under a common scaling of (B, C, D), so an identity proved at
// D = 1 holds generically; this keeps deterministic grids two variables
// smaller.
Assignment generic_reduced(int N) {
    Assignment a;
    a.N = N;
    a.D = Param::unit();
    return a;
}

void fill_verdict(CaseResult& cr, const EqualityVerdict& v) {
    cr.verdict = v.verdict;
    cr.witness.insert(v.witness.begin(), v.witness.end());
    cr.proved = v.mode == EqMode::Grid && v.verdict == Verdict::Equal;
}

// Duality instance at random points; a mismatch is definitive.
template <class T>
CaseResult duality_at_points(const Word6& w, int N, const VerifyConfig& cfg, std::uint64_t case_seed) {
    CaseResult cr;
    cr.word = word6_str(w);
    cr.dual = word6_str(tau(w));
    cr.n = N;
    Assignment asg = Assignment::generic(N);
    std::mt19937_64 rng(case_seed);
    int done = 0;
    int attempts = 0;
    while (done < cfg.trials) {
        if (++attempts > 100 * cfg.trials + 100) throw QdualError("could not find pole-free points");
        PointDomain<T> dom;
        dom.prime = cfg.prime;
        std::map<std::string, std::string> pt_desc;
        for (Var v : {Var::q, Var::B, Var::C, Var::D}) {
            T value;
            if constexpr (std::is_same_v<T, Fp>) {
                std::uniform_int_distribution<std::uint64_t> dist(2, cfg.prime - 2);
                value = Fp(dist(rng), cfg.prime);
                pt_desc[var_name(v)] = std::to_string(value.v);
            } else {
                std::uniform_int_distribution<long> dist(2, 1 << 16);
                value = Rat(dist(rng));
                pt_desc[var_name(v)] = rat_str(value);
            }
            dom.pt[static_cast<int>(v)] = value;
        }
        try {
            T lhs = lq(w, asg, dom);
            T rhs = lq(tau(w), asg, dom);
            ++done;
            if (!(lhs == rhs)) {
                cr.verdict = Verdict::NotEqual;
                cr.witness = pt_desc;
                return cr;
            }
        } catch (const PoleAtPoint&) {
            continue;  // resample
        }
    }
    cr.verdict = Verdict::ProbablyEqual;
    return cr;
}

CaseResult duality_case(const Word6& w, int N, const VerifyConfig& cfg, std::uint64_t case_seed, int eq_threads) {
    auto t0 = Clock::now();
    CaseResult cr;
    if (cfg.mode == EqMode::Grid) {
        cr.word = word6_str(w);
        cr.dual = word6_str(tau(w));
        cr.n = N;
        ExprDomain dom;
        Assignment asg = generic_reduced(N);
        ExprPtr lhs = dom.to_expr(lq(w, asg, dom));
        ExprPtr rhs = dom.to_expr(lq(tau(w), asg, dom));
        EqOptions opt = cfg.eq(case_seed);
        opt.threads = eq_threads;
        try {
            fill_verdict(cr, values_equal(lhs, rhs, opt));
        } catch (const GridTooLarge&) {
            opt.mode = EqMode::RandomExact;
            fill_verdict(cr, values_equal(lhs, rhs, opt));
            cr.note = "grid exceeded budget; fell back to random-exact";
        }
    } else if (cfg.mode == EqMode::ModP) {
        cr = duality_at_points<Fp>(w, N, cfg, case_seed);
    } else {
        cr = duality_at_points<Rat>(w, N, cfg, case_seed);
    }
    cr.conjectural = true;
    cr.ms = elapsed_ms(t0);
    return cr;
}

std::vector<Word6> admissible_upto(int k_max) {
    std::vector<Word6> out;
    for (int k = 0; k <= k_max; ++k) {
        auto words = enumerate_admissible(k);
        out.insert(out.end(), words.begin(), words.end());
    }
    return out;
}

// one representative per {w, tau(w)}; tau-fixed words stay
std::vector<Word6> dedup_tau_pairs(const std::vector<Word6>& words) {
    std::vector<Word6> out;
    for (const Word6& w : words) {
        Word6 t = tau(w);
        if (!(t < w)) out.push_back(w);
    }
    return out;
}

void run_cases(std::vector<CaseResult>& out, std::size_t count, int threads,
               const std::function<CaseResult(std::size_t)>& fn) {
    out.resize(count);
    parallel_for_indexed(count, threads, [&](std::size_t i) { out[i] = fn(i); });
}

CaseResult equality_case(const std::string& label, const std::string& dual_label, int n,
                         const std::function<EqualityVerdict()>& run) {
    auto t0 = Clock::now();
    CaseResult cr;
    cr.word = label;
    cr.dual = dual_label;
    cr.n = n;
    fill_verdict(cr, run());
    cr.ms = elapsed_ms(t0);
    return cr;
}

CaseResult series_case(const std::string& label, const std::string& dual_label, int n,
                       const std::function<bool()>& run) {
    auto t0 = Clock::now();
    CaseResult cr;
    cr.word = label;
    cr.dual = dual_label;
    cr.n = n;
    cr.verdict = run() ? Verdict::Equal : Verdict::NotEqual;
    cr.proved = cr.verdict == Verdict::Equal;  // exact coefficient comparison
    cr.ms = elapsed_ms(t0);
    return cr;
}

}  // namespace

// ---------------------------------------------------------------------------

int Report::count(Verdict v) const {
    int n = 0;
    for (const CaseResult& c : cases)
        if (c.verdict == v) ++n;
    return n;
}

bool Report::clean() const { return count(Verdict::NotEqual) == 0; }

bool Report::has_proved_failure() const {
    for (const CaseResult& c : cases)
        if (c.verdict == Verdict::NotEqual && !c.conjectural) return true;
    return false;
}

bool Report::has_conjecture_failure() const {
    for (const CaseResult& c : cases)
        if (c.verdict == Verdict::NotEqual && c.conjectural) return true;
    return false;
}

std::string Report::to_json() const {
    OJson j;
    j["suite"] = suite;
    j["config"] = OJson{{"mode", eq_mode_name(config.mode)},
                        {"seed", config.seed},
                        {"prime", config.prime},
                        {"budgets", OJson{{"kmax", config.k_max},
                                          {"nmax", config.n_max},
                                          {"grid_budget", config.grid_budget},
                                          {"trials", config.trials},
                                          {"mq", config.mq},
                                          {"mz", config.mz},
                                          {"threads", config.threads}}}};
    OJson arr = OJson::array();
    for (const CaseResult& c : cases) {
        OJson jc;
        jc["word"] = c.word;
        jc["dual"] = c.dual;
        jc["n"] = c.n;
        jc["verdict"] = verdict_name(c.verdict);
        if (c.verdict == Verdict::NotEqual && !c.witness.empty()) {
            OJson w;
            for (const auto& [k, v] : c.witness) w[k] = v;
            jc["witness"] = w;
        } else if (c.verdict == Verdict::Skipped) {
            jc["witness"] = OJson{{"reason", c.note}};
        }
        jc["ms"] = c.ms;
        arr.push_back(jc);
    }
    j["cases"] = arr;
    j["summary"] = OJson{{"total", static_cast<int>(cases.size())},
                         {"equal", count(Verdict::Equal)},
                         {"probable", count(Verdict::ProbablyEqual)},
                         {"failed", count(Verdict::NotEqual)}};
    return j.dump(2);
}

// ---------------------------------------------------------------------------

Report verify_main(const Word6& w, int N, const VerifyConfig& cfg) {
    Report r;
    r.suite = "verify";
    r.config = cfg;
    r.cases.push_back(duality_case(w, N, cfg, cfg.seed, cfg.threads));
    return r;
}

Report sweep_main(const VerifyConfig& cfg) {
    Report r;
    r.suite = "main";
    r.config = cfg;
    std::vector<Word6> words = dedup_tau_pairs(admissible_upto(cfg.k_max));
    std::vector<std::pair<Word6, int>> jobs;
    for (const Word6& w : words)
        for (int N = 0; N <= cfg.n_max; ++N) jobs.emplace_back(w, N);
    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) {
        return duality_case(jobs[i].first, jobs[i].second, cfg, mix_seed(cfg.seed, i), 1);
    });
    return r;
}

Report suite_41(const VerifyConfig& cfg, bool full_vars) {
    Report r;
    r.suite = "s41";
    r.config = cfg;
    std::vector<std::pair<Word6, int>> jobs;
    for (const Word6& w : admissible_upto(cfg.k_max))
        for (int N = 0; N <= cfg.n_max; ++N) jobs.emplace_back(w, N);
    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) {
        const auto& [w, N] = jobs[i];
        Assignment asg = Assignment::ad_bc_relation(N, m_of(w));
        if (!full_vars) asg.D = Param::unit();
        return equality_case(word6_str(w), word6_str(tau(w)), N, [&] {
            ExprDomain dom;
            ExprPtr lhs = dom.to_expr(lq(w, asg, dom));
            ExprPtr rhs = dom.to_expr(lq(tau(w), asg, dom));
            EqOptions opt = cfg.eq(mix_seed(cfg.seed, i));
            opt.threads = 1;
            return values_equal(lhs, rhs, opt);
        });
    });
    return r;
}

Report suite_42(const VerifyConfig& cfg, int k_max, int l_max, int n_max, int word_len_max) {
    Report r;
    r.suite = "s42";
    r.config = cfg;
    std::vector<std::function<CaseResult()>> jobs;

    // parity of f_{k,l}(N) under q -> 1/q, sign (-1)^{k+l}; proved
    for (int k = 1; k <= k_max + l_max - 1; ++k) {
        for (int l = 1; k + l <= k_max + l_max; ++l) {
            for (int N = 0; N <= n_max; ++N) {
                std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(1000 + k * 100 + l * 10 + N));
                jobs.push_back([=, &cfg] {
                    return series_case("f(" + std::to_string(k) + "," + std::to_string(l) + ")", "parity", N, [&] {
                        ExprDomain dom;
                        ExprPtr f = dom.to_expr(f_kl(k, l, N, dom));
                        EqOptions opt = cfg.eq(seed);
                        opt.threads = 1;
                        return parity_class(f, k + l, opt);
                    });
                });
            }
        }
    }

    // Z-duality sweep over h0 words; conjectural
    for (int len = 0; len <= word_len_max; ++len) {
        for (const Word3& w : enumerate_h0(len)) {
            for (int N = 0; N <= 3; ++N) {
                std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(2000 + len * 1000 + N));
                jobs.push_back([=, &cfg] {
                    int k = static_cast<int>(w.size());
                    CaseResult cr = equality_case(word3_str(w), "Z-duality", N, [&] {
                        ExprDomain dom;
                        ExprPtr lhs = dom.to_expr(z_functional(w, N, true, dom));
                        ExprPtr rhs =
                            dom.to_expr(dom.scale(z_functional(w, N, false, dom), k % 2 ? Rat(-1) : Rat(1)));
                        EqOptions opt = cfg.eq(seed);
                        opt.threads = 1;
                        return values_equal(lhs, rhs, opt);
                    });
                    cr.conjectural = true;
                    return cr;
                });
            }
        }
    }

    // the three q-difference steps for g; proved. step: which argument of
    // (m, n, N) moves when the tail parameter picks up a factor of q.
    auto g_case = [&cfg](char step, int k, int l, int m, int n, int N) {
        std::uint64_t seed =
            mix_seed(cfg.seed, static_cast<std::uint64_t>(30000 + step * 10000 + k * 1000 + l * 100 + m * 10 + n));
        return [=, &cfg] {
            std::ostringstream label;
            label << "g-step-" << step << " k=" << k << " l=" << l << " m=" << m << " n=" << n;
            return equality_case(label.str(), "q-difference", N, [&] {
                ExprDomain dom;
                FracVal lhs, rhs;
                if (step == 'n') {
                    lhs = dom.sub(g_klmn(k, l, m, n, N, dom), g_klmn(k, l, m, n + 1, N - 1, dom));
                    rhs = dom.mul(r_helper(-m - N, dom), g_klmn(k - 1, l, m, n, N, dom));
                } else if (step == 'b') {
                    lhs = dom.sub(g_klmn(k, l, m, n, N, dom), g_klmn(k, l, m + 1, n + 1, N - 1, dom));
                    rhs = dom.add(dom.mul(r_helper(-m - n - N, dom), g_klmn(k - 1, l, m, n, N, dom)),
                                  dom.mul(r_helper(m + n + N, dom), g_klmn(k, l - 1, m, n, N, dom)));
                } else {
                    lhs = dom.sub(g_klmn(k, l, m, n, N, dom), g_klmn(k, l, m + 1, n, N - 1, dom));
                    rhs = dom.mul(r_helper(n + N, dom), g_klmn(k, l - 1, m, n, N, dom));
                }
                EqOptions opt = cfg.eq(seed);
                opt.threads = 1;
                return values_equal(dom.to_expr(lhs), dom.to_expr(rhs), opt);
            });
        };
    };
    for (int N = 1; N <= 3; ++N) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= 3; ++n) {
                for (int k = 1; k <= 3; ++k)
                    for (int l = 0; l <= 3; ++l) jobs.push_back(g_case('n', k, l, m, n, N));
                for (int k = 1; k <= 3; ++k)
                    for (int l = 1; l <= 3; ++l) jobs.push_back(g_case('b', k, l, m, n, N));
                for (int k = 0; k <= 3; ++k)
                    for (int l = 1; l <= 3; ++l) jobs.push_back(g_case('m', k, l, m, n, N));
            }
        }
    }

    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) { return jobs[i](); });
    return r;
}

Report suite_43(const VerifyConfig& cfg, int mq_order) {
    Report r;
    r.suite = "s43";
    r.config = cfg;
    std::vector<std::function<CaseResult()>> jobs;

    for (const Word6& w : dedup_tau_pairs(admissible_upto(cfg.k_max))) {
        jobs.push_back([=] {
            return series_case(word6_str(w), word6_str(tau(w)), 0,
                               [&] { return f_series(w, mq_order) == f_series(tau(w), mq_order); });
        });
    }
    // erase one AD letter: f(w1 AD w2) = f(w1 AB w2) + f(w1 BD w2) + f(w1 w2)
    for (const Word6& w : admissible_upto(cfg.k_max)) {
        for (std::size_t p = 0; p < w.size(); ++p) {
            if (w[p] != Letter6::AD) continue;
            jobs.push_back([=] {
                return series_case(word6_str(w), "erase-AD@" + std::to_string(p + 1), 0, [&] {
                    auto with = [&](std::initializer_list<Letter6> repl) {
                        Word6 v(w.begin(), w.begin() + static_cast<long>(p));
                        v.insert(v.end(), repl.begin(), repl.end());
                        v.insert(v.end(), w.begin() + static_cast<long>(p) + 1, w.end());
                        return v;
                    };
                    BiSeries rhs = f_series(with({Letter6::AB}), mq_order);
                    rhs += f_series(with({Letter6::BD}), mq_order);
                    rhs += f_series(with({}), mq_order);
                    return f_series(w, mq_order) == rhs;
                });
            });
        }
    }
    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) { return jobs[i](); });
    return r;
}

Report suite_44(const VerifyConfig& cfg) {
    Report r;
    r.suite = "s44";
    r.config = cfg;
    std::vector<std::function<CaseResult()>> jobs;
    std::uint64_t tag = 0;

    auto reduced_eq = [&cfg](ExprPtr lhs, ExprPtr rhs, std::uint64_t seed) {
        // both sides are scaling-invariant in (B, C, D); decide at D = 1
        EqOptions opt = cfg.eq(seed);
        opt.threads = 1;
        return values_equal(subst_var_one(lhs, Var::D), subst_var_one(rhs, Var::D), opt);
    };

    for (const Word6& w : dedup_tau_pairs(admissible_upto(cfg.k_max))) {
        std::uint64_t seed = mix_seed(cfg.seed, 50000 + tag++);
        jobs.push_back([=, &cfg] {
            return equality_case(word6_str(w), word6_str(tau(w)), 0, [&] {
                ExprDomain dom;
                Assignment asg = generic_reduced(0);  // N = 0, so A = D
                EqOptions opt = cfg.eq(seed);
                opt.threads = 1;
                return values_equal(dom.to_expr(lq(w, asg, dom)), dom.to_expr(lq(tau(w), asg, dom)), opt);
            });
        });
    }
    for (const Word6& w : admissible_upto(cfg.k_max)) {
        if (w.empty()) continue;
        const int k = static_cast<int>(w.size());
        std::uint64_t seed_omega = mix_seed(cfg.seed, 60000 + tag++);
        jobs.push_back([=] {
            return equality_case(word6_str(w), "omega-product", 0, [&] {
                ExprDomain dom;
                Assignment asg;
                asg.N = 0;  // A = D, all parameters symbolic
                return reduced_eq(dom.to_expr(lq_AeqD_product(w, dom)), dom.to_expr(lq(w, asg, dom)), seed_omega);
            });
        });
        for (int j = 1; j <= k; ++j) {
            std::uint64_t seed_j = mix_seed(cfg.seed, 70000 + tag++);
            jobs.push_back([=] {
                return equality_case(word6_str(w), "phi-ratio j=" + std::to_string(j), 0, [&] {
                    ExprDomain dom;
                    Word6 tw = tau(w);
                    FracVal lhs = dom.mul(phi(w, j, dom), omega_factor(tw, k + 1 - j, dom));
                    FracVal rhs = dom.mul(phi(w, j - 1, dom), omega_factor(w, j, dom));
                    return reduced_eq(dom.to_expr(lhs), dom.to_expr(rhs), seed_j);
                });
            });
        }
        std::uint64_t seed_t = mix_seed(cfg.seed, 80000 + tag++);
        jobs.push_back([=] {
            return equality_case(word6_str(w), "phi-endpoints", 0, [&] {
                ExprDomain dom;
                EqualityVerdict v0 = reduced_eq(dom.to_expr(phi(w, 0, dom)), ex_const(Rat(1)), seed_t);
                if (v0.verdict != Verdict::Equal) return v0;
                return reduced_eq(dom.to_expr(phi(w, k, dom)), ex_const(Rat(1)), seed_t);
            });
        });
    }
    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) { return jobs[i](); });
    return r;
}

Report suite_section3(const VerifyConfig& cfg, int aug_weight_max, int thm23_weight_max, int zeta_weight_max) {
    Report r;
    r.suite = "section3";
    r.config = cfg;
    std::vector<std::function<CaseResult()>> jobs;
    const int mq = cfg.mq, mz = cfg.mz;

    std::vector<AugIndex> indices;
    for (int wgt = 0; wgt <= aug_weight_max; ++wgt) {
        auto batch = enumerate_aug(wgt);
        indices.insert(indices.end(), batch.begin(), batch.end());
    }

    // one-variable duality, each unordered {k, dual} once
    for (const AugIndex& k : indices) {
        AugIndex d = dual_index(k);
        if (aug_str(d) < aug_str(k)) continue;
        jobs.push_back([=] {
            return series_case(aug_str(k), aug_str(d), aug_weight(k),
                               [&] { return li1_aug(k, mq, mz) == li1_aug(d, mq, mz); });
        });
    }
    // bridge through L_q(theta(w(k)))
    for (const AugIndex& k : indices) {
        jobs.push_back([=] {
            return series_case(aug_str(k), "theta-bridge", aug_weight(k),
                               [&] { return lq_prop34(k, mq, mz) == li1_aug(k, mq, mz); });
        });
    }
    // z = 0 and z = q specializations for all-mu-1 indices
    for (const AugIndex& k : indices) {
        bool all_one = !k.empty();
        for (const AugEntry& e : k) all_one = all_one && e.mu == 1;
        if (!all_one) continue;
        Index plain;
        for (const AugEntry& e : k) plain.push_back(e.k);
        jobs.push_back([=] {
            return series_case(aug_str(k), "z=0 gives BZ", aug_weight(k),
                               [&] { return li1_aug(k, mq, 0) == zeta_bz(plain, mq); });
        });
        jobs.push_back([=] {
            return series_case(aug_str(k), "z=q gives SZ", aug_weight(k), [&] {
                BiSeries big = li1_aug(k, mq, mq);
                BiSeries folded(mq, 0);
                for (int i = 0; i <= mq; ++i)
                    for (int j = 0; i + j <= mq; ++j) folded.at(i + j, 0) += big.at(i, j);
                SZIndex shifted;
                for (int kk : plain) shifted.push_back(kk - 1);
                return folded == zeta_sz(shifted, mq);
            });
        });
    }

    // series expression for the polylogs at rational arguments
    {
        const std::vector<Rat> pool = {Rat(1) / 2, Rat(1) / 3, Rat(2)};
        std::vector<std::pair<Index, std::vector<Rat>>> combos;
        std::function<void(int, Index&, std::vector<Rat>&)> emit = [&](int used, Index& ks, std::vector<Rat>& zs) {
            if (!ks.empty()) {
                Rat suffix(1);
                bool ok = true;
                for (std::size_t i = zs.size(); i-- > 0;) {
                    suffix *= zs[i];
                    if (suffix == 1) ok = false;
                }
                if (ok) combos.emplace_back(ks, zs);
            }
            for (int next = 1; used + next <= thm23_weight_max; ++next) {
                for (const Rat& c : pool) {
                    ks.push_back(next);
                    zs.push_back(c);
                    emit(used + next, ks, zs);
                    ks.pop_back();
                    zs.pop_back();
                }
            }
        };
        Index ks;
        std::vector<Rat> zs;
        emit(0, ks, zs);
        for (const auto& [cks, czs] : combos) {
            jobs.push_back([=] {
                std::ostringstream label;
                label << "Li(";
                for (std::size_t i = 0; i < cks.size(); ++i) label << (i ? "," : "") << cks[i];
                label << ";";
                for (std::size_t i = 0; i < czs.size(); ++i) label << (i ? "," : "") << rat_str(czs[i]);
                label << ")";
                return series_case(label.str(), "q-integral expression", 0, [&] {
                    const int d = static_cast<int>(cks.size());
                    std::vector<Mono> args;
                    for (const Rat& c : czs) args.push_back(Mono::constant(c));
                    BiSeries lhs = li_q(cks, args, 15, 0);
                    std::vector<FactorSpec> fs;
                    for (int i = 0; i < d; ++i) {
                        Rat prod(1);
                        for (int j = i; j < d; ++j) prod *= czs[static_cast<std::size_t>(j)];
                        fs.push_back(FactorSpec::single(Param::finite(Mono::constant(Rat(1) / prod))));
                        for (int rep = 1; rep < cks[static_cast<std::size_t>(i)]; ++rep)
                            fs.push_back(FactorSpec::single(Param::zero()));
                    }
                    BiSeries rhs = iq_zero_series(fs, 15, 0);
                    if (d % 2) rhs = -rhs;
                    return lhs == rhs;
                });
            });
        }
    }

    // BZ and SZ dualities over (k_j, l_j) blocks
    {
        std::vector<std::vector<std::pair<int, int>>> blocks;
        std::vector<std::pair<int, int>> cur;
        std::function<void(int)> rec = [&](int used) {
            if (!cur.empty()) blocks.push_back(cur);
            for (int k = 1; used + k <= zeta_weight_max; ++k) {
                for (int l = 1; used + k + l <= zeta_weight_max; ++l) {
                    cur.emplace_back(k, l);
                    rec(used + k + l);
                    cur.pop_back();
                }
            }
        };
        rec(0);
        for (const auto& blk : blocks) {
            std::ostringstream label;
            for (const auto& [k, l] : blk) label << "(" << k << "," << l << ")";
            std::string label_str = label.str();
            jobs.push_back([=] {
                return series_case(label_str, "BZ-duality", 0, [&] {
                    Index lhs, rhs;
                    for (const auto& [k, l] : blk) {
                        for (int i = 1; i < l; ++i) lhs.push_back(1);
                        lhs.push_back(k + 1);
                    }
                    for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
                        for (int i = 1; i < it->first; ++i) rhs.push_back(1);
                        rhs.push_back(it->second + 1);
                    }
                    return zeta_bz(lhs, 30) == zeta_bz(rhs, 30);
                });
            });
            jobs.push_back([=] {
                return series_case(label_str, "SZ-duality", 0, [&] {
                    SZIndex lhs, rhs;
                    for (const auto& [k, l] : blk) {
                        for (int i = 1; i < l; ++i) lhs.push_back(0);
                        lhs.push_back(k);
                    }
                    for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
                        for (int i = 1; i < it->first; ++i) rhs.push_back(0);
                        rhs.push_back(it->second);
                    }
                    return zeta_sz(lhs, 30) == zeta_sz(rhs, 30);
                });
            });
        }
    }

    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) { return jobs[i](); });
    return r;
}

Report suite_bridges(const VerifyConfig& cfg, int k_max, int n_max) {
    Report r;
    r.suite = "bridges";
    r.config = cfg;
    std::vector<std::function<CaseResult()>> jobs;
    std::uint64_t tag = 0;

    for (const Word6& w : admissible_upto(k_max)) {
        const int k = static_cast<int>(w.size());
        bool has_bc = false;
        for (Letter6 l : w) has_bc = has_bc || l == Letter6::BC;
        for (int N = 0; N <= n_max; ++N) {
            std::uint64_t seed = mix_seed(cfg.seed, 90000 + tag++);
            jobs.push_back([=, &cfg] {
                return equality_case(word6_str(w), has_bc ? "vanishes (contains BC)" : "Z-bridge", N, [&] {
                    ExprDomain dom;
                    Assignment asg = Assignment::bc_infinity(N);
                    ExprPtr lhs = dom.to_expr(lq(w, asg, dom));
                    EqOptions opt = cfg.eq(seed);
                    opt.threads = 1;
                    auto w3 = collapse(w);
                    if (!w3) return values_equal(lhs, ex_const(Rat(0)), opt);
                    ExprPtr rhs = dom.to_expr(z_functional(*w3, N, false, dom));
                    return values_equal(lhs, rhs, opt);
                });
            });
            if (!has_bc) {
                std::uint64_t seed2 = mix_seed(cfg.seed, 95000 + tag++);
                jobs.push_back([=, &cfg] {
                    return equality_case(word6_str(w), "q-inversion sign (-1)^k", N, [&] {
                        ExprDomain dom;
                        Assignment asg = Assignment::bc_infinity(N);
                        ExprPtr lhs = dom.to_expr(lq(tau(w), asg, dom));
                        ExprPtr rhs = subst_q_inverse(dom.to_expr(lq(w, asg, dom)));
                        if (k % 2) rhs = ex_neg(rhs);
                        EqOptions opt = cfg.eq(seed2);
                        opt.threads = 1;
                        return values_equal(lhs, rhs, opt);
                    });
                });
            }
        }
    }
    run_cases(r.cases, jobs.size(), cfg.threads, [&](std::size_t i) { return jobs[i](); });
    return r;
}

// ---------------------------------------------------------------------------
// Classical limit.

namespace {

double simpson_rule(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double eps, double min_width, int depth) {
    if (depth > 60) throw NumericalInstability("adaptive quadrature depth exceeded");
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson_rule(fa, flm, fm, m - a);
    double right = simpson_rule(fm, frm, fb, b - m);
    double err = left + right - whole;
    if (std::abs(err) <= 15 * eps || (b - a) < min_width) return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, min_width, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, min_width, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
    double m = (a + b) / 2;
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson_rule(fa, fm, fb, b - a);
    // intervals below the width floor contribute O(width * |f|) and stop the
    // recursion from chasing rounding noise next to endpoint singularities
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 1e-8 * (b - a), 0);
}

double mark_value(Mark m, double A, double B, double C, double D) {
    switch (m) {
        case Mark::A: return A;
        case Mark::B: return B;
        case Mark::C: return C;
        case Mark::D: return D;
    }
    return 0;
}

// nested integral over A < t_1 < ... < t_k < D for k <= 2; the inner level
// is integrated in closed form through logarithms
double classical_integral(const Word6& w, double A, double B, double C, double D) {
    const int k = static_cast<int>(w.size());
    if (k == 0) return 1.0;
    auto u_of = [&](int j) { return mark_value(letter_first(w[static_cast<std::size_t>(j - 1)]), A, B, C, D); };
    auto v_of = [&](int j) { return mark_value(letter_second(w[static_cast<std::size_t>(j - 1)]), A, B, C, D); };
    double u1 = u_of(1), v1 = v_of(1);
    // integral of the inner form from A to t, with log1p keeping the value
    // accurate when t sits close to A
    auto inner_from_A = [&](double t) {
        return std::log1p((t - A) / (A - u1)) - std::log1p((t - A) / (A - v1));
    };
    if (k == 1) return inner_from_A(D);
    if (k != 2) throw QdualError("classical check supports words of length <= 2");
    double u2 = u_of(2), v2 = v_of(2);
    double f1_at_A = 1.0 / (A - u1) - 1.0 / (A - v1);
    const double edge = 1e-9 * (D - A);
    auto outer = [&](double t2) {
        // The last letter may carry the mark A; the integrand then has the
        // finite limit f1(A) at the lower endpoint (the inner integral
        // vanishes linearly against the simple pole).
        if (t2 - A < edge) {
            if (std::abs(u2 - A) < edge) return f1_at_A;
            if (std::abs(v2 - A) < edge) return -f1_at_A;
            return 0.0;
        }
        // A first letter carrying the mark D makes the inner integral grow
        // like log(D - t2); clamp the log-integrable endpoint.
        if (D - t2 < edge) t2 = D - edge;
        double f2 = 1.0 / (t2 - u2) - 1.0 / (t2 - v2);
        return f2 * inner_from_A(t2);
    };
    return integrate(outer, A, D, 1e-9);
}

// (1-q_N)^k L_{q_N}(w) in floating point, shifts applied per position
double lq_float(const Word6& w, double A, double B, double C, double D, double qN, int N) {
    const int k = static_cast<int>(w.size());
    if (k == 0) return 1.0;
    const ShiftTable table = shift_table(w);
    auto shifted_value = [&](Mark m, const ShiftQuad& s) {
        double base = mark_value(m, A, B, C, D);
        int e = 0;
        switch (m) {
            case Mark::A: e = s.a; break;
            case Mark::B: e = s.b; break;
            case Mark::C: e = s.c; break;
            case Mark::D: e = s.d; break;
        }
        return base * std::pow(qN, e);
    };
    std::vector<double> t(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) t[static_cast<std::size_t>(n)] = A * std::pow(qN, -n);
    std::vector<double> cur(static_cast<std::size_t>(N) + 1, 0.0);
    for (int j = 1; j <= k; ++j) {
        const ShiftQuad& s = table.fwd[static_cast<std::size_t>(j - 1)];
        Letter6 l = w[static_cast<std::size_t>(j - 1)];
        double u = shifted_value(letter_first(l), s), v = shifted_value(letter_second(l), s);
        std::vector<double> next(static_cast<std::size_t>(N) + 1, 0.0);
        double prefix = 0;
        for (int n = 0; n <= N; ++n) {
            double tn = t[static_cast<std::size_t>(n)];
            double factor = tn / (tn - u) - tn / (tn - v);
            if (j == 1) {
                next[static_cast<std::size_t>(n)] = factor;
            } else {
                prefix += cur[static_cast<std::size_t>(n)];
                next[static_cast<std::size_t>(n)] = factor * prefix;
            }
        }
        cur = std::move(next);
    }
    double total = 0;
    for (double x : cur) total += x;
    return total * std::pow(1.0 - qN, k);
}

}  // namespace

ClassicalCheck classical_limit_check(const Word6& w, double A, double B, double C, double D, int n_steps) {
    if (!is_admissible(w)) throw NotAdmissible(word6_str(w));
    if (w.size() > 2) throw QdualError("classical check supports words of length <= 2");
    if (!(A < D)) throw QdualError("classical check needs A < D");
    ClassicalCheck out;
    double qN = std::pow(A / D, 1.0 / n_steps);
    out.q_value = lq_float(w, A, B, C, D, qN, n_steps);
    out.classical_value = classical_integral(w, A, B, C, D);
    out.q_discrepancy = std::abs(out.q_value - out.classical_value);
    double dual_value = classical_integral(tau(w), A, B, C, D);
    out.duality_gap = std::abs(out.classical_value - dual_value);
    return out;
}

}  // namespace qdual
