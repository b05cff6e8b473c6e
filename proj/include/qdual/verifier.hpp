#pragma once

#include "qdual/expr.hpp"
#include "qdual/qint.hpp"
#include "qdual/qseries.hpp"
#include "qdual/words.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qdual {

struct NumericalInstability : QdualError {
    explicit NumericalInstability(const std::string& what = "quadrature failed to converge") : QdualError(what) {}
};

struct VerifyConfig {
    EqMode mode = EqMode::Grid;
    std::uint64_t seed = 12345;
    std::uint64_t prime = kDefaultPrime;
    int trials = 3;
    std::uint64_t grid_budget = 20'000'000;
    int threads = 0;
    int k_max = 3;
    int n_max = 2;
    int mq = 20;
    int mz = 8;

    EqOptions eq(std::uint64_t case_seed) const {
        EqOptions o;
        o.mode = mode;
        o.seed = case_seed;
        o.trials = trials;
        o.grid_budget = grid_budget;
        o.prime = prime;
        o.threads = threads;
        return o;
    }
};

struct CaseResult {
    std::string word;
    std::string dual;
    int n = 0;
    Verdict verdict = Verdict::Skipped;
    bool proved = false;       // grid-mode Equal or exact coefficient match
    bool conjectural = false;  // NotEqual here is a falsification candidate, not a defect
    std::map<std::string, std::string> witness;
    std::string note;  // reason for Skipped
    std::int64_t ms = 0;
};

struct Report {
    std::string suite;
    VerifyConfig config;
    std::vector<CaseResult> cases;

    int count(Verdict v) const;
    bool clean() const;                  // no NotEqual
    bool has_proved_failure() const;     // NotEqual in a non-conjectural case
    bool has_conjecture_failure() const; // NotEqual in a conjectural case
    std::string to_json() const;
};

// Conjecture sweep primitives ------------------------------------------------

// One duality instance L_q(w) = L_q(tau(w)) under the generic assignment.
// Grid mode proves the instance; the grid runs with D = 1, which loses
// nothing because every bracket factor is invariant under a common scaling
// of (B, C, D).
Report verify_main(const Word6& w, int N, const VerifyConfig& cfg);

// All admissible words with |w| <= k_max, N <= n_max, tau-pairs verified once.
Report sweep_main(const VerifyConfig& cfg);

// Proved special cases --------------------------------------------------------

// AD = BC q^{m(w)} specialization; grid over (q, B) after the same scaling
// reduction (set full_vars for the 3-variable (q,B,D) grid on small cases).
Report suite_41(const VerifyConfig& cfg, bool full_vars = false);

// f_{k,l} parity for k+l <= k_max+l_max and N <= n_max (proved), the
// Z-duality sweep over h0 words (conjectural), and the three g-recursions
// for arguments in [1,3] plus their stated boundary cases (proved).
Report suite_42(const VerifyConfig& cfg, int k_max, int l_max, int n_max, int word_len_max);

// f(w) = f(tau(w)) coefficientwise plus the AD-erasure recursion.
Report suite_43(const VerifyConfig& cfg, int mq_order);

// A = D: duality, omega-product cross-evaluation, Phi ratio and telescoping.
Report suite_44(const VerifyConfig& cfg);

// Yamamoto duality, the bridge to L_q, Zhao's series expression, BZ/SZ
// dualities and their z = 0 / z = q specializations.
Report suite_section3(const VerifyConfig& cfg, int aug_weight_max, int thm23_weight_max, int zeta_weight_max);

// Cross-formulation bridges: Z_{N,q}(collapse(w)) against L_q at
// B=C=infinity, D=1, and the q -> 1/q reformulation of the tau side.
Report suite_bridges(const VerifyConfig& cfg, int k_max, int n_max);

// Classical limit spot check --------------------------------------------------

struct ClassicalCheck {
    double q_discrepancy = 0;       // |(1-q_N)^k L_{q_N}(w) - I_classical(w)|
    double duality_gap = 0;         // |I_classical(w) - I_classical(tau w)|
    double q_value = 0;             // (1-q_N)^k L_{q_N}(w)
    double classical_value = 0;     // I_classical(w)
};

// Floating-point comparison of the scaled q-sum with the nested classical
// integral (adaptive quadrature). Words of length <= 2; A < D and B, C
// outside [A, D].
ClassicalCheck classical_limit_check(const Word6& w, double A, double B, double C, double D, int n_steps);

}  // namespace qdual
