#include "qdual/expr.hpp"

#include "qdual/parallel.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <unordered_map>

namespace qdual {

namespace {

void merge_occurs(ExprNode& n, const ExprPtr& a, const ExprPtr& b) {
    for (int i = 0; i < kNumVars; ++i) {
        bool occ = false;
        if (a) occ = occ || a->occurs[i];
        if (b) occ = occ || b->occurs[i];
        n.occurs[i] = n.occurs[i] || occ;
    }
}

bool is_const(const ExprPtr& e, const Rat& c) { return e->op == ExprOp::Const && e->value == c; }

}  // namespace

ExprPtr ex_const(const Rat& c) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Const;
    n->value = c;
    return n;
}

ExprPtr ex_mono(const Mono& m) {
    if (m.c == 0) return ex_const(Rat(0));
    bool trivial = true;
    for (int i = 0; i < kNumVars; ++i) trivial = trivial && m.e[i] == 0;
    if (trivial) return ex_const(m.c);
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Mono;
    n->value = m.c;
    n->exps = m.e;
    for (int i = 0; i < kNumVars; ++i) {
        n->cert.num[i] = m.e[i] > 0 ? m.e[i] : 0;
        n->cert.den[i] = m.e[i] < 0 ? -m.e[i] : 0;
        n->occurs[i] = m.e[i] != 0;
    }
    return n;
}

ExprPtr ex_var(Var v) { return ex_mono(Mono::var(v)); }

ExprPtr ex_add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return ex_const(a->value + b->value);
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Add;
    n->a = std::move(a);
    n->b = std::move(b);
    n->cert = DegCert::add(n->a->cert, n->b->cert);
    merge_occurs(*n, n->a, n->b);
    return n;
}

ExprPtr ex_sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0)) return a;
    if (a.get() == b.get()) return ex_const(Rat(0));
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return ex_const(a->value - b->value);
    if (is_const(a, 0)) return ex_neg(std::move(b));
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Sub;
    n->a = std::move(a);
    n->b = std::move(b);
    n->cert = DegCert::add(n->a->cert, n->b->cert);
    merge_occurs(*n, n->a, n->b);
    return n;
}

ExprPtr ex_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0) || is_const(b, 0)) return ex_const(Rat(0));
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return ex_const(a->value * b->value);
    auto merge_mono = [](const ExprPtr& x) {
        Mono m;
        if (x->op == ExprOp::Const) {
            m.c = x->value;
            return std::optional<Mono>(m);
        }
        if (x->op == ExprOp::Mono) {
            m.c = x->value;
            m.e = x->exps;
            return std::optional<Mono>(m);
        }
        return std::optional<Mono>();
    };
    auto ma = merge_mono(a), mb = merge_mono(b);
    if (ma && mb) return ex_mono(*ma * *mb);
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Mul;
    n->a = std::move(a);
    n->b = std::move(b);
    n->cert = DegCert::mul(n->a->cert, n->b->cert);
    merge_occurs(*n, n->a, n->b);
    return n;
}

ExprPtr ex_div(ExprPtr a, ExprPtr b) {
    if (is_const(b, 1)) return a;
    if (is_const(a, 0)) return a;
    if (b->op == ExprOp::Const) {
        if (b->value == 0) throw QdualError("division by literal zero");
        return ex_mul(std::move(a), ex_const(Rat(1) / b->value));
    }
    if (b->op == ExprOp::Mono) {
        Mono inv{Rat(1) / b->value, exps_neg(b->exps)};
        return ex_mul(std::move(a), ex_mono(inv));
    }
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Div;
    n->a = std::move(a);
    n->b = std::move(b);
    n->cert = DegCert::div(n->a->cert, n->b->cert);
    merge_occurs(*n, n->a, n->b);
    return n;
}

ExprPtr ex_neg(ExprPtr a) {
    if (a->op == ExprOp::Const) return ex_const(-a->value);
    if (a->op == ExprOp::Mono) return ex_mono(Mono{-a->value, a->exps});
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Neg;
    n->a = std::move(a);
    n->cert = n->a->cert;
    merge_occurs(*n, n->a, nullptr);
    return n;
}

ExprPtr ex_pow(ExprPtr a, int n) {
    if (n < 0) throw QdualError("ex_pow expects a nonnegative exponent");
    if (n == 0) return ex_const(Rat(1));
    if (n == 1) return a;
    if (a->op == ExprOp::Const) return ex_const(rat_pow(a->value, n));
    if (a->op == ExprOp::Mono) return ex_mono(Mono{a->value, a->exps}.pow(n));
    auto node = std::make_shared<ExprNode>();
    node->op = ExprOp::Pow;
    node->a = std::move(a);
    node->pw = n;
    node->cert = DegCert::pow(node->a->cert, n);
    merge_occurs(*node, node->a, nullptr);
    return node;
}

// ---------------------------------------------------------------------------
// Structural transforms (memoized on node identity).

namespace {

template <class F>
ExprPtr transform(const ExprPtr& e, std::unordered_map<const ExprNode*, ExprPtr>& memo, F&& leaf) {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    ExprPtr r;
    switch (e->op) {
        case ExprOp::Const:
        case ExprOp::Mono:
            r = leaf(e);
            break;
        case ExprOp::Add:
            r = ex_add(transform(e->a, memo, leaf), transform(e->b, memo, leaf));
            break;
        case ExprOp::Sub:
            r = ex_sub(transform(e->a, memo, leaf), transform(e->b, memo, leaf));
            break;
        case ExprOp::Mul:
            r = ex_mul(transform(e->a, memo, leaf), transform(e->b, memo, leaf));
            break;
        case ExprOp::Div:
            r = ex_div(transform(e->a, memo, leaf), transform(e->b, memo, leaf));
            break;
        case ExprOp::Neg:
            r = ex_neg(transform(e->a, memo, leaf));
            break;
        case ExprOp::Pow:
            r = ex_pow(transform(e->a, memo, leaf), e->pw);
            break;
    }
    memo.emplace(e.get(), r);
    return r;
}

}  // namespace

ExprPtr subst_q_inverse(const ExprPtr& e) {
    std::unordered_map<const ExprNode*, ExprPtr> memo;
    return transform(e, memo, [](const ExprPtr& leaf) {
        if (leaf->op == ExprOp::Mono) {
            Mono m{leaf->value, leaf->exps};
            m.e[0] = -m.e[0];
            return ex_mono(m);
        }
        return leaf;
    });
}

ExprPtr subst_var_one(const ExprPtr& e, Var v) {
    std::unordered_map<const ExprNode*, ExprPtr> memo;
    return transform(e, memo, [v](const ExprPtr& leaf) {
        if (leaf->op == ExprOp::Mono && leaf->exps[static_cast<int>(v)] != 0) {
            Mono m{leaf->value, leaf->exps};
            m.e[static_cast<int>(v)] = 0;
            return ex_mono(m);
        }
        return leaf;
    });
}

std::pair<ExprPtr, ExprPtr> fraction_split(const ExprPtr& e) {
    using Pair = std::pair<ExprPtr, ExprPtr>;
    std::unordered_map<const ExprNode*, Pair> memo;
    std::function<Pair(const ExprPtr&)> go = [&](const ExprPtr& x) -> Pair {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        Pair r;
        switch (x->op) {
            case ExprOp::Const:
                r = {x, ex_const(Rat(1))};
                break;
            case ExprOp::Mono: {
                Mono num{x->value, {}}, den{Rat(1), {}};
                for (int i = 0; i < kNumVars; ++i) {
                    if (x->exps[i] > 0) num.e[i] = x->exps[i];
                    if (x->exps[i] < 0) den.e[i] = -x->exps[i];
                }
                r = {ex_mono(num), ex_mono(den)};
                break;
            }
            case ExprOp::Add: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                if (da.get() == db.get()) {
                    r = {ex_add(na, nb), da};
                } else {
                    r = {ex_add(ex_mul(na, db), ex_mul(nb, da)), ex_mul(da, db)};
                }
                break;
            }
            case ExprOp::Sub: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                if (da.get() == db.get()) {
                    r = {ex_sub(na, nb), da};
                } else {
                    r = {ex_sub(ex_mul(na, db), ex_mul(nb, da)), ex_mul(da, db)};
                }
                break;
            }
            case ExprOp::Mul: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {ex_mul(na, nb), ex_mul(da, db)};
                break;
            }
            case ExprOp::Div: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {ex_mul(na, db), ex_mul(da, nb)};
                break;
            }
            case ExprOp::Neg: {
                auto [na, da] = go(x->a);
                r = {ex_neg(na), da};
                break;
            }
            case ExprOp::Pow: {
                auto [na, da] = go(x->a);
                r = {ex_pow(na, x->pw), ex_pow(da, x->pw)};
                break;
            }
        }
        memo.emplace(x.get(), r);
        return r;
    };
    return go(e);
}

// ---------------------------------------------------------------------------
// Tape compilation and evaluation.

namespace {

struct Tape {
    struct Ins {
        ExprOp op;
        int a = -1, b = -1;
        Rat value;
        Exps exps{};
        int pw = 0;
    };
    std::vector<Ins> ins;
    bool occurs[kNumVars] = {};
    bool integer_poly = true;  // integer constants, nonnegative exponents, no division
};

Tape compile(const ExprPtr& root) {
    Tape t;
    for (int i = 0; i < kNumVars; ++i) t.occurs[i] = root->occurs[i];
    std::unordered_map<const ExprNode*, int> slot;
    // Iterative post-order walk; expressions can be deep.
    std::vector<std::pair<const ExprNode*, bool>> stack{{root.get(), false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (slot.count(node)) continue;
        if (!expanded) {
            stack.push_back({node, true});
            if (node->a && !slot.count(node->a.get())) stack.push_back({node->a.get(), false});
            if (node->b && !slot.count(node->b.get())) stack.push_back({node->b.get(), false});
            continue;
        }
        Tape::Ins ins;
        ins.op = node->op;
        if (node->a) ins.a = slot.at(node->a.get());
        if (node->b) ins.b = slot.at(node->b.get());
        ins.value = node->value;
        ins.exps = node->exps;
        ins.pw = node->pw;
        switch (node->op) {
            case ExprOp::Const:
                if (boost::multiprecision::denominator(node->value) != 1) t.integer_poly = false;
                break;
            case ExprOp::Mono:
                if (boost::multiprecision::denominator(node->value) != 1) t.integer_poly = false;
                for (int i = 0; i < kNumVars; ++i)
                    if (node->exps[i] < 0) t.integer_poly = false;
                break;
            case ExprOp::Div:
                t.integer_poly = false;
                break;
            default:
                break;
        }
        slot.emplace(node, static_cast<int>(t.ins.size()));
        t.ins.push_back(std::move(ins));
    }
    return t;
}

template <class T, class Ops>
T eval_tape(const Tape& t, const std::array<std::optional<T>, kNumVars>& pt, const Ops& ops,
            std::vector<T>& slots) {
    slots.resize(t.ins.size());
    for (std::size_t i = 0; i < t.ins.size(); ++i) {
        const auto& ins = t.ins[i];
        switch (ins.op) {
            case ExprOp::Const:
                slots[i] = ops.from_rat(ins.value);
                break;
            case ExprOp::Mono: {
                T acc = ops.from_rat(ins.value);
                for (int v = 0; v < kNumVars; ++v) {
                    if (ins.exps[v] == 0) continue;
                    if (!pt[v]) throw MissingVariable(std::string("no value for ") + var_name(static_cast<Var>(v)));
                    acc = ops.mul(acc, ops.pow_signed(*pt[v], ins.exps[v]));
                }
                slots[i] = std::move(acc);
                break;
            }
            case ExprOp::Add:
                slots[i] = ops.add(slots[ins.a], slots[ins.b]);
                break;
            case ExprOp::Sub:
                slots[i] = ops.sub(slots[ins.a], slots[ins.b]);
                break;
            case ExprOp::Mul:
                slots[i] = ops.mul(slots[ins.a], slots[ins.b]);
                break;
            case ExprOp::Div:
                if (ops.is_zero(slots[ins.b])) throw PoleAtPoint();
                slots[i] = ops.div(slots[ins.a], slots[ins.b]);
                break;
            case ExprOp::Neg:
                slots[i] = ops.neg(slots[ins.a]);
                break;
            case ExprOp::Pow:
                slots[i] = ops.pow_signed(slots[ins.a], ins.pw);
                break;
        }
    }
    return slots.back();
}

struct RatOps {
    Rat from_rat(const Rat& r) const { return r; }
    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat div(const Rat& a, const Rat& b) const { return a / b; }
    Rat neg(const Rat& a) const { return -a; }
    Rat pow_signed(const Rat& a, int e) const { return rat_pow(a, e); }
    bool is_zero(const Rat& a) const { return a == 0; }
};

struct IntOps {
    Int from_rat(const Rat& r) const { return Int(boost::multiprecision::numerator(r)); }
    Int add(const Int& a, const Int& b) const { return a + b; }
    Int sub(const Int& a, const Int& b) const { return a - b; }
    Int mul(const Int& a, const Int& b) const { return a * b; }
    Int div(const Int& a, const Int& b) const { return a / b; }
    Int neg(const Int& a) const { return -a; }
    Int pow_signed(const Int& a, int e) const {
        if (e < 0) throw QdualError("negative exponent in integer tape");
        Int acc(1), base = a;
        unsigned n = static_cast<unsigned>(e);
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }
    bool is_zero(const Int& a) const { return a == 0; }
};

struct FpOps {
    std::uint64_t p;
    Fp from_rat(const Rat& r) const { return fp_from_rat(r, p); }
    Fp add(Fp a, Fp b) const { return a + b; }
    Fp sub(Fp a, Fp b) const { return a - b; }
    Fp mul(Fp a, Fp b) const { return a * b; }
    Fp div(Fp a, Fp b) const { return a / b; }
    Fp neg(Fp a) const { return -a; }
    Fp pow_signed(Fp a, int e) const {
        if (e < 0 && a.is_zero()) throw PoleAtPoint();
        return a.pow_signed(e);
    }
    bool is_zero(Fp a) const { return a.is_zero(); }
};

}  // namespace

Rat eval_rat(const ExprPtr& e, const Point<Rat>& pt) {
    Tape t = compile(e);
    std::vector<Rat> slots;
    return eval_tape<Rat>(t, pt.v, RatOps{}, slots);
}

Fp eval_fp(const ExprPtr& e, const Point<Fp>& pt) {
    Tape t = compile(e);
    std::uint64_t p = kDefaultPrime;
    for (const auto& opt : pt.v)
        if (opt) p = opt->p;
    std::vector<Fp> slots;
    return eval_tape<Fp>(t, pt.v, FpOps{p}, slots);
}

// ---------------------------------------------------------------------------
// Equality testing.

namespace {

// A value proving the expression is not identically zero certifies den != 0;
// three misses on a nonzero polynomial would be extraordinary, so treat that
// as an unverifiable input rather than guessing.
void require_nonzero_somewhere(const Tape& tape, const char* label, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ULL);
    std::uniform_int_distribution<long> dist(2, 1 << 20);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::array<std::optional<Rat>, kNumVars> pt;
        for (int v = 0; v < kNumVars; ++v) pt[v] = Rat(dist(rng));
        std::vector<Rat> slots;
        try {
            if (eval_tape<Rat>(tape, pt, RatOps{}, slots) != 0) return;
        } catch (const PoleAtPoint&) {
            continue;
        }
    }
    throw QdualError(std::string("cannot certify ") + label + " denominator is nonzero");
}

std::map<std::string, std::string> witness_map(const std::vector<Var>& vars, const std::vector<Rat>& vals) {
    std::map<std::string, std::string> w;
    for (std::size_t i = 0; i < vars.size(); ++i) w[var_name(vars[i])] = rat_str(vals[i]);
    return w;
}

}  // namespace

namespace {

EqualityVerdict values_equal_pair(const ExprPtr& nl, const ExprPtr& dl, const ExprPtr& nr, const ExprPtr& dr,
                                  const EqOptions& opt);

}  // namespace

EqualityVerdict values_equal(const ExprPtr& lhs, const ExprPtr& rhs, const EqOptions& opt) {
    auto [nl, dl] = fraction_split(lhs);
    auto [nr, dr] = fraction_split(rhs);
    return values_equal_pair(nl, dl, nr, dr, opt);
}

namespace {

EqualityVerdict values_equal_pair(const ExprPtr& nl, const ExprPtr& dl, const ExprPtr& nr, const ExprPtr& dr,
                                  const EqOptions& opt) {
    ExprPtr cross = ex_sub(ex_mul(nl, dr), ex_mul(nr, dl));

    EqualityVerdict out;
    out.mode = opt.mode;
    if (cross->op == ExprOp::Const) {
        out.verdict = cross->value == 0 ? Verdict::Equal : Verdict::NotEqual;
        return out;
    }

    Tape tape = compile(cross);
    Tape tape_dl = compile(dl);
    Tape tape_dr = compile(dr);
    require_nonzero_somewhere(tape_dl, "lhs", opt.seed);
    require_nonzero_somewhere(tape_dr, "rhs", opt.seed);

    std::vector<Var> vars;
    for (int v = 0; v < kNumVars; ++v)
        if (tape.occurs[v]) vars.push_back(static_cast<Var>(v));

    if (opt.mode == EqMode::Grid) {
        std::vector<std::uint64_t> sizes;
        unsigned __int128 total = 1;
        for (Var v : vars) {
            int bound = cross->cert.num[static_cast<int>(v)];
            sizes.push_back(static_cast<std::uint64_t>(bound) + 1);
            total *= sizes.back();
            if (total > opt.grid_budget)
                throw GridTooLarge("grid needs more than " + std::to_string(opt.grid_budget) + " points");
        }
        std::uint64_t n_points = static_cast<std::uint64_t>(total);
        out.points_checked = n_points;

        std::atomic<bool> failed{false};
        std::mutex witness_mutex;
        std::map<std::string, std::string> witness;

        int threads = default_threads(opt.threads);
        std::uint64_t chunk = std::max<std::uint64_t>(1, n_points / (static_cast<std::uint64_t>(threads) * 8));
        std::size_t n_chunks = static_cast<std::size_t>((n_points + chunk - 1) / chunk);

        auto run_chunk = [&](std::size_t ci) {
            if (failed.load(std::memory_order_relaxed)) return;
            std::uint64_t begin = ci * chunk;
            std::uint64_t end = std::min(begin + chunk, n_points);
            std::vector<Rat> rat_slots;
            std::vector<Int> int_slots;
            std::vector<std::uint64_t> idx(vars.size(), 0);
            std::uint64_t rest = begin;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                idx[v] = rest % sizes[v];
                rest /= sizes[v];
            }
            std::array<std::optional<Rat>, kNumVars> rat_pt;
            std::array<std::optional<Int>, kNumVars> int_pt;
            auto load_point = [&] {
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    long value = 2 + static_cast<long>(idx[v]);
                    if (tape.integer_poly)
                        int_pt[static_cast<int>(vars[v])] = Int(value);
                    else
                        rat_pt[static_cast<int>(vars[v])] = Rat(value);
                }
            };
            for (std::uint64_t i = begin; i < end; ++i) {
                if (failed.load(std::memory_order_relaxed)) return;
                load_point();
                bool zero;
                if (tape.integer_poly)
                    zero = eval_tape<Int>(tape, int_pt, IntOps{}, int_slots) == 0;
                else
                    zero = eval_tape<Rat>(tape, rat_pt, RatOps{}, rat_slots) == 0;
                if (!zero) {
                    std::vector<Rat> vals;
                    for (std::size_t v = 0; v < vars.size(); ++v) vals.push_back(Rat(2 + static_cast<long>(idx[v])));
                    std::lock_guard<std::mutex> lock(witness_mutex);
                    if (!failed.exchange(true)) witness = witness_map(vars, vals);
                    return;
                }
                // odometer step
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    if (++idx[v] < sizes[v]) break;
                    idx[v] = 0;
                }
            }
        };
        parallel_for_indexed(n_chunks, threads, run_chunk);

        if (failed) {
            out.verdict = Verdict::NotEqual;
            out.witness = witness;
        } else {
            out.verdict = Verdict::Equal;
        }
        return out;
    }

    // Random modes. A single nonzero cross value at a point with nonvanishing
    // denominators is a definitive NotEqual.
    std::mt19937_64 rng(opt.seed);
    int done = 0;
    std::vector<Rat> rat_slots;
    while (done < opt.trials) {
        if (opt.mode == EqMode::RandomExact) {
            std::uniform_int_distribution<long> dist(2, 1 << 20);
            std::array<std::optional<Rat>, kNumVars> pt;
            std::vector<Rat> vals;
            for (Var v : vars) {
                Rat value(dist(rng));
                pt[static_cast<int>(v)] = value;
                vals.push_back(value);
            }
            std::vector<Rat> slots;
            Rat dval_l = eval_tape<Rat>(tape_dl, pt, RatOps{}, slots);
            Rat dval_r = eval_tape<Rat>(tape_dr, pt, RatOps{}, slots);
            if (dval_l == 0 || dval_r == 0) continue;  // resample poles
            Rat value = eval_tape<Rat>(tape, pt, RatOps{}, rat_slots);
            ++done;
            ++out.points_checked;
            if (value != 0) {
                out.verdict = Verdict::NotEqual;
                out.witness = witness_map(vars, vals);
                return out;
            }
        } else {
            std::uint64_t p = opt.prime;
            std::uniform_int_distribution<std::uint64_t> dist(2, p - 2);
            std::array<std::optional<Fp>, kNumVars> pt;
            std::vector<Rat> vals;
            for (Var v : vars) {
                std::uint64_t value = dist(rng);  // skips 0 and +-1 mod p
                pt[static_cast<int>(v)] = Fp(value, p);
                vals.push_back(Rat(value));
            }
            std::vector<Fp> slots;
            try {
                Fp dval_l = eval_tape<Fp>(tape_dl, pt, FpOps{p}, slots);
                Fp dval_r = eval_tape<Fp>(tape_dr, pt, FpOps{p}, slots);
                if (dval_l.is_zero() || dval_r.is_zero()) continue;
                Fp value = eval_tape<Fp>(tape, pt, FpOps{p}, slots);
                ++done;
                ++out.points_checked;
                if (!value.is_zero()) {
                    out.verdict = Verdict::NotEqual;
                    out.witness = witness_map(vars, vals);
                    return out;
                }
            } catch (const PoleAtPoint&) {
                continue;
            }
        }
    }
    out.verdict = Verdict::ProbablyEqual;
    return out;
}

}  // namespace

bool parity_class(const ExprPtr& f, int s, const EqOptions& opt) {
    for (int v = 1; v < kNumVars; ++v)
        if (f->occurs[v]) throw QdualError("parity_class expects an expression in q only");
    ExprPtr flipped = subst_q_inverse(f);
    ExprPtr target = (s % 2 == 0) ? f : ex_neg(f);
    EqualityVerdict verdict = values_equal(flipped, target, opt);
    return verdict.verdict == Verdict::Equal || verdict.verdict == Verdict::ProbablyEqual;
}

// ---------------------------------------------------------------------------
// LCD fractions.

int AtomTable::intern(const Exps& e1, const Rat& c2, const Exps& e2) {
    std::ostringstream key;
    for (int v : e1) key << v << ",";
    key << rat_str(c2) << ";";
    for (int v : e2) key << v << ",";
    auto it = index_.find(key.str());
    if (it != index_.end()) return it->second;
    Atom atom;
    atom.e1 = e1;
    atom.c2 = c2;
    atom.e2 = e2;
    atom.expr = ex_sub(ex_mono(Mono{Rat(1), e1}), ex_mono(Mono{c2, e2}));
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(std::move(atom));
    index_.emplace(key.str(), id);
    return id;
}

FracVal FracField::zero() const { return FracVal{ex_const(Rat(0)), {}, {}}; }
FracVal FracField::one() const { return FracVal{ex_const(Rat(1)), {}, {}}; }
FracVal FracField::from_rat(const Rat& c) const { return FracVal{ex_const(c), {}, {}}; }

FracVal FracField::from_mono(const Mono& m) const {
    FracVal f;
    Mono num{m.c, {}};
    for (int i = 0; i < kNumVars; ++i) {
        if (m.e[i] >= 0)
            num.e[i] = m.e[i];
        else
            f.den_exps[i] = -m.e[i];
    }
    f.num = ex_mono(num);
    return f;
}

FracVal FracField::mul(const FracVal& a, const FracVal& b) const {
    FracVal r;
    r.num = ex_mul(a.num, b.num);
    r.den_atoms = a.den_atoms;
    for (const auto& [id, mult] : b.den_atoms) r.den_atoms[id] += mult;
    r.den_exps = exps_add(a.den_exps, b.den_exps);
    return r;
}

namespace {

ExprPtr lift_num(const AtomTable& atoms, const FracVal& a, const std::map<int, int>& target_atoms,
                 const Exps& target_exps) {
    ExprPtr num = a.num;
    Mono extra_mono{Rat(1), {}};
    for (int i = 0; i < kNumVars; ++i) extra_mono.e[i] = target_exps[i] - a.den_exps[i];
    num = ex_mul(num, ex_mono(extra_mono));
    for (const auto& [id, mult] : target_atoms) {
        auto it = a.den_atoms.find(id);
        int have = it == a.den_atoms.end() ? 0 : it->second;
        if (mult > have) num = ex_mul(num, ex_pow(atoms.at(id).expr, mult - have));
    }
    return num;
}

}  // namespace

FracVal FracField::add(const FracVal& a, const FracVal& b) const {
    FracVal r;
    r.den_atoms = a.den_atoms;
    for (const auto& [id, mult] : b.den_atoms) {
        int& slot = r.den_atoms[id];
        slot = std::max(slot, mult);
    }
    for (int i = 0; i < kNumVars; ++i) r.den_exps[i] = std::max(a.den_exps[i], b.den_exps[i]);
    r.num = ex_add(lift_num(atoms_, a, r.den_atoms, r.den_exps), lift_num(atoms_, b, r.den_atoms, r.den_exps));
    return r;
}

FracVal FracField::sub(const FracVal& a, const FracVal& b) const { return add(a, neg(b)); }

FracVal FracField::neg(const FracVal& a) const { return FracVal{ex_neg(a.num), a.den_atoms, a.den_exps}; }

FracVal FracField::scale(const FracVal& a, const Rat& c) const {
    return FracVal{ex_mul(ex_const(c), a.num), a.den_atoms, a.den_exps};
}

std::pair<Mono, int> FracField::normalize_diff(const Mono& p, const Mono& r) const {
    if (p.e == r.e) {
        Rat c = p.c - r.c;
        if (c == 0) throw PoleDetected("denominator " + p.str() + " - " + r.str() + " is identically zero");
        return {Mono{c, p.e}, -1};
    }
    // orientation: lexicographically larger exponent vector leads
    bool p_leads = p.e > r.e;
    const Mono& lead = p_leads ? p : r;
    const Mono& tail = p_leads ? r : p;
    Exps g;
    for (int i = 0; i < kNumVars; ++i) g[i] = std::min(lead.e[i], tail.e[i]);
    Exps e1{}, e2{};
    for (int i = 0; i < kNumVars; ++i) {
        e1[i] = lead.e[i] - g[i];
        e2[i] = tail.e[i] - g[i];
    }
    int id = atoms_.intern(e1, tail.c / lead.c, e2);
    Mono factor{p_leads ? lead.c : -lead.c, g};
    return {factor, id};
}

namespace {

// divide the fraction by c*x^e (the numerator absorbs 1/c and any negative
// exponents)
void fold_mono_into_den(FracVal& out, const Mono& factor) {
    Mono inv{Rat(1) / factor.c, {}};
    for (int i = 0; i < kNumVars; ++i) {
        if (factor.e[i] >= 0)
            out.den_exps[i] += factor.e[i];
        else
            inv.e[i] = -factor.e[i];
    }
    out.num = ex_mul(out.num, ex_mono(inv));
}

}  // namespace

FracVal FracField::div_by_diff(const FracVal& a, const Mono& p, const Mono& r) const {
    FracVal out = a;
    auto [factor, id] = normalize_diff(p, r);
    if (id >= 0) out.den_atoms[id] += 1;
    fold_mono_into_den(out, factor);
    return out;
}

FracVal FracField::subst_q_inverse(const FracVal& a) const {
    FracVal out;
    // numerator: q^M n(1/q) is polynomial-valued for M bounding deg_q(n)
    int m = a.num->cert.num[0];
    out.num = ex_mul(ex_mono(Mono::var(Var::q, m)), qdual::subst_q_inverse(a.num));
    Mono extra{Rat(1), {}};
    // the q^{-M} from the numerator and the inverted q^{-g} denominator part
    extra.e[0] = a.den_exps[0] - m;
    out.den_exps = a.den_exps;
    out.den_exps[0] = 0;
    for (const auto& [id, mult] : a.den_atoms) {
        const AtomTable::Atom& atom = atoms_.at(id);
        Mono p{Rat(1), atom.e1}, r{atom.c2, atom.e2};
        p.e[0] = -p.e[0];
        r.e[0] = -r.e[0];
        auto [factor, new_id] = normalize_diff(p, r);
        if (new_id >= 0) out.den_atoms[new_id] += mult;
        extra = extra * factor.pow(mult).inverse();
    }
    // extra multiplies the value; split its sign/coefficient into num and
    // nonnegative exponents into either side
    Mono num_side{extra.c, {}};
    for (int i = 0; i < kNumVars; ++i) {
        if (extra.e[i] >= 0)
            num_side.e[i] = extra.e[i];
        else
            out.den_exps[i] += -extra.e[i];
    }
    out.num = ex_mul(out.num, ex_mono(num_side));
    return out;
}

ExprPtr FracField::den_expr(const FracVal& a) const {
    ExprPtr den = ex_mono(Mono{Rat(1), a.den_exps});
    for (const auto& [id, mult] : a.den_atoms) den = ex_mul(den, ex_pow(atoms_.at(id).expr, mult));
    return den;
}

ExprPtr FracField::to_expr(const FracVal& a) const {
    ExprPtr den = den_expr(a);
    if (den->op == ExprOp::Const && den->value == 1) return a.num;
    return ex_div(a.num, den);
}

EqualityVerdict values_equal(const FracVal& lhs, const FracVal& rhs, const FracField& ff, const EqOptions& opt) {
    // divide out the common denominator content
    FracVal l{lhs.num, {}, {}}, r{rhs.num, {}, {}};
    for (const auto& [id, mult] : lhs.den_atoms) {
        auto it = rhs.den_atoms.find(id);
        int shared = it == rhs.den_atoms.end() ? 0 : std::min(mult, it->second);
        if (mult > shared) l.den_atoms[id] = mult - shared;
    }
    for (const auto& [id, mult] : rhs.den_atoms) {
        auto it = lhs.den_atoms.find(id);
        int shared = it == lhs.den_atoms.end() ? 0 : std::min(mult, it->second);
        if (mult > shared) r.den_atoms[id] = mult - shared;
    }
    for (int i = 0; i < kNumVars; ++i) {
        int shared = std::min(lhs.den_exps[i], rhs.den_exps[i]);
        l.den_exps[i] = lhs.den_exps[i] - shared;
        r.den_exps[i] = rhs.den_exps[i] - shared;
    }
    return values_equal_pair(l.num, ff.den_expr(l), r.num, ff.den_expr(r), opt);
}

bool parity_class(const FracVal& f, const FracField& ff, int s, const EqOptions& opt) {
    ExprPtr den = ff.den_expr(f);
    for (int v = 1; v < kNumVars; ++v)
        if (f.num->occurs[v] || den->occurs[v]) throw QdualError("parity_class expects a fraction in q only");
    FracVal flipped = ff.subst_q_inverse(f);
    FracVal target = (s % 2 == 0) ? f : ff.neg(f);
    EqualityVerdict verdict = values_equal(flipped, target, ff, opt);
    return verdict.verdict == Verdict::Equal || verdict.verdict == Verdict::ProbablyEqual;
}

}  // namespace qdual
