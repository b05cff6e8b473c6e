#pragma once

#include "qdual/param.hpp"
#include "qdual/words.hpp"

#include <array>
#include <vector>

namespace qdual {

struct ShiftQuad {
    int a = 0, b = 0, c = 0, d = 0;
    bool operator==(const ShiftQuad&) const = default;
};

// Position-dependent q-exponents deforming the parameters before the chain
// sum is taken.
//
// fwd[j-1] (1 <= j <= k) is the quadruple used by the evaluation of L_q(w):
//   a_j = #{h<=j : u_h in {BC,BD,CD}}
//   b_j = #{h<=j : u_h not in {AC,AD}} + #{h>=j : u_h = CD}
//   c_j = #{h<=j : u_h not in {AB,AD}} + #{h>=j : u_h = BD}
//   d_j = -#{h>=j : u_h in {AB,AC,BC}}
//
// dual[j-1] is the bracketed [j]-variant (counts from position j to the end
// with the mirror corrections); it drives the alternative evaluation route
// of L_q(tau(w)) on w itself and makes the mirror relations testable rather
// than definitional.
//
// prod[j] (0 <= j <= k) is the closed-product variant with strict h>j in the
// suffix counts; its increments per letter are constant vectors and it is
// the table the A=D product form and Phi are built from.
struct ShiftTable {
    std::vector<ShiftQuad> fwd;
    std::vector<ShiftQuad> dual;
    std::vector<ShiftQuad> prod;
};

ShiftTable shift_table(const Word6& w);

// Per-letter increment of the prod-table quadruple.
std::array<int, 4> increment_vector(Letter6 l);

// Assignment of the projective parameters. A is never stored: it is q^N * D
// by construction, so A/D = q^N holds in every mode.
struct Assignment {
    int N = 0;
    Param B = Param::symbol(Var::B);
    Param C = Param::symbol(Var::C);
    Param D = Param::symbol(Var::D);

    static Assignment generic(int N) { return Assignment{N}; }
    // B = C = infinity, D = 1
    static Assignment bc_infinity(int N, Param d = Param::unit()) {
        return Assignment{N, Param::infinity(), Param::infinity(), d};
    }
    // AD = BC q^m under A = q^N D, i.e. C = q^{N-m} D^2 / B
    static Assignment ad_bc_relation(int N, int m) {
        Mono c;
        c.e[static_cast<int>(Var::q)] = N - m;
        c.e[static_cast<int>(Var::B)] = -1;
        c.e[static_cast<int>(Var::D)] = 2;
        return Assignment{N, Param::symbol(Var::B), Param::finite(c), Param::symbol(Var::D)};
    }

    Param A() const {
        if (!D.is_finite()) throw QdualError("assignment needs a finite D to derive A = q^N D");
        return D.shifted_q(N);
    }
    Param of_mark(Mark m) const {
        switch (m) {
            case Mark::A: return A();
            case Mark::B: return B;
            case Mark::C: return C;
            case Mark::D: return D;
        }
        throw QdualError("bad mark");
    }
};

// (u_j^{(j)}, v_j^{(j)}): the assignment's parameters for the marks of the
// j-th letter, with q-exponents shifted by the matching table entries.
// j is 1-based. Zero and Infinity absorb the shift.
std::pair<Param, Param> shifted_pair(const Word6& w, int j, const Assignment& asg);

// Same with the dual [j]-table and sigma-swapped marks; position i of the
// reversed bracket list for L_q(tau(w)) uses j = k+1-i.
std::pair<Param, Param> shifted_pair_dual(const Word6& w, int j, const Assignment& asg);

}  // namespace qdual
