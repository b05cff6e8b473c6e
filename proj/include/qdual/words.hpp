#pragma once

#include "qdual/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdual {

struct ParseError : QdualError {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : QdualError(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct NotAdmissible : QdualError {
    explicit NotAdmissible(const std::string& what = "word is not admissible") : QdualError(what) {}
};

// The four marked points, used both as formal marks inside letters and as
// the names of the projective parameters.
enum class Mark : int { A = 0, B = 1, C = 2, D = 3 };

// sigma exchanges A with D and B with C.
inline Mark sigma(Mark m) { return static_cast<Mark>(3 - static_cast<int>(m)); }

inline char mark_char(Mark m) { return "ABCD"[static_cast<int>(m)]; }

// The six pairwise letters in canonical mark order. Letters are purely
// formal: e_AB and e_AC stay distinct under every parameter coincidence.
enum class Letter6 : int { AB = 0, AC = 1, AD = 2, BC = 3, BD = 4, CD = 5 };

inline constexpr int kNumLetters = 6;

Letter6 letter_from_marks(Mark u, Mark v);  // requires u < v
inline Mark letter_first(Letter6 l) {
    switch (l) {
        case Letter6::AB:
        case Letter6::AC:
        case Letter6::AD: return Mark::A;
        case Letter6::BC:
        case Letter6::BD: return Mark::B;
        case Letter6::CD: return Mark::C;
    }
    return Mark::A;
}
inline Mark letter_second(Letter6 l) {
    switch (l) {
        case Letter6::AB: return Mark::B;
        case Letter6::AC: return Mark::C;
        case Letter6::AD:
        case Letter6::BD:
        case Letter6::CD: return Mark::D;
        case Letter6::BC: return Mark::C;
    }
    return Mark::B;
}

std::string letter_name(Letter6 l);

using Word6 = std::vector<Letter6>;

// sigma applied to both marks; the result is automatically in canonical
// order because sigma reverses the mark order.
Letter6 sigma_letter(Letter6 l);

// W0: empty, or neither starting with e_Av nor ending with e_uD.
bool is_admissible(const Word6& w);

// Anti-automorphism: reverse the word, apply sigma letterwise.
Word6 tau(const Word6& w);

// m(w) = 1 + #(non-AD letters); kappa(w) = #(AD letters).
int m_of(const Word6& w);
int kappa_of(const Word6& w);

// All admissible words of length exactly k, lexicographic in Letter6 order.
std::vector<Word6> enumerate_admissible(int k);

std::string word6_str(const Word6& w);
Word6 parse_word6(const std::string& text);

// Q-linear combinations of six-letter words; zero coefficients are dropped.
class LinComb {
  public:
    LinComb() = default;
    static LinComb term(const Word6& w, const Rat& c = Rat(1));

    void add(const Word6& w, const Rat& c);
    LinComb& operator+=(const LinComb& o);
    LinComb& operator-=(const LinComb& o);
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    LinComb operator*(const LinComb& o) const;  // concatenation product
    LinComb scaled(const Rat& c) const;

    const std::map<Word6, Rat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::string str() const;

  private:
    std::map<Word6, Rat> terms_;
};

// ---------------------------------------------------------------------------
// Three-letter alphabet {x, y, z} for the B=C=infinity reformulation.

enum class Letter3 : int { x = 0, y = 1, z = 2 };
using Word3 = std::vector<Letter3>;

struct NotInH0 : QdualError {
    explicit NotInH0(const std::string& what = "word is not in h0 (must be empty or start y ... end x)")
        : QdualError(what) {}
};

// h0 = Q + y h x
bool in_h0(const Word3& w);
std::string word3_str(const Word3& w);
Word3 parse_word3(const std::string& text);
std::vector<Word3> enumerate_h0(int k);

// Letterwise collapse AB,AC -> x; BD,CD -> y; AD -> z. Words containing
// e_BC have no image (their value vanishes once B = C = infinity); nullopt
// is the ContainsBC marker.
std::optional<Word3> collapse(const Word6& w);

// ---------------------------------------------------------------------------
// Yamamoto's alphabet {x, y0, y1} and augmented indices.

enum class YamLetter : int { x = 0, y0 = 1, y1 = 2 };
using YamWord = std::vector<YamLetter>;

std::string yam_str(const YamWord& w);
YamWord parse_yam(const std::string& text);

// tau'(x) = y1, tau'(y0) = y0, tau'(y1) = x, extended as anti-automorphism.
YamWord tau_prime(const YamWord& w);

// Augmented index ((k_1,mu_1),...,(k_r,mu_r)), k_i >= 1, mu_i in {0,1}.
struct AugEntry {
    int k;
    int mu;
    bool operator==(const AugEntry&) const = default;
};
using AugIndex = std::vector<AugEntry>;

// admissible unless the last entry is (1,1)
bool aug_admissible(const AugIndex& k);
int aug_weight(const AugIndex& k);
std::string aug_str(const AugIndex& k);
AugIndex parse_aug(const std::string& text);

// w(k) = y_{mu_1} x^{k_1 - 1} ... y_{mu_r} x^{k_r - 1}
YamWord aug_to_word(const AugIndex& k);

// the index with tau'(w(k)) = w(dual); defined exactly for admissible k
AugIndex dual_index(const AugIndex& k);

// all admissible augmented indices of weight exactly w
std::vector<AugIndex> enumerate_aug(int weight);

// theta(x) = e_AC - e_BC, theta(y0) = e_BC, theta(y1) = e_BD - e_BC,
// extended multiplicatively and expanded.
LinComb theta(const YamWord& w);

}  // namespace qdual
