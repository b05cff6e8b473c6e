#include "qdual/words.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qdual {

namespace {

const char* kLetterNames[kNumLetters] = {"AB", "AC", "AD", "BC", "BD", "CD"};

std::vector<std::string> split_tokens(const std::string& text, std::size_t& first_bad) {
    std::vector<std::string> tokens;
    std::string cur;
    first_bad = std::string::npos;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        char ch = i < text.size() ? text[i] : '.';
        if (ch == '.' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return tokens;
}

}  // namespace

Letter6 letter_from_marks(Mark u, Mark v) {
    if (static_cast<int>(u) >= static_cast<int>(v)) throw QdualError("letter marks must satisfy u < v");
    for (int l = 0; l < kNumLetters; ++l) {
        Letter6 cand = static_cast<Letter6>(l);
        if (letter_first(cand) == u && letter_second(cand) == v) return cand;
    }
    throw QdualError("no such letter");
}

std::string letter_name(Letter6 l) { return kLetterNames[static_cast<int>(l)]; }

Letter6 sigma_letter(Letter6 l) {
    // sigma reverses the mark order, so (sigma(v), sigma(u)) is canonical.
    return letter_from_marks(sigma(letter_second(l)), sigma(letter_first(l)));
}

bool is_admissible(const Word6& w) {
    if (w.empty()) return true;
    if (letter_first(w.front()) == Mark::A) return false;
    if (letter_second(w.back()) == Mark::D) return false;
    return true;
}

Word6 tau(const Word6& w) {
    Word6 r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(sigma_letter(*it));
    return r;
}

int m_of(const Word6& w) {
    int nonad = 0;
    for (Letter6 l : w)
        if (l != Letter6::AD) ++nonad;
    return 1 + nonad;
}

int kappa_of(const Word6& w) {
    int ad = 0;
    for (Letter6 l : w)
        if (l == Letter6::AD) ++ad;
    return ad;
}

std::vector<Word6> enumerate_admissible(int k) {
    std::vector<Word6> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    Word6 cur(static_cast<std::size_t>(k));
    // lexicographic odometer over all 6^k words, filtered
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = static_cast<Letter6>(idx[static_cast<std::size_t>(i)]);
        if (is_admissible(cur)) out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == kNumLetters) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

std::string word6_str(const Word6& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += letter_name(w[i]);
    }
    return s;
}

Word6 parse_word6(const std::string& text) {
    std::size_t bad;
    Word6 w;
    std::size_t offset = 0;
    for (const std::string& tok : split_tokens(text, bad)) {
        bool found = false;
        for (int l = 0; l < kNumLetters; ++l) {
            if (tok == kLetterNames[l]) {
                w.push_back(static_cast<Letter6>(l));
                found = true;
                break;
            }
        }
        if (!found) throw ParseError("unknown six-letter token '" + tok + "'", offset);
        offset += tok.size() + 1;
    }
    return w;
}

LinComb LinComb::term(const Word6& w, const Rat& c) {
    LinComb lc;
    lc.add(w, c);
    return lc;
}

void LinComb::add(const Word6& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LinComb& LinComb::operator+=(const LinComb& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

LinComb LinComb::operator*(const LinComb& o) const {
    LinComb r;
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : o.terms_) {
            Word6 w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add(w, c1 * c2);
        }
    }
    return r;
}

LinComb LinComb::scaled(const Rat& c) const {
    LinComb r;
    for (const auto& [w, coeff] : terms_) r.add(w, coeff * c);
    return r;
}

std::string LinComb::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        os << rat_str(c) << "*[" << word6_str(w) << "]";
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

bool in_h0(const Word3& w) {
    if (w.empty()) return true;
    return w.front() == Letter3::y && w.back() == Letter3::x;
}

std::string word3_str(const Word3& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += "xyz"[static_cast<int>(w[i])];
    }
    return s;
}

Word3 parse_word3(const std::string& text) {
    std::size_t bad;
    Word3 w;
    std::size_t offset = 0;
    for (const std::string& tok : split_tokens(text, bad)) {
        if (tok == "x")
            w.push_back(Letter3::x);
        else if (tok == "y")
            w.push_back(Letter3::y);
        else if (tok == "z")
            w.push_back(Letter3::z);
        else
            throw ParseError("unknown three-letter token '" + tok + "'", offset);
        offset += tok.size() + 1;
    }
    return w;
}

std::vector<Word3> enumerate_h0(int k) {
    std::vector<Word3> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    if (k == 1) return out;  // must both start with y and end with x
    int mid = k - 2;
    long total = 1;
    for (int i = 0; i < mid; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        Word3 w;
        w.push_back(Letter3::y);
        long c = code;
        for (int i = 0; i < mid; ++i) {
            w.push_back(static_cast<Letter3>(c % 3));
            c /= 3;
        }
        w.push_back(Letter3::x);
        out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Word3> collapse(const Word6& w) {
    Word3 r;
    for (Letter6 l : w) {
        switch (l) {
            case Letter6::AB:
            case Letter6::AC: r.push_back(Letter3::x); break;
            case Letter6::BD:
            case Letter6::CD: r.push_back(Letter3::y); break;
            case Letter6::AD: r.push_back(Letter3::z); break;
            case Letter6::BC: return std::nullopt;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

std::string yam_str(const YamWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        switch (w[i]) {
            case YamLetter::x: s += "x"; break;
            case YamLetter::y0: s += "y0"; break;
            case YamLetter::y1: s += "y1"; break;
        }
    }
    return s;
}

YamWord parse_yam(const std::string& text) {
    std::size_t bad;
    YamWord w;
    std::size_t offset = 0;
    for (const std::string& tok : split_tokens(text, bad)) {
        if (tok == "x")
            w.push_back(YamLetter::x);
        else if (tok == "y0")
            w.push_back(YamLetter::y0);
        else if (tok == "y1")
            w.push_back(YamLetter::y1);
        else
            throw ParseError("unknown Yamamoto token '" + tok + "'", offset);
        offset += tok.size() + 1;
    }
    return w;
}

YamWord tau_prime(const YamWord& w) {
    YamWord r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (*it) {
            case YamLetter::x: r.push_back(YamLetter::y1); break;
            case YamLetter::y0: r.push_back(YamLetter::y0); break;
            case YamLetter::y1: r.push_back(YamLetter::x); break;
        }
    }
    return r;
}

bool aug_admissible(const AugIndex& k) {
    if (k.empty()) return true;
    return !(k.back().k == 1 && k.back().mu == 1);
}

int aug_weight(const AugIndex& k) {
    int w = 0;
    for (const AugEntry& e : k) w += e.k;
    return w;
}

std::string aug_str(const AugIndex& k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(k[i].k) + "," + std::to_string(k[i].mu) + ")";
    }
    return s.empty() ? "()" : s;
}

AugIndex parse_aug(const std::string& text) {
    AugIndex out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' in augmented index", i);
        ++i;
        std::size_t comma = text.find(',', i);
        std::size_t close = text.find(')', i);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw ParseError("expected '(k,mu)'", i);
        int k = std::stoi(text.substr(i, comma - i));
        int mu = std::stoi(text.substr(comma + 1, close - comma - 1));
        if (k < 1 || (mu != 0 && mu != 1)) throw ParseError("entries must be (k>=1, mu in {0,1})", i);
        out.push_back({k, mu});
        i = close + 1;
        skip_ws();
    }
    return out;
}

YamWord aug_to_word(const AugIndex& k) {
    YamWord w;
    for (const AugEntry& e : k) {
        w.push_back(e.mu == 0 ? YamLetter::y0 : YamLetter::y1);
        for (int i = 1; i < e.k; ++i) w.push_back(YamLetter::x);
    }
    return w;
}

namespace {

// parse y_{mu} x^{k-1} runs back into an augmented index
AugIndex word_to_aug(const YamWord& w) {
    AugIndex out;
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i] == YamLetter::x)
            throw NotAdmissible("tau' image does not start with a y-letter; index was inadmissible");
        int mu = w[i] == YamLetter::y1 ? 1 : 0;
        std::size_t j = i + 1;
        while (j < w.size() && w[j] == YamLetter::x) ++j;
        out.push_back({static_cast<int>(j - i), mu});
        i = j;
    }
    return out;
}

}  // namespace

AugIndex dual_index(const AugIndex& k) {
    if (!aug_admissible(k)) throw NotAdmissible("augmented index ends with (1,1)");
    return word_to_aug(tau_prime(aug_to_word(k)));
}

std::vector<AugIndex> enumerate_aug(int weight) {
    std::vector<AugIndex> out;
    if (weight == 0) {
        out.push_back({});
        return out;
    }
    // compositions of `weight`, each part decorated with mu
    std::function<void(int, AugIndex&)> rec = [&](int remaining, AugIndex& cur) {
        if (remaining == 0) {
            if (aug_admissible(cur)) out.push_back(cur);
            return;
        }
        for (int part = 1; part <= remaining; ++part) {
            for (int mu = 0; mu <= 1; ++mu) {
                cur.push_back({part, mu});
                rec(remaining - part, cur);
                cur.pop_back();
            }
        }
    };
    AugIndex cur;
    rec(weight, cur);
    return out;
}

LinComb theta(const YamWord& w) {
    LinComb acc = LinComb::term({}, Rat(1));
    for (YamLetter l : w) {
        LinComb letter;
        switch (l) {
            case YamLetter::x:
                letter.add({Letter6::AC}, Rat(1));
                letter.add({Letter6::BC}, Rat(-1));
                break;
            case YamLetter::y0:
                letter.add({Letter6::BC}, Rat(1));
                break;
            case YamLetter::y1:
                letter.add({Letter6::BD}, Rat(1));
                letter.add({Letter6::BC}, Rat(-1));
                break;
        }
        acc = acc * letter;
    }
    return acc;
}

}  // namespace qdual
