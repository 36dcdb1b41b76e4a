#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm {

// Exponent pair of z^alpha1 w^alpha2.
struct MonomialIndex {
    long alpha1 = 0;
    long alpha2 = 0;

    friend auto operator<=>(const MonomialIndex&, const MonomialIndex&) = default;
    friend MonomialIndex operator+(MonomialIndex a, MonomialIndex b) { return {a.alpha1 + b.alpha1, a.alpha2 + b.alpha2}; }
    friend MonomialIndex operator-(MonomialIndex a, MonomialIndex b) { return {a.alpha1 - b.alpha1, a.alpha2 - b.alpha2}; }

    std::string str() const { return "(" + std::to_string(alpha1) + "," + std::to_string(alpha2) + ")"; }
};

enum class Space { hartogs, bidisc };

inline const char* space_name(Space s) { return s == Space::hartogs ? "hartogs" : "bidisc"; }

inline bool is_hartogs_index(MonomialIndex i) { return i.alpha1 >= 0 && i.alpha1 + i.alpha2 + 1 >= 0; }
inline bool is_bidisc_index(MonomialIndex i) { return i.alpha1 >= 0 && i.alpha2 >= 0; }

inline bool in_space(MonomialIndex i, Space s) {
    return s == Space::hartogs ? is_hartogs_index(i) : is_bidisc_index(i);
}

// 2*alpha1 + alpha2 + 1 on the whole lattice; used for multiplier shifts and ordering.
inline long lattice_degree(MonomialIndex i) { return 2 * i.alpha1 + i.alpha2 + 1; }

inline long hartogs_degree(MonomialIndex i) {
    if (!is_hartogs_index(i)) throw std::invalid_argument("not a Hartogs index: " + i.str());
    return lattice_degree(i);
}

// Canonical order: by degree, then by alpha1.
struct CanonicalOrder {
    bool operator()(const MonomialIndex& a, const MonomialIndex& b) const {
        long da = lattice_degree(a), db = lattice_degree(b);
        if (da != db) return da < db;
        return a.alpha1 < b.alpha1;
    }
};

// j-th entry of F_m: (m-j, 2j-m-1).
inline MonomialIndex level_entry(long m, long j) { return {m - j, 2 * j - m - 1}; }

// E^m_A = z^A w^(m-2A-1), the entry of F_m with z-exponent A.
inline MonomialIndex level_monomial(long m, long A) { return {A, m - 2 * A - 1}; }

struct LevelBasis {
    long level = 0;
    std::vector<MonomialIndex> entries;

    std::size_t size() const { return entries.size(); }
    // position of idx in entries, or -1
    long position(MonomialIndex idx) const {
        if (lattice_degree(idx) != level || !is_hartogs_index(idx)) return -1;
        return level - idx.alpha1;
    }
};

inline LevelBasis level_basis(long m) {
    if (m < 0) throw std::invalid_argument("level must be nonnegative");
    LevelBasis b;
    b.level = m;
    b.entries.reserve(static_cast<std::size_t>(m + 1));
    for (long j = 0; j <= m; ++j) b.entries.push_back(level_entry(m, j));
    return b;
}

// The two coordinate multipliers.
enum class Letter { z, w };

inline MonomialIndex letter_index(Letter x) { return x == Letter::z ? MonomialIndex{1, 0} : MonomialIndex{0, 1}; }
inline long letter_shift(Letter x) { return x == Letter::z ? 2 : 1; }
inline const char* letter_name(Letter x) { return x == Letter::z ? "z" : "w"; }

// Number of Hartogs monomials with degree <= M.
inline long count_up_to_level(long M) { return M < 0 ? 0 : (M + 1) * (M + 2) / 2; }

}  // namespace hm
