#pragma once

// Seeded random generators for property tests.

#include <hm/element.hpp>
#include <hm/index_basis.hpp>

#include <random>

namespace gen {

using hm::GR;
using hm::HElement;
using hm::MonomialIndex;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
    bool coin() { return uniform(0, 1) == 1; }

    mpq_class rational(long span = 7) {
        mpq_class q(uniform(-span, span), uniform(1, span));
        q.canonicalize();
        return q;
    }
    GR scalar() { return coin() ? GR(rational()) : GR(rational(), rational()); }
    GR nonzero_scalar() {
        GR c;
        while (c.is_zero()) c = scalar();
        return c;
    }

    MonomialIndex hartogs_index(long max_level) {
        long m = uniform(0, max_level);
        return hm::level_entry(m, uniform(0, m));
    }
    MonomialIndex bidisc_index(long max_deg) {
        long a = uniform(0, max_deg);
        return {a, uniform(0, max_deg - a)};
    }
    MonomialIndex lattice_point(long span) { return {uniform(-span, span), uniform(-span, span)}; }

    HElement hartogs_element(long max_level, int terms) {
        HElement v;
        for (int k = 0; k < terms; ++k) v.add_term(hartogs_index(max_level), scalar());
        return v;
    }
    HElement bidisc_element(long max_deg, int terms) {
        HElement v(hm::Space::bidisc);
        for (int k = 0; k < terms; ++k) v.add_term(bidisc_index(max_deg), scalar());
        return v;
    }
    // Genuine polynomial in z, w, as a Hartogs-tagged element.
    HElement polynomial(long max_deg, int terms) {
        HElement v;
        while (v.is_zero())
            for (int k = 0; k < terms; ++k) v.add_term(bidisc_index(max_deg), nonzero_scalar());
        return v;
    }
};

}  // namespace gen
