#pragma once

#include <random>

#include "fqt/ratfunc.hpp"

namespace fqt::testutil {

inline Poly random_poly(Field field, int max_deg, std::mt19937_64& rng) {
    int deg = static_cast<int>(rng() % (max_deg + 1));
    std::vector<std::uint64_t> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rng() % field.q());
    return Poly::from_ints(field, c);
}

inline Poly random_nonzero_poly(Field field, int max_deg, std::mt19937_64& rng) {
    while (true) {
        Poly p = random_poly(field, max_deg, rng);
        if (!p.is_zero()) return p;
    }
}

inline RatFunc random_ratfunc(Field field, int max_deg, std::mt19937_64& rng) {
    return RatFunc(random_poly(field, max_deg, rng), random_nonzero_poly(field, max_deg, rng));
}

inline RatFunc random_nonzero_ratfunc(Field field, int max_deg, std::mt19937_64& rng) {
    while (true) {
        RatFunc f = random_ratfunc(field, max_deg, rng);
        if (!f.is_zero()) return f;
    }
}

inline FieldElem random_elem(Field field, std::mt19937_64& rng) {
    return FieldElem::from_int(field, rng() % field.q());
}

}  // namespace fqt::testutil
