#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace painted {

// Exact rational scalar used everywhere. No floating point anywhere in this
// library; GMP keeps elimination-sized numerators manageable.
using Rat = mpq_class;

inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

// Accepts "p", "-p", "p/q". Throws on malformed input or zero denominator.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace painted
