#ifndef TWOCOVER_PLACE_HPP
#define TWOCOVER_PLACE_HPP

#include "twocover/numutil.hpp"

#include <string>

namespace twocover {

struct Place {
    bool real = false;
    Integer p = 0;  // certified prime when finite

    static Place infinite() { return Place{true, 0}; }
    static Place finite(Integer prime) { return Place{false, std::move(prime)}; }

    bool is_real() const { return real; }
    bool is_finite() const { return !real; }
    bool is_dyadic() const { return !real && p == 2; }

    bool operator==(const Place& o) const { return real == o.real && p == o.p; }
    bool operator<(const Place& o) const {
        if (real != o.real) return real;  // the real place sorts first
        return p < o.p;
    }
    std::string str() const { return real ? "oo" : p.get_str(); }
};

} // namespace twocover

#endif
