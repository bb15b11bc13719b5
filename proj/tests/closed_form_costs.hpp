#pragma once

// Reference cost closed forms for the 19 benchmark circuits, in n and L.

#include <cstddef>
#include <numeric>
#include <ostream>
#include <stdexcept>

struct Costs {
    std::size_t params, two_qubit, depth;
    friend bool operator==(const Costs&, const Costs&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Costs& c) {
    return os << "(" << c.params << ", " << c.two_qubit << ", " << c.depth << ")";
}

// Cost closed forms per benchmark circuit, written out independently of the templates.
inline Costs closed_form_costs(int id, std::size_t n, std::size_t L) {
    const std::size_t g = n / std::gcd(n, std::size_t{3});
    switch (id) {
        case 1: return {2 * n * L, 0, 2 * L};
        case 2: return {2 * n * L, (n - 1) * L, (n + 1) * L};
        case 3:
        case 4: return {(3 * n - 1) * L, (n - 1) * L, (n + 1) * L};
        case 5:
        case 6: return {(n * n + 3 * n) * L, (n * n - n) * L, (n * n - n + 4) * L};
        case 7:
        case 8: return {(5 * n - 1) * L, (n - 1) * L, 6 * L};
        case 9: return {n * L, (n - 1) * L, (n + 1) * L};
        case 10: return {n + n * L, n * L, 1 + (n + 1) * L};
        case 11:
        case 12: return {(4 * n - 4) * L, (n - 1) * L, 6 * L};
        case 13:
        case 14: return {(3 * n + g) * L, (n + g) * L, (2 + n + g) * L};
        case 15: return {2 * n * L, (n + g) * L, (2 + n + g) * L};
        case 16:
        case 17: return {(3 * n - 1) * L, (n - 1) * L, 4 * L};
        case 18:
        case 19: return {3 * n * L, n * L, (n + 2) * L};
    }
    throw std::logic_error("no such circuit");
}

