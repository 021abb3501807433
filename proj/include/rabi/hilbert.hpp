// hilbert.hpp — truncated Fock (x) spin-1/2 space and the basis index convention
//
// Basis ordering is interleaved with spin fastest: |n, sigma> maps to index
// 2n + (0 for e, 1 for g), n = 0..n_max. This keeps the 2x2 invariant blocks
// of the rotating/anti-rotating Hamiltonians on nearly adjacent indices.

#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rabi {

enum class Level { e, g };  // atomic level: excited / ground

struct BasisState {
    int n{0};
    Level sigma{Level::g};

    bool operator==(const BasisState&) const = default;
};

struct Space {
    int n_max;  // highest retained Fock occupation, >= 2
    int dim;    // 2 * (n_max + 1)

    bool operator==(const Space&) const = default;
};

// n_max >= 2 so the margin-2 interior projection is nonempty.
inline Space make_space(int n_max) {
    if (n_max < 2) throw std::invalid_argument("make_space: n_max must be >= 2");
    return Space{n_max, 2 * (n_max + 1)};
}

inline int basis_index(const Space& s, const BasisState& b) {
    if (b.n < 0 || b.n > s.n_max)
        throw std::out_of_range("basis_index: Fock occupation out of range");
    return 2 * b.n + (b.sigma == Level::e ? 0 : 1);
}

inline BasisState basis_state(const Space& s, int index) {
    if (index < 0 || index >= s.dim)
        throw std::out_of_range("basis_state: index out of range");
    return BasisState{index / 2, index % 2 == 0 ? Level::e : Level::g};
}

// Fock occupation / level of a raw index (no bounds check beyond sign).
inline int fock_of_index(int index) { return index / 2; }
inline Level level_of_index(int index) { return index % 2 == 0 ? Level::e : Level::g; }

// Highest Fock level retained by the interior projector at the given margin.
inline int interior_cut(const Space& s, int margin) {
    if (margin < 0 || margin > s.n_max)
        throw std::out_of_range("interior_cut: margin out of range [0, n_max]");
    return s.n_max - margin;
}

// Text form "n,sigma" used by CLI flags and CSV headers, e.g. "0,g" or "3,e".
inline std::string to_string(const BasisState& b) {
    return std::to_string(b.n) + "," + (b.sigma == Level::e ? "e" : "g");
}

inline BasisState parse_basis_state(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 2 != text.size())
        throw std::invalid_argument("basis state: expected \"n,sigma\" such as \"0,g\"");
    for (std::size_t i = 0; i < comma; ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("basis state: occupation must be a nonnegative integer");
    const char tag = text[comma + 1];
    if (tag != 'e' && tag != 'g')
        throw std::invalid_argument("basis state: level must be 'e' or 'g'");
    return BasisState{std::stoi(text.substr(0, comma)), tag == 'e' ? Level::e : Level::g};
}

}  // namespace rabi
