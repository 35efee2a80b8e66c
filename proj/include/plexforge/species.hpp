#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "plexforge/core.hpp"

namespace plexforge {

/// Orders accepted by canonical_key.
inline constexpr int kMaxSpeciesOrder = 10;

/// Coordinate permutations of (row, col, sym), in lexicographic order;
/// conjugate i sends (t0, t1, t2) to (t[p0], t[p1], t[p2]).
inline constexpr std::array<std::array<int, 3>, 6> kConjugatePerms{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

std::vector<LatinSquare> conjugates(const LatinSquare& square);
LatinSquare conjugate(const LatinSquare& square, const std::array<int, 3>& perm);

/// rows[i], cols[j], syms[s] give the new label of old row i, column j and
/// symbol s.
LatinSquare relabel(const LatinSquare& square, const std::vector<int>& rows, const std::vector<int>& cols,
                    const std::vector<int>& syms);

/// Canonical form: the order byte followed by the row-major symbols of the
/// least square in the species.
struct SpeciesKey {
    std::vector<std::uint8_t> bytes;

    std::string hex() const;
    /// The least square itself.
    LatinSquare square() const;

    friend bool operator==(const SpeciesKey&, const SpeciesKey&) = default;
    friend auto operator<=>(const SpeciesKey&, const SpeciesKey&) = default;
};

/// Throws OrderTooLarge above kMaxSpeciesOrder.
SpeciesKey canonical_key(const LatinSquare& square);

struct SpeciesClass {
    SpeciesKey key;
    std::vector<std::size_t> members; // indices into the input, ascending
    LatinSquare representative;       // key.square()
};

/// Groups by canonical key; classes ordered by key.
std::vector<SpeciesClass> classify(const std::vector<LatinSquare>& squares);

struct DeltaSignature {
    std::vector<int> rows;
    std::vector<std::vector<int>> matrix; // delta_1 per requested row; 0 is blank

    /// One line per row, blanks shown as '.'.
    std::string to_text() const;

    friend bool operator==(const DeltaSignature&, const DeltaSignature&) = default;
};

DeltaSignature delta_signature(const LatinSquare& square, const std::vector<int>& rows);

} // namespace plexforge
