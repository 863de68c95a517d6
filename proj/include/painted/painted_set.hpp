#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace painted {

// A finite label set split into white and black labels. Labels are dense
// integers: 0..whites-1 are white ("w1".."wm"), whites..whites+blacks-1 are
// black ("b1".."bn"). Label 0 always exists for the constructions that need a
// basepoint; every routine that builds ring or module structure additionally
// requires at least two whites and total size >= 3.
struct PaintedSet {
    int whites = 0;
    int blacks = 0;

    int size() const { return whites + blacks; }
    std::uint32_t full_mask() const { return (std::uint32_t(1) << size()) - 1; }
    std::uint32_t white_mask() const { return (std::uint32_t(1) << whites) - 1; }
    bool is_white(int label) const { return label < whites; }

    bool operator==(const PaintedSet&) const = default;
    auto operator<=>(const PaintedSet&) const = default;

    std::string label_name(int label) const {
        if (label < 0 || label >= size()) throw std::out_of_range("label out of range");
        return is_white(label) ? "w" + std::to_string(label + 1)
                               : "b" + std::to_string(label - whites + 1);
    }

    int parse_label(const std::string& name) const {
        if (name.size() < 2 || (name[0] != 'w' && name[0] != 'b'))
            throw std::invalid_argument("bad label: " + name);
        int k = std::stoi(name.substr(1));
        int label = name[0] == 'w' ? k - 1 : whites + k - 1;
        if (k < 1 || label >= size() || (name[0] == 'w' && k > whites))
            throw std::invalid_argument("label outside painted set: " + name);
        return label;
    }
};

// Hard representation limit (masks are 32-bit); the CLI enforces the softer
// documented cap of 8 unless overridden.
inline void check_painted_set(const PaintedSet& s, int hard_cap = 20) {
    if (s.whites < 0 || s.blacks < 0 || s.size() < 1)
        throw std::invalid_argument("painted set needs at least one label");
    if (s.size() > hard_cap)
        throw std::invalid_argument("painted set too large for mask representation");
}

} // namespace painted
