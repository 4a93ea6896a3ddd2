#include "bdris/layout.hpp"

#include <stdexcept>
#include <string>

namespace bdris {

SectorLayout::SectorLayout(int sectors, int cells, int upa_x, int upa_y)
    : sectors_(sectors), cells_(cells), upa_x_(upa_x), upa_y_(upa_y) {
    if (sectors < 2) {
        throw std::invalid_argument("SectorLayout: sector count must be >= 2, got " +
                                    std::to_string(sectors));
    }
    if (cells < 1) {
        throw std::invalid_argument("SectorLayout: cell count must be >= 1, got " +
                                    std::to_string(cells));
    }
    if (upa_x < 1 || upa_y < 1 || upa_x * upa_y != cells) {
        throw std::invalid_argument("SectorLayout: array shape " + std::to_string(upa_x) +
                                    "x" + std::to_string(upa_y) + " does not cover " +
                                    std::to_string(cells) + " antennas per sector");
    }
}

SectorLayout::SectorLayout(int sectors, int cells)
    : SectorLayout(sectors, cells, cells, 1) {}

std::vector<int> SectorLayout::cell_indices(int m) const {
    if (m < 1 || m > cells_) {
        throw std::domain_error("cell index " + std::to_string(m) + " outside 1.." +
                                std::to_string(cells_));
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(sectors_));
    for (int l = 0; l < sectors_; ++l) {
        out.push_back(l * cells_ + m);
    }
    return out;
}

std::vector<int> SectorLayout::sector_indices(int l) const {
    if (l < 1 || l > sectors_) {
        throw std::domain_error("sector index " + std::to_string(l) + " outside 1.." +
                                std::to_string(sectors_));
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cells_));
    for (int m = 1; m <= cells_; ++m) {
        out.push_back((l - 1) * cells_ + m);
    }
    return out;
}

}  // namespace bdris
