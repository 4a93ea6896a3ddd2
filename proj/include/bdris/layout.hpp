#pragma once

#include <vector>

namespace bdris {

/// Partition of the LM surface antennas into L sectors and M cells.
///
/// Sector l (1-based) holds the M co-facing antennas {(l-1)M+1, ..., lM};
/// cell m holds the L interconnected antennas {m, M+m, ..., (L-1)M+m}, one
/// per sector. Internally antennas are addressed 0-based: antenna i = l0*M+m0
/// sits in sector l0+1 and cell m0+1. Public index-set accessors use the
/// 1-based convention; everything else in the library is 0-based.
class SectorLayout {
public:
    /// upa_x * upa_y must equal cells; throws std::invalid_argument otherwise
    /// or when sectors < 2 or cells < 1.
    SectorLayout(int sectors, int cells, int upa_x, int upa_y);

    /// Degenerate 1-row array shape (upa_x = cells, upa_y = 1).
    SectorLayout(int sectors, int cells);

    int sectors() const noexcept { return sectors_; }
    int cells() const noexcept { return cells_; }
    int upa_x() const noexcept { return upa_x_; }
    int upa_y() const noexcept { return upa_y_; }
    int total() const noexcept { return sectors_ * cells_; }

    /// 1-based antenna indices of cell m (m in 1..M), ascending.
    std::vector<int> cell_indices(int m) const;

    /// 1-based antenna indices of sector l (l in 1..L), ascending.
    std::vector<int> sector_indices(int l) const;

    /// 0-based flat index of the cell-m0 antenna in sector l0.
    int flat(int l0, int m0) const noexcept { return l0 * cells_ + m0; }

private:
    int sectors_;
    int cells_;
    int upa_x_;
    int upa_y_;
};

}  // namespace bdris
