#pragma once

// Reference doublet tables for M = 5 fm^-1, V0 = 1, Cps = -5.5 fm^-1 and
// Cs = 6 fm^-1, kept as the printed strings so equality checks are exact.

#include "iqy/dirac_iqy.hpp"

#include <span>
#include <string_view>

namespace iqy::tables {

struct DoubletEntry {
    int n = 0;
    int kappa = 0;
    std::string_view label;
    std::string_view e_h5;  // H = 5
    std::string_view e_h0;  // H = 0
};

struct DoubletRow {
    DoubletEntry aligned;    // kappa < 0
    DoubletEntry unaligned;  // kappa > 0
};

/// Pseudospin table; the unaligned column carries the spectroscopic radial number.
std::span<const DoubletRow> pspin_table();

/// Spin table.
std::span<const DoubletRow> spin_table();

std::span<const DoubletRow> table_for(dirac::Symmetry symmetry);

}  // namespace iqy::tables
