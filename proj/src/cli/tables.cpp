#include "iqy/tables.hpp"

#include <array>

namespace iqy::tables {

namespace {

constexpr std::array<DoubletRow, 8> kPspin{{
    {{1, -1, "1s1/2", "-0.495018", "-0.491129"}, {0, 2, "0d3/2", "-0.487533", "-0.491129"}},
    {{1, -2, "1p3/2", "-0.491129", "-0.487533"}, {0, 3, "0f5/2", "-0.484054", "-0.487533"}},
    {{1, -3, "1d5/2", "-0.487533", "-0.484054"}, {0, 4, "0g7/2", "-0.480635", "-0.484054"}},
    {{1, -4, "1f7/2", "-0.484054", "-0.480635"}, {0, 5, "0h9/2", "-0.477254", "-0.480635"}},
    {{2, -1, "2s1/2", "-0.491152", "-0.487539"}, {1, 2, "1d3/2", "-0.484057", "-0.487539"}},
    {{2, -2, "2p3/2", "-0.487539", "-0.484057"}, {1, 3, "1d3/2", "-0.480637", "-0.484057"}},
    {{2, -3, "2d5/2", "-0.484057", "-0.480637"}, {1, 4, "1g7/2", "-0.477255", "-0.480637"}},
    {{2, -4, "2f7/2", "-0.480637", "-0.477255"}, {1, 5, "1h9/2", "-0.473898", "-0.477255"}},
}};

constexpr std::array<DoubletRow, 8> kSpin{{
    {{0, -2, "0p3/2", "1.000000", "0.994385"}, {0, 1, "0p1/2", "0.990029", "0.994385"}},
    {{0, -3, "0d5/2", "0.994385", "0.990029"}, {0, 2, "0d3/2", "0.985992", "0.990029"}},
    {{0, -4, "0f7/2", "0.990029", "0.985992"}, {0, 3, "0f5/2", "0.982086", "0.985992"}},
    {{0, -5, "0g9/2", "0.985992", "0.982086"}, {0, 4, "0g7/2", "0.978249", "0.982086"}},
    {{1, -2, "1p3/2", "0.994367", "0.990023"}, {1, 1, "1p1/2", "0.985988", "0.990023"}},
    {{1, -3, "1d5/2", "0.990023", "0.985988"}, {1, 2, "1d3/2", "0.982084", "0.985988"}},
    {{1, -4, "1f7/2", "0.985988", "0.982084"}, {1, 3, "1f5/2", "0.978247", "0.982084"}},
    {{1, -5, "1g9/2", "0.982084", "0.978247"}, {1, 4, "1g7/2", "0.974455", "0.978247"}},
}};

}  // namespace

std::span<const DoubletRow> pspin_table() {
    return kPspin;
}

std::span<const DoubletRow> spin_table() {
    return kSpin;
}

std::span<const DoubletRow> table_for(dirac::Symmetry symmetry) {
    return symmetry == dirac::Symmetry::pspin ? pspin_table() : spin_table();
}

}  // namespace iqy::tables
