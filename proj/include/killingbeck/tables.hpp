#pragma once

#include <span>

// Built-in reference energies for the two symmetry modes, used by the table
// commands and the variant pre-study. Shared caption parameters:
// phi_AB = 2.0, M = 5.0, m = 1 (e = c = 1); the Coulomb strength is not part
// of the reference grid (it drops out of the closed-form condition) and is
// taken as 0. Each row is one (n, b, a, B) cell; rows are ordered as in the
// published layout with B varying fastest.

namespace kb {

struct TableRow {
  int n;
  double b, a, B;
  double E;  // reference energy
};

inline constexpr double kTablePhi = 2.0;
inline constexpr double kTableM = 5.0;
inline constexpr int kTableMagQuantum = 1;

// Spin-symmetric reference energies.
inline constexpr TableRow kTable1[] = {
    {1, 0.005, 0.001, 1.0, 5.273485251}, {1, 0.005, 0.001, 1.2, 5.323036087}, {1, 0.005, 0.001, 1.5, 5.397166864},
    {1, 0.005, 0.003, 1.0, 5.294470611}, {1, 0.005, 0.003, 1.2, 5.340782661}, {1, 0.005, 0.003, 1.5, 5.411507210},
    {1, 0.005, 0.005, 1.0, 5.314084649}, {1, 0.005, 0.005, 1.2, 5.357668430}, {1, 0.005, 0.005, 1.5, 5.425374208},
    {1, 0.007, 0.001, 1.0, 5.272596822}, {1, 0.007, 0.001, 1.2, 5.322404523}, {1, 0.007, 0.001, 1.5, 5.396754568},
    {1, 0.007, 0.003, 1.0, 5.293698069}, {1, 0.007, 0.003, 1.2, 5.340212048}, {1, 0.007, 0.003, 1.5, 5.411121852},
    {1, 0.007, 0.005, 1.0, 5.313401395}, {1, 0.007, 0.005, 1.2, 5.357148110}, {1, 0.007, 0.005, 1.5, 5.425012512},
    {1, 0.009, 0.001, 1.0, 5.271412478}, {1, 0.009, 0.001, 1.2, 5.321562555}, {1, 0.009, 0.001, 1.5, 5.396204891},
    {1, 0.009, 0.003, 1.0, 5.292668162}, {1, 0.009, 0.003, 1.2, 5.339451317}, {1, 0.009, 0.003, 1.5, 5.410608083},
    {1, 0.009, 0.005, 1.0, 5.312490493}, {1, 0.009, 0.005, 1.2, 5.356454415}, {1, 0.009, 0.005, 1.5, 5.424530285},
    {2, 0.009, 0.005, 1.0, 5.423823650}, {2, 0.009, 0.005, 1.2, 5.482709813}, {2, 0.009, 0.005, 1.5, 5.573630596},
    {3, 0.009, 0.005, 1.0, 5.533240322}, {3, 0.009, 0.005, 1.2, 5.606436282}, {3, 0.009, 0.005, 1.5, 5.719144859},
    {4, 0.009, 0.005, 1.0, 5.640843664}, {4, 0.009, 0.005, 1.2, 5.727788566}, {4, 0.009, 0.005, 1.5, 5.861330050},
};

// Pseudo-spin symmetric reference energies.
inline constexpr TableRow kTable2[] = {
    {1, 0.005, 0.001, 1.0, 5.263670129}, {1, 0.005, 0.001, 1.2, 5.314776171}, {1, 0.005, 0.001, 1.5, 5.390526897},
    {1, 0.005, 0.003, 1.0, 5.264248822}, {1, 0.005, 0.003, 1.2, 5.315346229}, {1, 0.005, 0.003, 1.5, 5.391084622},
    {1, 0.005, 0.005, 1.0, 5.264828765}, {1, 0.005, 0.005, 1.2, 5.315917291}, {1, 0.005, 0.005, 1.5, 5.391643106},
    {1, 0.007, 0.001, 1.0, 5.263669496}, {1, 0.007, 0.001, 1.2, 5.314775550}, {1, 0.007, 0.001, 1.5, 5.390526294},
    {1, 0.007, 0.003, 1.0, 5.264248187}, {1, 0.007, 0.003, 1.2, 5.315345607}, {1, 0.007, 0.003, 1.5, 5.391084018},
    {1, 0.007, 0.005, 1.0, 5.264828129}, {1, 0.007, 0.005, 1.2, 5.315916668}, {1, 0.007, 0.005, 1.5, 5.391642502},
    {1, 0.009, 0.001, 1.0, 5.263668651}, {1, 0.009, 0.001, 1.2, 5.314774722}, {1, 0.009, 0.001, 1.5, 5.390525490},
    {1, 0.009, 0.003, 1.0, 5.264247341}, {1, 0.009, 0.003, 1.2, 5.315344778}, {1, 0.009, 0.003, 1.5, 5.391083213},
    {1, 0.009, 0.005, 1.0, 5.264827281}, {1, 0.009, 0.005, 1.2, 5.315915837}, {1, 0.009, 0.005, 1.5, 5.391641695},
    {2, 0.009, 0.005, 1.0, 5.360133315}, {2, 0.009, 0.005, 1.2, 5.428762792}, {2, 0.009, 0.005, 1.5, 5.530111950},
    {3, 0.009, 0.005, 1.0, 5.454107542}, {3, 0.009, 0.005, 1.2, 5.539632933}, {3, 0.009, 0.005, 1.5, 5.665504273},
    {4, 0.009, 0.005, 1.0, 5.546810297}, {4, 0.009, 0.005, 1.2, 5.648634249}, {4, 0.009, 0.005, 1.5, 5.798024647},
};

inline std::span<const TableRow> table1_rows() { return kTable1; }
inline std::span<const TableRow> table2_rows() { return kTable2; }

}  // namespace kb
