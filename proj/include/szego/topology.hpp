#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szego/symbol.hpp"

namespace szego {

enum class SymmetryClass { D, BDI, AIII, unclassified };
std::string to_string(SymmetryClass c);

struct ClassInfo {
  SymmetryClass cls = SymmetryClass::unclassified;
  // chiral split: phi[S,S] = phi[T,T] = 0, B = phi[S,T]
  std::vector<int> S, T;
};

// checked on a grid to 1e-10 relative:
//   D:    phi(theta) = conj(phi(-theta)) and phi^dagger = -phi
//   BDI:  D plus a chiral split
//   AIII: phi Hermitian plus a chiral split
ClassInfo detect_class(const Symbol& s);

Symbol chiral_block(const Symbol& s, const ClassInfo& info);

// sgn(Pf phi(1) Pf phi(-1)); class D or BDI
int kitaev_index(const Symbol& s);

// winding of det B; class BDI or AIII
int winding_index(const Symbol& s);

struct IndexReport {
  SymmetryClass cls = SymmetryClass::unclassified;
  std::optional<int> kitaev;
  std::optional<int> winding;
  std::optional<int> predicted_pairs;  // absent when unclassified
};

IndexReport predict_zero_modes(const Symbol& s);

}  // namespace szego
