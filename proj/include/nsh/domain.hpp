#pragma once

#include <array>
#include <string>
#include <vector>

namespace nsh {

enum class DomainKind { NeumannBox, SkewTorus };

// Computational cell: an axis-aligned box with sliding-wall (Neumann) sides,
// or a flat torus spanned by lattice generators. The stretch factor R scales
// the cell multiplicatively; volume scales as R^n.
struct DomainSpec {
  DomainKind kind = DomainKind::NeumannBox;
  int n = 0;
  std::vector<double> lengths;     // box: base side lengths, size n
  std::vector<double> generators;  // torus: n*n column-major lattice matrix
  double stretch = 1.0;            // R >= 1 nominally; any positive value accepted

  double base_volume() const;
  double volume() const;  // stretch^n * base_volume

  // Side length / generator column of the stretched cell.
  double length(int axis) const;                   // box only
  std::array<double, 3> generator(int col) const;  // torus only

  // Dual-lattice column g_k = 2*pi*(A_R^{-T}) e_k (torus only).
  std::array<double, 3> dual_generator(int col) const;

  bool is_box() const { return kind == DomainKind::NeumannBox; }
  bool is_torus() const { return kind == DomainKind::SkewTorus; }

  std::string describe() const;
};

DomainSpec make_box(const std::vector<double>& lengths, double R = 1.0);
DomainSpec make_torus(int n, const std::vector<double>& generators_col_major,
                      double R = 1.0);

// Generic entry point; dims is lengths for a box, the column-major generator
// matrix for a torus (n inferred as sqrt of its size).
DomainSpec make_domain(DomainKind kind, const std::vector<double>& dims,
                       double R = 1.0);

// Same cell with a different stretch factor.
DomainSpec with_stretch(const DomainSpec& d, double R);

}  // namespace nsh
