#pragma once

#include <vector>

#include "nsh/field.hpp"

namespace nsh {

// Even reflection of a sliding-wall box solution. The canonical periodic cell
// is the 2x-per-axis doubled box; its Fourier coefficients are derived exactly
// from the cosine coefficients. `counts` replicates the base box per axis in
// the assembled value grid (counts = 2 is the canonical cell).
struct ReflectionTiling {
  SpectralField base;             // the box field
  std::vector<int> counts;        // copies of the base box per axis
  SpectralField cell;             // torus field on the doubled cell
  std::vector<double> assembled;  // mirror-assembled values, axis 0 slowest
  std::vector<int> assembled_dims;
};

ReflectionTiling reflect_extend(const SpectralField& U,
                                const std::vector<int>& counts);

// Restriction of the assembled grid back to the base box grid.
std::vector<double> restrict_to_base(const ReflectionTiling& t);

// Relative strong-form residual of a torus field (exact spectral derivatives,
// dealiased nonlinearity).
double residual_entire(const SpectralField& torus_field, const Params& p);

// Max over the grid of |u(Rx) - u(x)| for each axis reflection R of the
// doubled cell; exact evenness of the extension.
double evenness_error(const ReflectionTiling& t);

// Max over interface planes of the normal derivative of the cell field.
double interface_normal_derivative(const ReflectionTiling& t);

}  // namespace nsh
