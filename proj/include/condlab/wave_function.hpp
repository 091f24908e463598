#pragma once

#include <functional>
#include <iosfwd>

#include "condlab/grid.hpp"
#include "condlab/region.hpp"
#include "condlab/types.hpp"

namespace condlab {

/// Complex single-particle wave function sampled on a Grid. Samples vanish
/// (exactly) at grid points outside the declared support.
class WaveFunction {
 public:
  /// Validates that `samples` vanish off the support mask.
  WaveFunction(Grid grid, Region support, CVector samples);

  /// Evaluates `fn` on the grid points inside `support`, zero elsewhere.
  static WaveFunction sample(const Grid& grid, const Region& support,
                             const std::function<Complex(const Vec&)>& fn);
  static WaveFunction zero(const Grid& grid, const Region& support);

  const Grid& grid() const { return grid_; }
  const Region& support() const { return support_; }
  const CVector& samples() const { return samples_; }
  Complex operator[](Index flat) const { return samples_(flat); }

  /// Riemann sum h^d sum |f|^2.
  double squared_norm() const { return squared_norm_; }
  double norm() const;

  WaveFunction normalized() const;

  friend WaveFunction operator*(Complex alpha, const WaveFunction& f);
  /// Sum/difference of functions with identical grids and supports.
  friend WaveFunction operator+(const WaveFunction& f, const WaveFunction& g);
  friend WaveFunction operator-(const WaveFunction& f, const WaveFunction& g);

 private:
  WaveFunction(Grid grid, Region support, CVector samples, bool validated);

  Grid grid_;
  Region support_;
  CVector samples_;
  double squared_norm_;
};

/// <f, g> = h^d sum conj(f) g, antilinear in f.
Complex inner(const WaveFunction& f, const WaveFunction& g);

/// (e^{ixP} f)(z) = f(z - x) for a lattice displacement x.
WaveFunction translate(const WaveFunction& f, const Vec& shift);
WaveFunction translate(const WaveFunction& f, const IVec& shift);

/// Localized plane wave |O|^{-1/2} e^{ikx} on `region`, normalized with the
/// discrete volume of the region's grid mask.
WaveFunction plane_wave_mode(const Grid& grid, const Region& region, const Vec& k);

/// Discrete volume (number of mask points times cell volume).
double grid_volume(const Grid& grid, const Region& region);

/// (2 pi)^{-d/2} h^d sum e^{-ipx} f(x).
Complex fourier_amplitude(const WaveFunction& f, const Vec& p);

/// f - <s0, f> s0 with s0 the normalized constant mode on `region`.
WaveFunction zero_mean_project(const WaveFunction& f, const Region& region);

/// f - <s, f> s for a normalized s.
WaveFunction project_out(const WaveFunction& f, const WaveFunction& s);

/// Normalized smooth bump on `support`: a product of raised cosines
/// cos^2(pi (x_a - c_a) / L0) for boxes, cos^2(pi r / L0) for balls.
WaveFunction smooth_bump(const Grid& grid, const Region& support);

/// CSV dump: one column per axis index, then re, im.
void write_csv(std::ostream& out, const WaveFunction& f);

}  // namespace condlab
