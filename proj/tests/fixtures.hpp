#pragma once

#include "bsloc/surface.hpp"

namespace bsloc::fixtures {

inline Rational eps() { return Rational(1, 20); }

inline HolonomyProfile line(Rational a, Rational b) {
  return HolonomyProfile({{0.0, Winding(a)}, {1.0, Winding(b)}});
}

inline Piece bs_plus() { return Piece::annulus(line(-eps(), eps())); }
inline Piece bs_minus() { return Piece::annulus(line(eps(), -eps())); }
inline Piece disk_plus() { return Piece::disk(line(0, eps())); }
inline Piece disk_minus() { return Piece::disk(line(0, -eps())); }
inline Piece pants_small() { return Piece::pants(Winding(eps()), Winding(eps()), Winding(Rational(1) - 2 * eps())); }
inline Piece pants_large() {
  return Piece::pants(Winding(Rational(1) - eps()), Winding(Rational(1) - eps()), Winding(2 * eps()));
}

/// Annulus with u from 1/2 to N + 1/2, ends glued: a torus of degree N.
inline SurfaceAssembly torus(long long n) {
  SurfaceAssembly a;
  a.pieces.push_back(Piece::annulus(HolonomyProfile(
      {{0.0, Winding(Rational(1, 2))}, {static_cast<double>(n), Winding(Rational(1, 2) + n)}})));
  a.gluings.push_back({{0, 0}, {0, 1}});
  return a;
}

inline SurfaceAssembly sphere() {
  SurfaceAssembly a;
  a.pieces = {disk_plus(), disk_minus()};
  a.gluings.push_back({{0, 0}, {1, 0}});
  return a;
}

/// Flat genus-g surface: g-1 small and g-1 large pants, each small one glued
/// to its large partner along two circles and to the next large one along the
/// third.
inline SurfaceAssembly flat_genus(int g) {
  const Rational a(3, 10), b(3, 10), c(2, 5);
  SurfaceAssembly s;
  const int m = g - 1;
  for (int i = 0; i < m; ++i) {
    s.pieces.push_back(Piece::pants(Winding(a), Winding(b), Winding(c)));
    s.pieces.push_back(Piece::pants(Winding(1 - a), Winding(1 - b), Winding(1 - c)));
  }
  for (int i = 0; i < m; ++i) {
    std::size_t sm = 2 * static_cast<std::size_t>(i), lg = sm + 1;
    std::size_t next_sm = 2 * static_cast<std::size_t>((i + 1) % m);
    s.gluings.push_back({{sm, 0}, {lg, 0}});
    s.gluings.push_back({{sm, 1}, {lg, 1}});
    s.gluings.push_back({{lg, 2}, {next_sm, 2}});
  }
  return s;
}

}  // namespace bsloc::fixtures
