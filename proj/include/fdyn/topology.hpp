#pragma once

// Pixel-level evidence for the shape of the immediate basin A_t: labels the
// escaping set of a dynamical-plane grid and checks whether the component of
// the complement holding the pole z = 1 is symmetric (contains 0 and -1).

#include <string>
#include <vector>

#include "fdyn/family.hpp"
#include "fdyn/grid.hpp"

namespace fdyn {

inline constexpr int kProbeMaxIter = 2000;

struct LabelGrid {
  GridSpec spec;
  /// 0 for Julia-set pixels, else a component id >= 1. A pixel counts as
  /// Julia when it does not escape within budget or when its Green-function
  /// distance estimate to the Julia set is below one pixel.
  std::vector<int> labels;
  /// Escape index per pixel, -1 when not escaping.
  std::vector<int> levels;
  int component_count = 0;
  /// Label shared by the four corners; 0 when they disagree.
  int component_of_farfield = 0;

  int at(int i, int j) const { return labels[spec.index(i, j)]; }
  /// Label of the pixel nearest z; throws DomainError outside the grid.
  int component_of(Complex z) const;
  int level_of(Complex z) const;
};

/// Escape test and distance estimate on every pixel, then 4-connected
/// labeling of the non-Julia pixels. Requires the grid to contain |z| <= 3.
LabelGrid label_escape_grid(const Parameter& t, const GridSpec& spec, int max_iter = kProbeMaxIter,
                            int workers = 0);

enum class ProbeVerdict { CantorLocus, JordanEvidence, NonJordanEvidence, Inconclusive };

struct ProbeReport {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  int resolution = 0;
  bool pole_component_contains_zero = false;
  bool pole_component_contains_minus_pole = false;
};

/// Evidence at the grid's resolution, never a proof. CantorLocus when t is at
/// escape level 0, Inconclusive when the critical orbit does not escape.
/// Otherwise D is the component of (grid minus far-field basin) holding the
/// pixel nearest z = 1: JordanEvidence when D holds both 0 and -1,
/// NonJordanEvidence when it holds neither, Inconclusive when it holds one,
/// when the pole pixel is itself far-field, when D has fewer than 4 pixels,
/// or when a far-field pixel lies within 2 pixels of z = 0.
ProbeReport sierpinski_probe(const Parameter& t, const GridSpec& spec, int max_iter = kProbeMaxIter,
                             int workers = 0);

std::string to_string(ProbeVerdict v);
/// "verdict resolution contains_zero contains_minus_pole"
std::string to_record(const ProbeReport& r);

}  // namespace fdyn
