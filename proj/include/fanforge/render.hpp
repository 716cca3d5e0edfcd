#pragma once

// Deterministic SVG figures: the tiling in C x R, the Cantor fan, earrings.

#include <string>

#include "fanforge/decomp.hpp"

namespace fanforge {

enum class FigureKind { kTiling, kFan, kEarring };

const char* figure_name(FigureKind k);
/// Throws kInvalidArgument for unknown names.
FigureKind parse_figure(const std::string& name);

struct RenderOptions {
  FigureKind kind = FigureKind::kTiling;
  double width = 900;   // px
  double height = 900;  // px
  double margin = 20;   // px
  // Stages drawn; stage_last < stage_first draws nothing. Negative last: up to K.
  int stage_first = 0;
  int stage_last = -1;
  // Vertical range of the tiling figure; both zero: [-K, K+1].
  double r_min = 0;
  double r_max = 0;
  double copy_stroke = 0.8;
  double rect_stroke = 0.5;
  bool draw_midpoints = false;
  bool draw_rects = true;
  bool draw_copies = true;
  int cantor_depth = 5;
  CopyId earring_copy = 0;
};

std::string render_tiling(const ConstructionState& state, const RenderOptions& options);
std::string render_fan(const ConstructionState& state, const RenderOptions& options);
std::string render_earring(const Earring& earring, const RenderOptions& options);

/// figure-<kind>-K<k>-N<n>.svg
std::string figure_file_name(FigureKind kind, int depth, int truncation);

/// Dispatch on options.kind.
std::string render_figure(const ConstructionState& state, const RenderOptions& options);

}  // namespace fanforge
