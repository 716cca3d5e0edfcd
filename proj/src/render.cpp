#include "fanforge/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fanforge/errors.hpp"
#include "fanforge/verify.hpp"

namespace fanforge {

const char* figure_name(FigureKind k) {
  switch (k) {
    case FigureKind::kTiling: return "tiling";
    case FigureKind::kFan: return "fan";
    case FigureKind::kEarring: return "earring";
  }
  return "?";
}

FigureKind parse_figure(const std::string& name) {
  for (FigureKind k : {FigureKind::kTiling, FigureKind::kFan, FigureKind::kEarring}) {
    if (name == figure_name(k)) return k;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown figure kind '" + name + "' (expected tiling, fan or earring)");
}

std::string figure_file_name(FigureKind kind, int depth, int truncation) {
  return std::string("figure-") + figure_name(kind) + "-K" + std::to_string(depth) + "-N" +
         std::to_string(truncation) + ".svg";
}

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string num(const Rational& q) { return num(q.get_d()); }

class Svg {
 public:
  Svg(double width, double height) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
         << num(height) << "\">\n"
         << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" fill=\"#ffffff\"/>\n";
  }
  std::ostringstream& raw() { return out_; }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

// Math-to-pixel map with y pointing up: x in [x0, x1], y in [y0, y1].
struct Frame {
  double sx, sy, tx, ty;
  Frame(const RenderOptions& o, double x0, double x1, double y0, double y1) {
    sx = (o.width - 2 * o.margin) / (x1 - x0);
    sy = (o.height - 2 * o.margin) / (y1 - y0);
    tx = o.margin - x0 * sx;
    ty = o.margin + y1 * sy;
  }
  std::string transform() const {
    return "matrix(" + num(sx) + " 0 0 " + num(-sy) + " " + num(tx) + " " + num(ty) + ")";
  }
};

struct StageRange {
  int first;
  int last;
  bool empty() const { return last < first; }
};

StageRange stage_range(const ConstructionState& state, const RenderOptions& o) {
  const int last = o.stage_last < 0 ? state.depth() : std::min(o.stage_last, state.depth());
  return StageRange{std::max(o.stage_first, 0), last};
}

struct Piece {
  Point from;
  Point to;
};

// Plateau pieces over the Cantor intervals at drawing depth, then the jump
// segments, all inside the copy's column.
std::vector<Piece> copy_pieces(const PlacedCopy& copy, int cantor_depth) {
  std::vector<Piece> out;
  const Address& sigma = copy.rect().address;
  const int depth = std::max(cantor_depth, sigma.length());
  const int extra = depth - sigma.length();
  const auto& values = copy.plateau_values();
  const auto& jumps = copy.jumps();
  for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << extra); ++tail) {
    const Address leaf = Address::from_bits((sigma.bits() << extra) | tail, depth);
    const BasicInterval span = basic_interval(leaf);
    std::size_t k = copy.jumps_before(span.left);
    Rational start = span.left;
    while (k < jumps.size() && jumps[k].c < span.right) {
      out.push_back({{start, values[k]}, {jumps[k].c, values[k]}});
      start = jumps[k].c;
      ++k;
    }
    out.push_back({{start, values[k]}, {span.right, values[k]}});
  }
  for (const ImageJump& j : jumps) out.push_back({{j.c, j.low}, {j.c, j.high}});
  return out;
}

}  // namespace

std::string render_tiling(const ConstructionState& state, const RenderOptions& o) {
  Svg svg(o.width, o.height);
  const StageRange range = stage_range(state, o);
  double r_min = o.r_min, r_max = o.r_max;
  if (r_min == 0 && r_max == 0) {
    r_min = -std::max(state.depth(), 0);
    r_max = std::max(state.depth(), 0) + 1;
  }
  if (!(r_min < r_max)) throw Error(ErrorCode::kInvalidArgument, "empty vertical range");
  if (range.empty()) return svg.finish();
  const Frame frame(o, 0, 1, r_min, r_max);
  auto& out = svg.raw();
  out << "<g transform=\"" << frame.transform() << "\" fill=\"none\">\n";
  for (int s = range.first; s <= range.last; ++s) {
    const TilingStage& stage = state.stages()[static_cast<std::size_t>(s)];
    out << "<g class=\"stage\" data-stage=\"" << s << "\">\n";
    if (o.draw_rects && s >= 1) {
      for (std::size_t i = 0; i < stage.rects.size(); ++i) {
        const Rect& r = stage.rects[i];
        const BasicInterval span = basic_interval(r.address);
        out << "<rect class=\"rect\" data-index=\"" << i << "\" x=\"" << num(span.left)
            << "\" y=\"" << num(r.bottom) << "\" width=\"" << num(span.right - span.left)
            << "\" height=\"" << num(r.height()) << "\" stroke=\"#3366aa\" stroke-width=\""
            << num(o.rect_stroke) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
      }
    }
    if (o.draw_copies) {
      for (CopyId id : stage.copies) {
        out << "<g class=\"copy\" id=\"copy-" << id << "\"><path d=\"";
        for (const Piece& p : copy_pieces(state.copy(id), o.cantor_depth)) {
          out << "M" << num(p.from.c) << " " << num(p.from.r) << "L" << num(p.to.c) << " "
              << num(p.to.r);
        }
        out << "\" stroke=\"#000000\" stroke-width=\"" << num(o.copy_stroke)
            << "\" vector-effect=\"non-scaling-stroke\"/>";
        if (o.draw_midpoints) {
          out << "<path class=\"midpoint\" d=\"";
          for (const ImageJump& j : state.copy(id).jumps()) {
            out << "M" << num(j.c) << " " << num(j.midpoint) << "l0 0";
          }
          out << "\" stroke=\"#cc2222\" stroke-width=\"3\" stroke-linecap=\"round\" "
                 "vector-effect=\"non-scaling-stroke\"/>";
        }
        out << "</g>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</g>\n";
  return svg.finish();
}

std::string render_fan(const ConstructionState& state, const RenderOptions& o) {
  Svg svg(o.width, o.height);
  const StageRange range = stage_range(state, o);
  const Frame frame(o, 0, 1, 0, 1);
  auto& out = svg.raw();

  out << "<metadata>";
  if (!range.empty()) {
    out << "{\"max_fan_diameter\":[";
    for (int s = range.first; s <= range.last; ++s) {
      double mx = 0;
      for (CopyId id : state.stages()[static_cast<std::size_t>(s)].copies) {
        mx = std::max(mx, fan_diameter(state.copy(id)));
      }
      out << (s == range.first ? "" : ",") << "{\"stage\":" << s << ",\"value\":" << num(mx) << "}";
    }
    out << "]}";
  }
  out << "</metadata>\n";

  out << "<g transform=\"" << frame.transform() << "\" fill=\"none\">\n";
  out << "<path class=\"spokes\" d=\"";
  const int depth = std::clamp(o.cantor_depth, 0, 16);
  for (const Address& a : Address::all_of_length(depth)) {
    const BasicInterval span = basic_interval(a);
    for (const Rational& c : {span.left, span.right}) out << "M0.5 0L" << num(c) << " 1";
  }
  out << "\" stroke=\"#bbbbbb\" stroke-width=\"0.4\" vector-effect=\"non-scaling-stroke\"/>\n";
  for (int s = range.first; s <= range.last && !range.empty() && o.draw_copies; ++s) {
    out << "<g class=\"stage\" data-stage=\"" << s << "\">\n";
    for (CopyId id : state.stages()[static_cast<std::size_t>(s)].copies) {
      out << "<path class=\"copy\" id=\"copy-" << id << "\" d=\"";
      for (const Piece& p : copy_pieces(state.copy(id), o.cantor_depth)) {
        const PlanePoint a = fan_point(p.from);
        const PlanePoint b = fan_point(p.to);
        out << "M" << num(a.x) << " " << num(a.y) << "L" << num(b.x) << " " << num(b.y);
      }
      out << "\" stroke=\"#000000\" stroke-width=\"" << num(o.copy_stroke)
          << "\" vector-effect=\"non-scaling-stroke\"/>\n";
      if (o.draw_midpoints) {
        out << "<path class=\"midpoint\" d=\"";
        for (const ImageJump& j : state.copy(id).jumps()) {
          const PlanePoint q = fan_point(Point{j.c, j.midpoint});
          out << "M" << num(q.x) << " " << num(q.y) << "l0 0";
        }
        out << "\" stroke=\"#cc2222\" stroke-width=\"3\" stroke-linecap=\"round\" "
               "vector-effect=\"non-scaling-stroke\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "<circle class=\"vertex\" cx=\"0.5\" cy=\"0\" r=\"0.008\" fill=\"#cc2222\"/>\n";
  out << "</g>\n";
  return svg.finish();
}

std::string render_earring(const Earring& earring, const RenderOptions& o) {
  Svg svg(o.width, o.height);
  auto& out = svg.raw();
  const double base_x = o.margin;
  const double base_y = o.height / 2;
  double largest = 0;
  for (const Loop& l : earring.loops) largest = std::max(largest, l.height.get_d());
  const double span = std::min(o.width - 2 * o.margin, o.height - 2 * o.margin);
  out << "<g class=\"earring\" data-owner=\"" << earring.owner << "\" fill=\"none\">\n";
  for (const Loop& l : earring.loops) {
    const double radius = largest > 0 ? span / 2 * (l.height.get_d() / largest) : 0;
    out << "<circle class=\"loop\" data-m=\"" << l.jump << "\" cx=\"" << num(base_x + radius)
        << "\" cy=\"" << num(base_y) << "\" r=\"" << num(radius)
        << "\" stroke=\"#000000\" stroke-width=\"" << num(o.copy_stroke) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<circle class=\"base\" cx=\"" << num(base_x) << "\" cy=\"" << num(base_y)
      << "\" r=\"3\" fill=\"#cc2222\"/>\n";
  return svg.finish();
}

std::string render_figure(const ConstructionState& state, const RenderOptions& o) {
  switch (o.kind) {
    case FigureKind::kTiling: return render_tiling(state, o);
    case FigureKind::kFan: return render_fan(state, o);
    case FigureKind::kEarring: {
      const SpaceModel model(state);
      return render_earring(collapse_E(model, o.earring_copy), o);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown figure kind");
}

}  // namespace fanforge
