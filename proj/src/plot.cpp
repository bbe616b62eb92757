#include "drsplit/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace drsplit {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#8c564b", "#e377c2"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string fmt(double v) {
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct WorldBox {
  double x0 = std::numeric_limits<double>::max();
  double y0 = std::numeric_limits<double>::max();
  double x1 = std::numeric_limits<double>::lowest();
  double y1 = std::numeric_limits<double>::lowest();

  void include(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  void include(const Vector& v) { include(v[0], v[1]); }
  void include_finite_box(const Box& b) {
    if (std::isfinite(b.lower[0]) && std::isfinite(b.lower[1])) include(b.lower[0], b.lower[1]);
    if (std::isfinite(b.upper[0]) && std::isfinite(b.upper[1])) include(b.upper[0], b.upper[1]);
  }
  void pad() {
    const double w = std::max(x1 - x0, 1e-6);
    const double h = std::max(y1 - y0, 1e-6);
    const double p = 0.1 * std::max(w, h);
    x0 -= p;
    y0 -= p;
    x1 += p;
    y1 += p;
  }
};

// Uniform world-to-canvas map (same scale on both axes, y flipped).
struct Camera {
  double scale;
  double ox;
  double oy;

  explicit Camera(const WorldBox& w) {
    const double sx = (kWidth - 2.0 * kMargin) / (w.x1 - w.x0);
    const double sy = (kHeight - 2.0 * kMargin) / (w.y1 - w.y0);
    scale = std::min(sx, sy);
    ox = kWidth / 2.0 - scale * (w.x0 + w.x1) / 2.0;
    oy = kHeight / 2.0 + scale * (w.y0 + w.y1) / 2.0;
  }
  double x(double wx) const { return ox + scale * wx; }
  double y(double wy) const { return oy - scale * wy; }
  double x(const Vector& v) const { return x(v[0]); }
  double y(const Vector& v) const { return y(v[1]); }
};

void line(std::string& svg, const Camera& cam, double ax, double ay, double bx,
          double by, const std::string& style) {
  svg += "<line x1=\"" + fmt(cam.x(ax)) + "\" y1=\"" + fmt(cam.y(ay)) + "\" x2=\"" +
         fmt(cam.x(bx)) + "\" y2=\"" + fmt(cam.y(by)) + "\" " + style + "/>\n";
}

void draw_set(std::string& svg, const Camera& cam, const ConvexSet& s,
              const std::string& color, bool dashed, double reach) {
  const std::string dash = dashed ? " stroke-dasharray=\"5 4\"" : "";
  const std::string stroke =
      "stroke=\"" + color + "\" stroke-width=\"1.5\" fill=\"none\"" + dash;

  struct Visitor {
    std::string& svg;
    const Camera& cam;
    const std::string& stroke;
    const std::string& color;
    double reach;

    void operator()(const AffineSubspace& a) const {
      if (a.directions.size() == 0) {
        svg += "<circle cx=\"" + fmt(cam.x(a.anchor)) + "\" cy=\"" + fmt(cam.y(a.anchor)) +
               "\" r=\"3\" fill=\"" + color + "\"/>\n";
        return;
      }
      if (a.directions.size() == 2) {
        svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" +
               fmt(kHeight) + "\" fill=\"" + color + "\" fill-opacity=\"0.06\"/>\n";
        return;
      }
      const Vector& u = a.directions.vectors[0];
      line(svg, cam, a.anchor[0] - reach * u[0], a.anchor[1] - reach * u[1],
           a.anchor[0] + reach * u[0], a.anchor[1] + reach * u[1], stroke);
    }
    void operator()(const Halfspace& h) const {
      const double nn = inner(h.normal, h.normal);
      const double fx = h.offset * h.normal[0] / nn;
      const double fy = h.offset * h.normal[1] / nn;
      const double len = std::sqrt(nn);
      const double tx = -h.normal[1] / len;
      const double ty = h.normal[0] / len;
      line(svg, cam, fx - reach * tx, fy - reach * ty, fx + reach * tx, fy + reach * ty,
           stroke);
    }
    void operator()(const Box& b) const {
      const double x0 = std::isfinite(b.lower[0]) ? b.lower[0] : -reach;
      const double y0 = std::isfinite(b.lower[1]) ? b.lower[1] : -reach;
      const double x1 = std::isfinite(b.upper[0]) ? b.upper[0] : reach;
      const double y1 = std::isfinite(b.upper[1]) ? b.upper[1] : reach;
      svg += "<rect x=\"" + fmt(cam.x(x0)) + "\" y=\"" + fmt(cam.y(y1)) + "\" width=\"" +
             fmt(cam.scale * (x1 - x0)) + "\" height=\"" + fmt(cam.scale * (y1 - y0)) +
             "\" " + stroke + "/>\n";
    }
    void operator()(const Ball& b) const {
      svg += "<circle cx=\"" + fmt(cam.x(b.center)) + "\" cy=\"" + fmt(cam.y(b.center)) +
             "\" r=\"" + fmt(cam.scale * b.radius) + "\" " + stroke + "/>\n";
    }
    void operator()(const Singleton& p) const {
      svg += "<circle cx=\"" + fmt(cam.x(p.point)) + "\" cy=\"" + fmt(cam.y(p.point)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    void operator()(const EpiAbsPlus& e) const {
      svg += "<polyline points=\"" + fmt(cam.x(e.apex[0] - reach)) + "," +
             fmt(cam.y(e.apex[1] + reach)) + " " + fmt(cam.x(e.apex[0])) + "," +
             fmt(cam.y(e.apex[1])) + " " + fmt(cam.x(e.apex[0] + reach)) + "," +
             fmt(cam.y(e.apex[1] + reach)) + "\" " + stroke + "/>\n";
    }
  };
  std::visit(Visitor{svg, cam, stroke, color, reach}, s.payload());
}

void draw_marker(std::string& svg, const Camera& cam, const Vector& p) {
  svg += "<circle cx=\"" + fmt(cam.x(p)) + "\" cy=\"" + fmt(cam.y(p)) +
         "\" r=\"2\" fill=\"#111111\"/>\n";
}

void draw_arrow(std::string& svg, const Camera& cam, const Vector& from,
                const Vector& g, const std::string& color) {
  const double len = norm(g);
  if (len < 1e-12) return;
  const Vector to = from + g;
  const std::string stroke = "stroke=\"" + color + "\" stroke-width=\"1.5\"";
  line(svg, cam, from[0], from[1], to[0], to[1], stroke);
  // Arrowhead: two short barbs against the direction of g.
  const double ux = g[0] / len;
  const double uy = g[1] / len;
  const double head = 0.04 * len + 8.0 / cam.scale;
  line(svg, cam, to[0], to[1], to[0] + head * (-ux + 0.5 * uy),
       to[1] + head * (-uy - 0.5 * ux), stroke);
  line(svg, cam, to[0], to[1], to[0] + head * (-ux - 0.5 * uy),
       to[1] + head * (-uy + 0.5 * ux), stroke);
}

std::string open_svg() {
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
                    "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
                    " " + fmt(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
         "\" fill=\"#ffffff\"/>\n";
  return svg;
}

double world_reach(const WorldBox& w) {
  return 2.0 * std::max(w.x1 - w.x0, w.y1 - w.y0);
}

}  // namespace

std::string render_plot_svg(const DrProblem& p, const DrTrace& trace, const Vector& gap) {
  if (p.set_a.dim() != 2) throw UnsupportedError("plotting requires a planar problem");
  if (trace.records.empty()) throw UsageError("render_plot_svg: empty trace");

  WorldBox world;
  world.include_finite_box(bounding_box_hint(p.set_a, 3.0));
  world.include_finite_box(bounding_box_hint(p.set_b, 3.0));
  for (const TraceRecord& r : trace.records) world.include(r.shadow_a);
  const Vector& last = trace.records.back().shadow_a;
  world.include(last + gap);
  world.pad();

  const Camera cam(world);
  const double reach = world_reach(world);
  std::string svg = open_svg();
  draw_set(svg, cam, p.set_a, kPalette[0], false, reach);
  draw_set(svg, cam, p.set_b, kPalette[1], false, reach);
  for (const TraceRecord& r : trace.records) draw_marker(svg, cam, r.shadow_a);
  draw_arrow(svg, cam, last, gap, "#d62728");
  svg += "</svg>\n";
  return svg;
}

std::string render_plot_svg(const ProductProblem& p, const DrTrace& trace,
                            const std::vector<Vector>& per_set_gaps) {
  const int d = problem_dim(p);
  if (d != 2) throw UnsupportedError("plotting requires a planar problem");
  if (trace.records.empty()) throw UsageError("render_plot_svg: empty trace");
  const int m = static_cast<int>(p.sets.size());
  if (per_set_gaps.size() != p.sets.size()) {
    throw UsageError("render_plot_svg: one gap vector per set required");
  }

  WorldBox world;
  for (const ConvexSet& s : p.sets) world.include_finite_box(bounding_box_hint(s, 3.0));
  std::vector<Vector> consensus;
  consensus.reserve(trace.records.size());
  for (const TraceRecord& r : trace.records) {
    consensus.push_back(unflatten(r.shadow_a, m).block(0));
    world.include(consensus.back());
  }
  for (const Vector& g : per_set_gaps) world.include(consensus.back() + g);
  world.pad();

  const Camera cam(world);
  const double reach = world_reach(world);
  std::string svg = open_svg();
  for (std::size_t j = 0; j < p.sets.size(); ++j) {
    const std::string color = kPalette[j % kPaletteSize];
    draw_set(svg, cam, p.sets[j], color, false, reach);
    if (norm(per_set_gaps[j]) > 1e-12) {
      draw_set(svg, cam, translate(p.sets[j], -per_set_gaps[j]), color, true, reach);
    }
  }
  for (const Vector& c : consensus) draw_marker(svg, cam, c);
  for (std::size_t j = 0; j < p.sets.size(); ++j) {
    draw_arrow(svg, cam, consensus.back(), per_set_gaps[j], kPalette[j % kPaletteSize]);
  }
  svg += "</svg>\n";
  return svg;
}

void write_plot_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open plot file for writing: " + path);
  out << svg;
  if (!out) throw IoError("failed while writing plot file: " + path);
}

}  // namespace drsplit
