#include "tern/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace tern::morph {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_unit(double x) { return x - std::round(x); }

// circular mean of pixel coordinates (handles components straddling the seam)
std::pair<double, double> circular_mean(const std::vector<int>& pixels, int n, const std::vector<char>* mask) {
  double c1 = 0, s1 = 0, c2 = 0, s2 = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    const int a = pixels[i] / n, b = pixels[i] % n;
    const double t1 = 2.0 * kPi * a / n, t2 = 2.0 * kPi * b / n;
    c1 += std::cos(t1);
    s1 += std::sin(t1);
    c2 += std::cos(t2);
    s2 += std::sin(t2);
    ++count;
  }
  if (count == 0) return {0.0, 0.0};
  // pixel a sits at angle 2 pi a/n, ie torus coordinate x = a/n - 1/2
  const double x1 = wrap_unit(std::atan2(s1, c1) / (2.0 * kPi) - 0.5);
  const double x2 = wrap_unit(std::atan2(s2, c2) / (2.0 * kPi) - 0.5);
  return {x1, x2};
}

}  // namespace

LabelField segment(const PhaseDensity& u) {
  const int n = u.n();
  LabelField l;
  l.n = n;
  l.labels.resize(static_cast<std::size_t>(n) * n);
  const double* a = u.u1.data();
  const double* b = u.u2.data();
  for (std::size_t i = 0; i < l.labels.size(); ++i) {
    const double u1 = a[i], u2 = b[i], u0 = 1.0 - u1 - u2;
    if (u0 >= u1 && u0 >= u2)
      l.labels[i] = 0;
    else if (u1 >= u2)
      l.labels[i] = 1;
    else
      l.labels[i] = 2;
  }
  return l;
}

std::vector<Component> components(const LabelField& l) {
  const int n = l.n;
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<int> comp(total, -1);
  std::vector<Component> out;
  for (std::size_t seed = 0; seed < total; ++seed) {
    if (l.labels[seed] == 0 || comp[seed] >= 0) continue;
    const int id = static_cast<int>(out.size());
    Component c;
    c.id = id;
    std::deque<int> queue{static_cast<int>(seed)};
    comp[seed] = id;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      c.pixel_indices.push_back(p);
      if (l.labels[p] == 1)
        ++c.pixels1;
      else
        ++c.pixels2;
      const int a = p / n, b = p % n;
      const int nbr[4] = {((a + 1) % n) * n + b, ((a - 1 + n) % n) * n + b, a * n + (b + 1) % n,
                          a * n + (b - 1 + n) % n};
      for (int q : nbr) {
        if (l.labels[q] != 0 && comp[q] < 0) {
          comp[q] = id;
          queue.push_back(q);
        }
      }
    }
    c.area1 = static_cast<double>(c.pixels1) / total;
    c.area2 = static_cast<double>(c.pixels2) / total;
    auto centre = circular_mean(c.pixel_indices, n, nullptr);
    c.cx = centre.first;
    c.cy = centre.second;
    std::vector<char> mask2(c.pixel_indices.size());
    for (std::size_t i = 0; i < c.pixel_indices.size(); ++i) mask2[i] = l.labels[c.pixel_indices[i]] == 2;
    auto core = circular_mean(c.pixel_indices, n, &mask2);
    c.core_cx = core.first;
    c.core_cy = core.second;
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Segment {
  double x1a, x2a, x1b, x2b;  // endpoints in torus coordinates
  int pair;                   // 0 = L01, 1 = L02, 2 = L12
  int component;              // owning component id (or -1)
};

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 0 && j == 2) return 1;
  return 2;
}

// Marching squares on one periodic cell for one phase pair. d holds the
// corner values of u_i - u_j in the order (a,b), (a+1,b), (a+1,b+1), (a,b+1).
void cell_segments(const double d[4], double x0, double y0, double h, int pair, int component,
                   std::vector<Segment>& out) {
  // edge order: bottom (0-1, along x1), right (1-2, along x2),
  // top (3-2, along x1), left (0-3, along x2)
  struct Crossing {
    double x, y;
  };
  auto interp = [](double a, double b) { return a / (a - b); };
  Crossing cross[4];
  bool has[4] = {false, false, false, false};
  const int e0[4] = {0, 1, 3, 0};
  const int e1[4] = {1, 2, 2, 3};
  for (int e = 0; e < 4; ++e) {
    const double da = d[e0[e]], db = d[e1[e]];
    if ((da > 0.0) == (db > 0.0)) continue;
    const double t = interp(da, db);
    has[e] = true;
    switch (e) {
      case 0: cross[e] = {x0 + t * h, y0}; break;
      case 1: cross[e] = {x0 + h, y0 + t * h}; break;
      case 2: cross[e] = {x0 + t * h, y0 + h}; break;
      case 3: cross[e] = {x0, y0 + t * h}; break;
    }
  }
  int edges[4], ne = 0;
  for (int e = 0; e < 4; ++e)
    if (has[e]) edges[ne++] = e;
  auto emit = [&](int ea, int eb) {
    out.push_back({cross[ea].x, cross[ea].y, cross[eb].x, cross[eb].y, pair, component});
  };
  if (ne == 2) {
    emit(edges[0], edges[1]);
  } else if (ne == 4) {
    // saddle: disambiguate with the centre value
    const double centre = 0.25 * (d[0] + d[1] + d[2] + d[3]);
    if ((centre > 0.0) == (d[0] > 0.0)) {
      emit(0, 1);
      emit(2, 3);
    } else {
      emit(0, 3);
      emit(1, 2);
    }
  }
}

std::vector<Segment> contour_segments(const PhaseDensity& u, const LabelField& l, const std::vector<int>* comp_of) {
  const int n = u.n();
  const double h = 1.0 / n;
  std::vector<Segment> segs;
  for (int a = 0; a < n; ++a) {
    const int a1 = (a + 1) % n;
    for (int b = 0; b < n; ++b) {
      const int b1 = (b + 1) % n;
      const std::uint8_t lab[4] = {l.at(a, b), l.at(a1, b), l.at(a1, b1), l.at(a, b1)};
      std::uint8_t present = 0;
      for (auto v : lab) present |= static_cast<std::uint8_t>(1u << v);
      const int nphases = ((present & 1) != 0) + ((present & 2) != 0) + ((present & 4) != 0);
      if (nphases != 2) continue;
      int i = -1, j = -1;
      for (int p = 0; p < 3; ++p)
        if (present & (1u << p)) (i < 0 ? i : j) = p;
      auto value = [&](int phase, int aa, int bb) {
        const double u1 = u.u1.at(aa, bb), u2 = u.u2.at(aa, bb);
        return phase == 0 ? 1.0 - u1 - u2 : (phase == 1 ? u1 : u2);
      };
      const double d[4] = {value(i, a, b) - value(j, a, b), value(i, a1, b) - value(j, a1, b),
                           value(i, a1, b1) - value(j, a1, b1), value(i, a, b1) - value(j, a, b1)};
      int component = -1;
      if (comp_of) {
        const int pix[4] = {a * n + b, a1 * n + b, a1 * n + b1, a * n + b1};
        for (int s = 0; s < 4; ++s)
          if (l.labels[pix[s]] != 0) {
            component = (*comp_of)[pix[s]];
            break;
          }
      }
      cell_segments(d, -0.5 + a * h, -0.5 + b * h, h, pair_index(i, j), component, segs);
    }
  }
  return segs;
}

double segment_length(const Segment& s) { return std::hypot(s.x1b - s.x1a, s.x2b - s.x2a); }

}  // namespace

InterfaceLengths interface_lengths(const PhaseDensity& u, const LabelField& l) {
  InterfaceLengths out;
  for (const auto& s : contour_segments(u, l, nullptr)) {
    const double len = segment_length(s);
    if (s.pair == 0)
      out.L01 += len;
    else if (s.pair == 1)
      out.L02 += len;
    else
      out.L12 += len;
  }
  return out;
}

std::vector<Junction> junction_angles(const PhaseDensity& u, const LabelField& l, double epsilon) {
  const int n = u.n();
  const double h = 1.0 / n;
  // candidate cells containing all three labels
  std::vector<std::pair<double, double>> candidates;
  for (int a = 0; a < n; ++a) {
    const int a1 = (a + 1) % n;
    for (int b = 0; b < n; ++b) {
      const int b1 = (b + 1) % n;
      std::uint8_t present = 0;
      for (std::uint8_t v : {l.at(a, b), l.at(a1, b), l.at(a1, b1), l.at(a, b1)})
        present |= static_cast<std::uint8_t>(1u << v);
      if (present == 7) candidates.push_back({-0.5 + (a + 0.5) * h, -0.5 + (b + 0.5) * h});
    }
  }
  if (candidates.empty()) return {};
  // cluster candidates within a few pixels
  std::vector<int> cluster(candidates.size(), -1);
  int nclusters = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = nclusters;
    std::deque<std::size_t> queue{i};
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      for (std::size_t q = 0; q < candidates.size(); ++q) {
        if (cluster[q] >= 0) continue;
        const double dx = wrap_unit(candidates[p].first - candidates[q].first);
        const double dy = wrap_unit(candidates[p].second - candidates[q].second);
        if (std::hypot(dx, dy) < 3.0 * h) {
          cluster[q] = nclusters;
          queue.push_back(q);
        }
      }
    }
    ++nclusters;
  }
  std::vector<std::pair<double, double>> centres(nclusters, {0.0, 0.0});
  {
    std::vector<std::pair<double, double>> ref(nclusters, {999.0, 999.0});
    std::vector<int> counts(nclusters, 0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const int c = cluster[i];
      if (ref[c].first > 100.0) ref[c] = candidates[i];
      centres[c].first += wrap_unit(candidates[i].first - ref[c].first);
      centres[c].second += wrap_unit(candidates[i].second - ref[c].second);
      ++counts[c];
    }
    for (int c = 0; c < nclusters; ++c) {
      centres[c].first = wrap_unit(ref[c].first + centres[c].first / counts[c]);
      centres[c].second = wrap_unit(ref[c].second + centres[c].second / counts[c]);
    }
  }

  const auto segs = contour_segments(u, l, nullptr);
  const double window = std::max(4.0 * epsilon, 6.0 * h);
  const double core = std::max(1.5 * epsilon, 2.0 * h);  // diffuse smearing region
  std::vector<Junction> out;
  for (int c = 0; c < nclusters; ++c) {
    const double jx = centres[c].first, jy = centres[c].second;
    // gather branch points per pair in an annulus around the junction (the
    // immediate core is smeared and would bias the fit)
    std::array<std::vector<std::pair<double, double>>, 3> branch;
    for (const auto& s : segs) {
      const double mx = s.x1a + 0.5 * (s.x1b - s.x1a), my = s.x2a + 0.5 * (s.x2b - s.x2a);
      const double dx = wrap_unit(mx - jx), dy = wrap_unit(my - jy);
      const double r = std::hypot(dx, dy);
      if (r >= core && r <= window) branch[s.pair].push_back({dx, dy});
    }
    if (branch[0].size() < 2 || branch[1].size() < 2 || branch[2].size() < 2) continue;
    // total-least-squares line per branch: direction from the covariance
    // about the data centroid (insensitive to the junction estimate),
    // oriented outward by the centroid
    std::array<double, 3> dir_angle;
    for (int p = 0; p < 3; ++p) {
      double mx = 0, my = 0;
      for (auto& q : branch[p]) {
        mx += q.first;
        my += q.second;
      }
      mx /= static_cast<double>(branch[p].size());
      my /= static_cast<double>(branch[p].size());
      double sxx = 0, sxy = 0, syy = 0;
      for (auto& q : branch[p]) {
        sxx += (q.first - mx) * (q.first - mx);
        sxy += (q.first - mx) * (q.second - my);
        syy += (q.second - my) * (q.second - my);
      }
      const double tr = 0.5 * (sxx + syy);
      const double det = sxx * syy - sxy * sxy;
      const double lam = tr + std::sqrt(std::max(0.0, tr * tr - det));
      double vx, vy;
      if (std::abs(sxy) > 1e-30) {
        vx = lam - syy;
        vy = sxy;
      } else {
        vx = sxx >= syy ? 1.0 : 0.0;
        vy = sxx >= syy ? 0.0 : 1.0;
      }
      const double norm = std::hypot(vx, vy);
      vx /= norm;
      vy /= norm;
      if (vx * mx + vy * my < 0.0) {
        vx = -vx;
        vy = -vy;
      }
      dir_angle[p] = std::atan2(vy, vx);
    }
    // consecutive rays share exactly one phase label; the sector between them
    // is that phase's opening
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dir_angle[a] < dir_angle[b]; });
    auto shared_phase = [](int pa, int pb) {
      // pair codes: 0 = {0,1}, 1 = {0,2}, 2 = {1,2}
      auto members = [](int p) { return p == 0 ? std::pair{0, 1} : (p == 1 ? std::pair{0, 2} : std::pair{1, 2}); };
      auto [a1, a2] = members(pa);
      auto [b1, b2] = members(pb);
      if (a1 == b1 || a1 == b2) return a1;
      return a2;
    };
    Junction j;
    j.x1 = jx;
    j.x2 = jy;
    for (int s = 0; s < 3; ++s) {
      const int ra = order[s], rb = order[(s + 1) % 3];
      double gap = dir_angle[rb] - dir_angle[ra];
      if (s == 2) gap = 2.0 * kPi + gap;
      j.angles[shared_phase(ra, rb)] = gap;
    }
    out.push_back(j);
  }
  return out;
}

const char* class_name(ComponentClass c) {
  switch (c) {
    case ComponentClass::SingleBubble1: return "SingleBubble1";
    case ComponentClass::SingleBubble2: return "SingleBubble2";
    case ComponentClass::CoreShellConcentric: return "CoreShellConcentric";
    case ComponentClass::CoreShellTangent: return "CoreShellTangent";
    case ComponentClass::CoreShellOffset: return "CoreShellOffset";
    case ComponentClass::DoubleBubble: return "DoubleBubble";
  }
  return "?";
}

ComponentClass classify(const Component& c, const ClassifyOptions& opt) {
  if (c.pixels2 < opt.single_species_pixels) return ComponentClass::SingleBubble1;
  if (c.pixels1 < opt.single_species_pixels) return ComponentClass::SingleBubble2;
  const double shell = c.lengths.L02 + c.lengths.L12;
  if (shell > 0.0 && c.lengths.L02 < opt.insulation_threshold * shell) {
    // insulated core: subtag by the offset of the core centre
    const double r1 = std::sqrt((c.area1 + c.area2) / kPi);
    const double r2 = std::sqrt(c.area2 / kPi);
    const double t = std::hypot(wrap_unit(c.core_cx - c.cx), wrap_unit(c.core_cy - c.cy));
    const double ratio = r1 > r2 ? t / (r1 - r2) : 0.0;
    if (ratio <= opt.concentric_ratio) return ComponentClass::CoreShellConcentric;
    if (ratio >= opt.tangent_ratio) return ComponentClass::CoreShellTangent;
    return ComponentClass::CoreShellOffset;
  }
  return ComponentClass::DoubleBubble;
}

MorphologyReport analyze(const PhaseDensity& u, double epsilon, const ClassifyOptions& opt) {
  MorphologyReport report;
  const LabelField l = segment(u);
  report.components = components(l);
  const int n = l.n;
  std::vector<int> comp_of(static_cast<std::size_t>(n) * n, -1);
  for (const auto& c : report.components)
    for (int p : c.pixel_indices) comp_of[p] = c.id;
  for (const auto& s : contour_segments(u, l, &comp_of)) {
    const double len = segment_length(s);
    auto add = [&](InterfaceLengths& L) {
      if (s.pair == 0)
        L.L01 += len;
      else if (s.pair == 1)
        L.L02 += len;
      else
        L.L12 += len;
    };
    add(report.total);
    if (s.component >= 0) add(report.components[s.component].lengths);
  }
  for (auto& c : report.components) {
    c.offset_ratio = 0.0;
    if (c.pixels2 >= opt.single_species_pixels && c.pixels1 >= opt.single_species_pixels) {
      const double r1 = std::sqrt((c.area1 + c.area2) / kPi);
      const double r2 = std::sqrt(c.area2 / kPi);
      const double t = std::hypot(wrap_unit(c.core_cx - c.cx), wrap_unit(c.core_cy - c.cy));
      if (r1 > r2) c.offset_ratio = t / (r1 - r2);
    }
    c.classification = classify(c, opt);
  }
  report.junctions = junction_angles(u, l, epsilon);
  return report;
}

void write_report_json(const std::string& path, const MorphologyReport& report) {
  nlohmann::json j;
  j["total_lengths"] = {{"L01", report.total.L01}, {"L02", report.total.L02}, {"L12", report.total.L12}};
  j["components"] = nlohmann::json::array();
  for (const auto& c : report.components) {
    j["components"].push_back({{"id", c.id},
                               {"area1", c.area1},
                               {"area2", c.area2},
                               {"centre", {c.cx, c.cy}},
                               {"core_centre", {c.core_cx, c.core_cy}},
                               {"lengths", {{"L01", c.lengths.L01}, {"L02", c.lengths.L02}, {"L12", c.lengths.L12}}},
                               {"class", class_name(c.classification)},
                               {"offset_ratio", c.offset_ratio}});
  }
  j["junctions"] = nlohmann::json::array();
  for (const auto& jn : report.junctions)
    j["junctions"].push_back({{"x", {jn.x1, jn.x2}}, {"angles", {jn.angles[0], jn.angles[1], jn.angles[2]}}});
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_report_json: cannot open " + path);
  os << j.dump(2) << "\n";
}

void append_summary_csv(const std::string& path, const std::string& run_name, const MorphologyReport& report) {
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream os(path, std::ios::app);
  if (!os) throw std::runtime_error("append_summary_csv: cannot open " + path);
  if (fresh) os << "run,components,single1,single2,coreshell,double_bubble,L01,L02,L12,junctions\n";
  int s1 = 0, s2 = 0, cs = 0, db = 0;
  for (const auto& c : report.components) {
    switch (c.classification) {
      case ComponentClass::SingleBubble1: ++s1; break;
      case ComponentClass::SingleBubble2: ++s2; break;
      case ComponentClass::DoubleBubble: ++db; break;
      default: ++cs; break;
    }
  }
  os.precision(12);
  os << run_name << "," << report.components.size() << "," << s1 << "," << s2 << "," << cs << "," << db << ","
     << report.total.L01 << "," << report.total.L02 << "," << report.total.L12 << "," << report.junctions.size()
     << "\n";
}

}  // namespace tern::morph
