#pragma once
// Sharp-interface measurements on simulated fields: argmax segmentation,
// periodic 4-connected components of the non-background region, interface
// lengths per phase pair by sub-pixel marching squares, triple-junction
// angles by total-least-squares branch fits, and classification of each
// component against the predicted geometries (single bubble / core shell
// with concentric-tangent-offset subtags / double bubble).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tern/energy.hpp"

namespace tern::morph {

struct LabelField {
  int n = 0;
  std::vector<std::uint8_t> labels;  // 0 background, 1, 2

  std::uint8_t at(int a, int b) const { return labels[static_cast<std::size_t>(a) * n + b]; }
  std::uint8_t& at(int a, int b) { return labels[static_cast<std::size_t>(a) * n + b]; }
};

// Pointwise argmax of (u0, u1, u2), ties toward the lower label.
LabelField segment(const PhaseDensity& u);

struct InterfaceLengths {
  double L01 = 0.0, L02 = 0.0, L12 = 0.0;
  double total() const { return L01 + L02 + L12; }
};

enum class ComponentClass {
  SingleBubble1,
  SingleBubble2,
  CoreShellConcentric,
  CoreShellTangent,
  CoreShellOffset,
  DoubleBubble,
};
const char* class_name(ComponentClass c);

struct Component {
  int id = 0;
  double area1 = 0.0, area2 = 0.0;   // torus area fractions by species
  double cx = 0.0, cy = 0.0;         // circular mean of the foreground pixels
  double core_cx = 0.0, core_cy = 0.0;  // circular mean of the species-2 pixels
  long pixels1 = 0, pixels2 = 0;
  InterfaceLengths lengths;
  ComponentClass classification = ComponentClass::SingleBubble1;
  double offset_ratio = 0.0;  // |core centre - outer centre| / (r1 - r2)
  std::vector<int> pixel_indices;
};

// Periodic 4-connected components of the foreground (labels 1 and 2 jointly),
// with per-species masses and centres filled in.
std::vector<Component> components(const LabelField& l);

// Marching-squares lengths of the pairwise level sets {u_i = u_j}, restricted
// to cells where exactly those two phases dominate. Returns the total; the
// per-component attribution is produced by analyze().
InterfaceLengths interface_lengths(const PhaseDensity& u, const LabelField& l);

struct Junction {
  double x1 = 0.0, x2 = 0.0;
  std::array<double, 3> angles = {0.0, 0.0, 0.0};  // opening of phases 0, 1, 2
};

// Triple points with all three phases in a 2x2 pixel neighbourhood; each
// branch is fitted by total least squares over a radius-(4 epsilon) window.
// Returns an empty list when no junction exists (eg for core shells).
std::vector<Junction> junction_angles(const PhaseDensity& u, const LabelField& l, double epsilon);

// Classification thresholds (documented configuration, defaults per the
// figure-2 morphology separation at n = 256).
struct ClassifyOptions {
  double insulation_threshold = 0.05;  // L02/(L02+L12) below this = insulated core
  double concentric_ratio = 0.15;
  double tangent_ratio = 0.85;
  long single_species_pixels = 4;  // fewer minority pixels than this = single bubble
};

ComponentClass classify(const Component& c, const ClassifyOptions& opt = {});

struct MorphologyReport {
  std::vector<Component> components;
  InterfaceLengths total;
  std::vector<Junction> junctions;
};

MorphologyReport analyze(const PhaseDensity& u, double epsilon, const ClassifyOptions& opt = {});

void write_report_json(const std::string& path, const MorphologyReport& report);
// One CSV row per run for sweep tables (header written when the file is new).
void append_summary_csv(const std::string& path, const std::string& run_name, const MorphologyReport& report);

}  // namespace tern::morph
