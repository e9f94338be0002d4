#include "tern/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tern {

void SurfaceTensions::validate() const {
  if (!(s01 > 0.0) || !(s02 > 0.0) || !(s12 > 0.0))
    throw std::invalid_argument("SurfaceTensions: tensions must be strictly positive");
}

BetaWeights beta_weights(const SurfaceTensions& s) {
  s.validate();
  return {s.s01 + s.s02 - s.s12, s.s01 + s.s12 - s.s02, s.s02 + s.s12 - s.s01};
}

SurfaceTensions sigma_from_beta(const BetaWeights& b) {
  return {(b.b0 + b.b1) / 2.0, (b.b0 + b.b2) / 2.0, (b.b1 + b.b2) / 2.0};
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::DoubleBubble: return "DoubleBubble";
    case Regime::CoreShellDegenerate: return "CoreShellDegenerate";
    case Regime::CoreShellStrict: return "CoreShellStrict";
    case Regime::SingleBubblesDegenerate: return "SingleBubblesDegenerate";
    case Regime::SingleBubblesStrict: return "SingleBubblesStrict";
  }
  return "?";
}

namespace {
constexpr double kRegimeTol = 1e-12;

int compare_rel(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  if (std::abs(lhs - rhs) <= kRegimeTol * scale) return 0;
  return lhs < rhs ? -1 : 1;
}
}  // namespace

Regime classify_regime(const SurfaceTensions& s) {
  s.validate();
  const int cs = compare_rel(s.s02, s.s01 + s.s12);  // core-shell degeneracy
  const int sb = compare_rel(s.s12, s.s01 + s.s02);  // single-bubble degeneracy
  const int mirror = compare_rel(s.s01, s.s02 + s.s12);
  // With positive tensions at most one inequality can saturate or flip.
  if ((cs >= 0) + (sb >= 0) + (mirror >= 0) > 1)
    throw std::logic_error("classify_regime: simultaneous degeneracies are impossible with positive tensions");
  if (mirror >= 0)
    throw std::invalid_argument(
        "classify_regime: s01 >= s02 + s12 is the mirrored core-shell case; relabel species 1 and 2");
  if (cs > 0) return Regime::CoreShellStrict;
  if (cs == 0) return Regime::CoreShellDegenerate;
  if (sb > 0) return Regime::SingleBubblesStrict;
  if (sb == 0) return Regime::SingleBubblesDegenerate;
  return Regime::DoubleBubble;
}

bool is_core_shell_regime(const SurfaceTensions& s) {
  return compare_rel(s.s02, s.s01 + s.s12) >= 0;
}

void InteractionMatrix::validate() const {
  if (g11 < 0.0 || g12 < 0.0 || g22 < 0.0)
    throw std::invalid_argument("InteractionMatrix: entries must be nonnegative");
}

InteractionMatrix gamma_from_Gamma(const InteractionMatrix& Gamma, double eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("gamma_from_Gamma: eta must lie in (0,1)");
  // single rounding per entry: divide by the same factor the inverse multiplies by
  const double d = std::abs(std::log(eta)) * eta * eta * eta;
  return {Gamma.g11 / d, Gamma.g12 / d, Gamma.g22 / d};
}

InteractionMatrix Gamma_from_gamma(const InteractionMatrix& gamma, double eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("Gamma_from_gamma: eta must lie in (0,1)");
  return gamma.scaled(std::abs(std::log(eta)) * eta * eta * eta);
}

void WellParams::validate() const {
  // Zero coefficients are legal (they switch terms off, e.g. for linear
  // test runs); negatives are not.
  if (c01 < 0.0 || c02 < 0.0 || c12 < 0.0 || cb < 0.0 || cq < 0.0)
    throw std::invalid_argument("WellParams: coefficients must be nonnegative");
}

void ModelParams::validate() const {
  sigma.validate();
  gamma.validate();
  well.validate();
  if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be positive");
  if (eta && (!(*eta > 0.0) || !(*eta < 1.0))) throw std::invalid_argument("ModelParams: eta must lie in (0,1)");
  if (!(M1 > 0.0) || !(M2 > 0.0) || !(M1 + M2 < 1.0))
    throw std::invalid_argument("ModelParams: masses must satisfy 0 < M1, M2 and M1 + M2 < 1");
}

InteractionMatrix ModelParams::Gamma() const {
  if (!eta) throw std::logic_error("ModelParams::Gamma: eta is not set");
  return Gamma_from_gamma(gamma, *eta);
}

// ---------------------------------------------------------------------------
// Minimal TOML-subset reader: [section] headers, key = value lines where the
// value is a number, true/false, or an array of numbers. Comments with '#'.

namespace {

struct RawConfig {
  // section -> key -> numbers (scalars stored as 1-element vectors)
  std::map<std::string, std::map<std::string, std::vector<double>>> values;

  bool has(const std::string& sec, const std::string& key) const {
    auto s = values.find(sec);
    return s != values.end() && s->second.count(key) > 0;
  }
  double scalar(const std::string& sec, const std::string& key) const {
    return values.at(sec).at(key).at(0);
  }
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

RawConfig parse_toml_subset(std::istream& is, const std::string& origin) {
  RawConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::runtime_error(origin + ": malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(origin + ": expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    std::vector<double> nums;
    if (!val.empty() && val.front() == '[') {
      if (val.back() != ']') throw std::runtime_error(origin + ": malformed array at line " + std::to_string(lineno));
      std::stringstream ss(val.substr(1, val.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) nums.push_back(std::stod(item));
      }
    } else if (val == "true") {
      nums.push_back(1.0);
    } else if (val == "false") {
      nums.push_back(0.0);
    } else {
      std::size_t pos = 0;
      nums.push_back(std::stod(val, &pos));
      if (trim(val.substr(pos)) != "")
        throw std::runtime_error(origin + ": trailing characters at line " + std::to_string(lineno));
    }
    cfg.values[section][key] = std::move(nums);
  }
  return cfg;
}

}  // namespace

ConfigFile read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_config: cannot open " + path);
  RawConfig raw = parse_toml_subset(is, path);

  ConfigFile cfg;
  auto& p = cfg.params;
  for (const auto& [sec, kv] : raw.values) {
    if (sec == "") {
      for (const auto& [key, nums] : kv) {
        if (key == "epsilon") p.epsilon = nums.at(0);
        else if (key == "eta") p.eta = nums.at(0);
        else if (key == "n") cfg.n = static_cast<int>(nums.at(0));
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(nums.at(0));
        else if (key == "masses") {
          if (nums.size() != 2) throw std::runtime_error(path + ": masses must have two entries");
          p.M1 = nums[0];
          p.M2 = nums[1];
        } else throw std::runtime_error(path + ": unknown key '" + key + "'");
      }
    } else if (sec == "sigma") {
      for (const auto& [key, nums] : kv) {
        if (key == "s01") p.sigma.s01 = nums.at(0);
        else if (key == "s02") p.sigma.s02 = nums.at(0);
        else if (key == "s12") p.sigma.s12 = nums.at(0);
        else throw std::runtime_error(path + ": unknown key sigma." + key);
      }
    } else if (sec == "gamma" || sec == "Gamma") {
      InteractionMatrix m;
      for (const auto& [key, nums] : kv) {
        if (key == "g11") m.g11 = nums.at(0);
        else if (key == "g12") m.g12 = nums.at(0);
        else if (key == "g22") m.g22 = nums.at(0);
        else throw std::runtime_error(path + ": unknown key " + sec + "." + key);
      }
      if (sec == "Gamma") {
        if (!p.eta) throw std::runtime_error(path + ": [Gamma] requires eta");
        p.gamma = gamma_from_Gamma(m, *p.eta);
      } else {
        p.gamma = m;
      }
    } else if (sec == "well") {
      for (const auto& [key, nums] : kv) {
        if (key == "c01") p.well.c01 = nums.at(0);
        else if (key == "c02") p.well.c02 = nums.at(0);
        else if (key == "c12") p.well.c12 = nums.at(0);
        else if (key == "cb") p.well.cb = nums.at(0);
        else if (key == "cq") p.well.cq = nums.at(0);
        else throw std::runtime_error(path + ": unknown key well." + key);
      }
    } else if (sec == "flow") {
      for (const auto& [key, nums] : kv) {
        if (key == "dt") cfg.dt = nums.at(0);
        else if (key == "stabilizer") cfg.stabilizer = nums.at(0);
        else if (key == "max_steps") cfg.max_steps = static_cast<long>(nums.at(0));
        else if (key == "noise_amplitude") cfg.noise_amplitude = nums.at(0);
        else throw std::runtime_error(path + ": unknown key flow." + key);
      }
    } else {
      throw std::runtime_error(path + ": unknown section [" + sec + "]");
    }
  }
  p.validate();
  if (cfg.n < 8 || cfg.n % 2 != 0) throw std::runtime_error(path + ": n must be even and >= 8");
  return cfg;
}

void write_config(const std::string& path, const ConfigFile& cfg) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_config: cannot open " + path);
  os.precision(17);
  const auto& p = cfg.params;
  os << "epsilon = " << p.epsilon << "\n";
  if (p.eta) os << "eta = " << *p.eta << "\n";
  os << "n = " << cfg.n << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "masses = [" << p.M1 << ", " << p.M2 << "]\n\n";
  os << "[sigma]\ns01 = " << p.sigma.s01 << "\ns02 = " << p.sigma.s02 << "\ns12 = " << p.sigma.s12 << "\n\n";
  os << "[gamma]\ng11 = " << p.gamma.g11 << "\ng12 = " << p.gamma.g12 << "\ng22 = " << p.gamma.g22 << "\n\n";
  os << "[well]\nc01 = " << p.well.c01 << "\nc02 = " << p.well.c02 << "\nc12 = " << p.well.c12
     << "\ncb = " << p.well.cb << "\ncq = " << p.well.cq << "\n";
  if (cfg.dt > 0 || cfg.max_steps > 0 || cfg.stabilizer > 0 || cfg.noise_amplitude >= 0) {
    os << "\n[flow]\n";
    if (cfg.dt > 0) os << "dt = " << cfg.dt << "\n";
    if (cfg.stabilizer > 0) os << "stabilizer = " << cfg.stabilizer << "\n";
    if (cfg.max_steps > 0) os << "max_steps = " << cfg.max_steps << "\n";
    if (cfg.noise_amplitude >= 0) os << "noise_amplitude = " << cfg.noise_amplitude << "\n";
  }
}

}  // namespace tern
