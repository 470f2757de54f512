#include "ltmc/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "ltmc/errors.hpp"

namespace ltmc {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

struct Issues {
  std::vector<std::string> list;
  void at(int line, const std::string& msg) {
    list.push_back("line " + std::to_string(line) + ": " + msg);
  }
};

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct RawSection {
  int line = 0;
  std::map<std::string, RawEntry> entries;
};

const std::set<std::string> kKnownSections = {"diffusion", "innovation",
                                              "measure", "symbol", "run"};

// full key vocabulary per section, used to phrase the leftover-key sweep
const std::map<std::string, std::set<std::string>> kSectionKeys = {
    {"diffusion",
     {"dim", "drift", "diffusion", "ellipticity", "lipschitz", "bound"}},
    {"innovation", {"law", "weights", "scales"}},
    {"measure",
     {"kind", "depth", "center", "radius", "weight", "scale", "mass", "box",
      "resolution"}},
    {"symbol", {"mode", "value", "amplitude", "width", "center"}},
    {"run",
     {"t", "x", "n", "paths", "seed", "replicates", "n_list", "deltas",
      "radii", "substeps", "antithetic", "terminal"}},
};

std::map<std::string, RawSection> scan_lines(const std::string& text,
                                             Issues& issues) {
  std::map<std::string, RawSection> sections;
  std::string current;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.at(line_no, "unterminated section header");
        continue;
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        issues.at(line_no, "empty section name");
        continue;
      }
      if (!kKnownSections.count(name))
        issues.at(line_no, "unknown section [" + name + "]");
      auto [it, fresh] = sections.try_emplace(name);
      if (fresh) {
        it->second.line = line_no;
      } else if (kKnownSections.count(name)) {
        issues.at(line_no, "duplicate section [" + name + "] (first at line " +
                               std::to_string(it->second.line) + ")");
      }
      current = name;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      issues.at(line_no, "expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.at(line_no, "empty key");
      continue;
    }
    if (current.empty()) {
      issues.at(line_no, "key '" + key + "' appears before any [section]");
      continue;
    }
    auto& entries = sections[current].entries;
    auto [it, fresh] = entries.try_emplace(key, RawEntry{value, line_no, false});
    if (!fresh)
      issues.at(line_no, "duplicate key '" + key + "' in [" + current +
                             "] (first at line " +
                             std::to_string(it->second.line) + ")");
  }
  return sections;
}

bool parse_real_token(const std::string& tok, double& out) {
  const std::string t = trim(tok);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int_token(const std::string& tok, long long& out) {
  const std::string t = trim(tok);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_u64_token(const std::string& tok, std::uint64_t& out) {
  const std::string t = trim(tok);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// value forms "name" and "name(arg, ...)"
struct CallForm {
  std::string name;
  std::vector<std::string> args;
};

bool parse_call(const std::string& value, CallForm& out) {
  const std::size_t open = value.find('(');
  if (open == std::string::npos) {
    out.name = trim(value);
    out.args.clear();
    return !out.name.empty();
  }
  if (value.back() != ')') return false;
  out.name = trim(value.substr(0, open));
  const std::string inner = value.substr(open + 1, value.size() - open - 2);
  out.args = trim(inner).empty() ? std::vector<std::string>{} : split(inner, ',');
  return !out.name.empty();
}

// Reader over one optional section; `take` marks keys consumed so the final
// sweep can flag everything left over.
class SectionReader {
 public:
  SectionReader(std::map<std::string, RawSection>& sections,
                const std::string& name, Issues& issues)
      : issues_(issues), name_(name) {
    auto it = sections.find(name);
    sec_ = it == sections.end() ? nullptr : &it->second;
  }

  bool present() const { return sec_ != nullptr; }
  int line() const { return sec_ ? sec_->line : 0; }
  // line of the most recently consumed key; falls back to the header line
  int last_line() const { return last_line_ ? last_line_ : line(); }

  RawEntry* take(const std::string& key) {
    if (!sec_) return nullptr;
    auto it = sec_->entries.find(key);
    if (it == sec_->entries.end()) return nullptr;
    it->second.used = true;
    last_line_ = it->second.line;
    return &it->second;
  }

  std::optional<double> real(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    double v;
    if (!parse_real_token(e->value, v)) {
      issues_.at(e->line, "key '" + key + "': expected a real number, got '" +
                              e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    long long v;
    if (!parse_int_token(e->value, v)) {
      issues_.at(e->line, "key '" + key + "': expected an integer, got '" +
                              e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    long long v;
    if (!parse_int_token(e->value, v) || v <= 0) {
      issues_.at(e->line,
                 "key '" + key + "': expected a positive integer, got '" +
                     e->value + "'");
      return std::nullopt;
    }
    return static_cast<std::size_t>(v);
  }

  std::optional<std::uint64_t> u64(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    std::uint64_t v;
    if (!parse_u64_token(e->value, v)) {
      issues_.at(e->line,
                 "key '" + key + "': expected an unsigned integer, got '" +
                     e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    const std::string v = trim(e->value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    issues_.at(e->line, "key '" + key + "': expected a boolean, got '" +
                            e->value + "'");
    return std::nullopt;
  }

  std::optional<Vec> reals(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    Vec out;
    for (const std::string& tok : split(e->value, ',')) {
      double v;
      if (!parse_real_token(tok, v)) {
        issues_.at(e->line, "key '" + key +
                                "': expected comma-separated reals, got '" +
                                e->value + "'");
        return std::nullopt;
      }
      out.push_back(v);
    }
    return out;
  }

  std::optional<std::vector<std::size_t>> counts(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    std::vector<std::size_t> out;
    for (const std::string& tok : split(e->value, ',')) {
      long long v;
      if (!parse_int_token(tok, v) || v <= 0) {
        issues_.at(e->line,
                   "key '" + key +
                       "': expected comma-separated positive integers, got '" +
                       e->value + "'");
        return std::nullopt;
      }
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  std::optional<CallForm> call(const std::string& key) {
    RawEntry* e = take(key);
    if (!e) return std::nullopt;
    CallForm c;
    if (!parse_call(e->value, c)) {
      issues_.at(e->line, "key '" + key + "': malformed value '" + e->value +
                              "' (expected name or name(args))");
      return std::nullopt;
    }
    return c;
  }

  Issues& issues() { return issues_; }

 private:
  RawSection* sec_ = nullptr;
  Issues& issues_;
  std::string name_;
  int last_line_ = 0;
};

std::optional<Vec> call_args_as_reals(const CallForm& c, int line,
                                      const std::string& key, Issues& issues) {
  Vec out;
  for (const std::string& tok : c.args) {
    double v;
    if (!parse_real_token(tok, v)) {
      issues.at(line, "key '" + key + "': argument '" + tok +
                          "' of " + c.name + "(...) is not a real number");
      return std::nullopt;
    }
    out.push_back(v);
  }
  return out;
}

void read_diffusion(SectionReader& sec, ExperimentConfig& cfg, Issues& issues) {
  if (!sec.present()) return;
  RawEntry* dim_entry = sec.take("dim");
  std::size_t dim = 0;
  if (!dim_entry) {
    issues.at(sec.line(), "[diffusion] requires 'dim'");
  } else {
    long long v;
    if (!parse_int_token(dim_entry->value, v) || v <= 0) {
      issues.at(dim_entry->line, "key 'dim': expected a positive integer, got '" +
                                     dim_entry->value + "'");
    } else {
      dim = static_cast<std::size_t>(v);
    }
  }

  DiffusionModel model;
  bool built = false;
  RawEntry* diff_entry = sec.take("diffusion");
  if (dim > 0) {
    CallForm c{"identity", {}};
    int line = sec.line();
    bool well_formed = true;
    if (diff_entry) {
      line = diff_entry->line;
      if (!parse_call(diff_entry->value, c)) {
        issues.at(line, "key 'diffusion': malformed value '" +
                            diff_entry->value + "'");
        well_formed = false;
      }
    }
    if (well_formed) {
      try {
        if (c.name == "identity" && c.args.empty()) {
          model = DiffusionModel::brownian(dim);
          built = true;
        } else if (c.name == "scale" && c.args.size() == 1) {
          double s;
          if (!parse_real_token(c.args[0], s)) {
            issues.at(line, "key 'diffusion': scale(c) needs a real argument");
          } else {
            model = DiffusionModel::scaled_brownian(dim, s);
            built = true;
          }
        } else if (c.name == "sin1d" && c.args.size() == 2) {
          if (dim != 1) {
            issues.at(line, "key 'diffusion': sin1d requires dim = 1");
          } else {
            double base, amp;
            if (!parse_real_token(c.args[0], base) ||
                !parse_real_token(c.args[1], amp)) {
              issues.at(line,
                        "key 'diffusion': sin1d(base, amp) needs real arguments");
            } else {
              model = DiffusionModel::sine_diffusion_1d(base, amp);
              built = true;
            }
          }
        } else {
          issues.at(line,
                    "key 'diffusion': expected identity, scale(c) or "
                    "sin1d(base, amp), got '" +
                        (diff_entry ? diff_entry->value : c.name) + "'");
        }
      } catch (const std::invalid_argument& e) {
        issues.at(line, std::string("key 'diffusion': ") + e.what());
      }
    }
  }

  if (RawEntry* drift_entry = sec.take("drift"); drift_entry && built) {
    CallForm c;
    if (!parse_call(drift_entry->value, c)) {
      issues.at(drift_entry->line, "key 'drift': malformed value '" +
                                       drift_entry->value + "'");
    } else if (c.name == "zero" && c.args.empty()) {
      // default already
    } else if (c.name == "const") {
      std::optional<Vec> a =
          call_args_as_reals(c, drift_entry->line, "drift", issues);
      if (a) {
        if (a->size() != dim) {
          issues.at(drift_entry->line,
                    "key 'drift': const(...) needs exactly dim = " +
                        std::to_string(dim) + " components, got " +
                        std::to_string(a->size()));
        } else {
          model = model.with_constant_drift(*a);
        }
      }
    } else {
      issues.at(drift_entry->line,
                "key 'drift': expected zero or const(a1, ..., am), got '" +
                    drift_entry->value + "'");
    }
  }

  if (std::optional<Vec> ell = sec.reals("ellipticity")) {
    if (ell->size() != 2 || !((*ell)[0] > 0.0) || (*ell)[0] > (*ell)[1]) {
      issues.at(sec.last_line(),
                "key 'ellipticity': expected 'lo, hi' with 0 < lo <= hi");
    } else if (built) {
      model.ellipticity_lo = (*ell)[0];
      model.ellipticity_hi = (*ell)[1];
    }
  }
  if (std::optional<double> l = sec.real("lipschitz")) {
    if (*l < 0.0)
      issues.at(sec.last_line(), "key 'lipschitz': must be nonnegative");
    else if (built)
      model.lipschitz_const = *l;
  }
  if (std::optional<double> b = sec.real("bound")) {
    if (!(*b > 0.0))
      issues.at(sec.last_line(), "key 'bound': must be positive");
    else if (built)
      model.sup_bound = *b;
  }

  if (built) {
    cfg.has_diffusion = true;
    cfg.model = std::move(model);
  }
}

void read_innovation(SectionReader& sec, ExperimentConfig& cfg,
                     Issues& issues) {
  if (!sec.present()) return;
  std::string law = "gaussian";
  int law_line = sec.line();
  if (RawEntry* e = sec.take("law")) {
    law = trim(e->value);
    law_line = e->line;
  }
  std::optional<Vec> weights = sec.reals("weights");
  std::optional<Vec> scales = sec.reals("scales");
  if (law == "gaussian") {
    if (weights || scales)
      issues.at(law_line,
                "[innovation] weights/scales apply only to law = mixture");
    return;
  }
  if (law != "mixture") {
    issues.at(law_line, "key 'law': expected gaussian or mixture, got '" + law +
                            "'");
    return;
  }
  if (!weights && !scales) {
    cfg.law = InnovationLaw::default_mixture();
    return;
  }
  if (!weights || !scales) {
    issues.at(law_line,
              "[innovation] mixture needs both 'weights' and 'scales'");
    return;
  }
  try {
    cfg.law = InnovationLaw::gaussian_scale_mixture(
        std::vector<double>(weights->begin(), weights->end()),
        std::vector<double>(scales->begin(), scales->end()));
  } catch (const std::invalid_argument& e) {
    issues.at(law_line, std::string("[innovation] ") + e.what());
  }
}

void read_measure(SectionReader& sec, ExperimentConfig& cfg, Issues& issues) {
  if (!sec.present()) return;
  RawEntry* kind_entry = sec.take("kind");
  if (!kind_entry) {
    issues.at(sec.line(), "[measure] requires 'kind'");
    return;
  }
  const std::string kind = trim(kind_entry->value);
  const int line = kind_entry->line;
  try {
    if (kind == "nested_circles" || kind == "marching_circles") {
      long long depth = 3;
      if (std::optional<long long> d = sec.integer("depth")) depth = *d;
      if (depth < 1 || depth > 12) {
        issues.at(line, "key 'depth': expected an integer in [1, 12]");
        return;
      }
      cfg.measure = kind == "nested_circles"
                        ? nested_circles_measure(static_cast<int>(depth))
                        : marching_circles_measure(static_cast<int>(depth));
      return;
    }
    if (kind == "circle") {
      Vec center = {0.0, 0.0};
      if (std::optional<Vec> c = sec.reals("center")) {
        if (c->size() != 2) {
          issues.at(line, "key 'center': expected two components");
          return;
        }
        center = *c;
      }
      std::optional<double> radius = sec.real("radius");
      if (!radius) {
        issues.at(line, "measure kind circle requires 'radius'");
        return;
      }
      double weight = 1.0;
      if (std::optional<double> w = sec.real("weight")) weight = *w;
      cfg.measure = Measure::circle(center, *radius, weight);
      return;
    }
    if (kind == "density_gaussian_bump" || kind == "uniform_box") {
      Vec box_vals = {-2.0, -2.0, 2.0, 2.0};
      if (std::optional<Vec> b = sec.reals("box")) {
        if (b->size() != 4 || !((*b)[0] < (*b)[2]) || !((*b)[1] < (*b)[3])) {
          issues.at(line,
                    "key 'box': expected 'x_lo, y_lo, x_hi, y_hi' with "
                    "lo < hi per axis");
          return;
        }
        box_vals = *b;
      }
      const Box box{{box_vals[0], box_vals[1]}, {box_vals[2], box_vals[3]}};
      double mass = 1.0;
      if (std::optional<double> m = sec.real("mass")) mass = *m;
      if (!(mass > 0.0)) {
        issues.at(line, "key 'mass': must be positive");
        return;
      }
      std::size_t resolution = 200;
      if (std::optional<std::size_t> r = sec.count("resolution"))
        resolution = *r;
      if (kind == "uniform_box") {
        const double level = mass / box.volume();
        cfg.measure = Measure::density([level](const Vec&) { return level; },
                                       box, resolution);
        return;
      }
      Vec center = {0.0, 0.0};
      if (std::optional<Vec> c = sec.reals("center")) {
        if (c->size() != 2) {
          issues.at(line, "key 'center': expected two components");
          return;
        }
        center = *c;
      }
      double scale = 0.5;
      if (std::optional<double> s = sec.real("scale")) scale = *s;
      if (!(scale > 0.0)) {
        issues.at(line, "key 'scale': must be positive");
        return;
      }
      // continuum normalization; the lattice mass tracks it up to box
      // truncation, which the runner reports via total_mass()
      const double peak = mass / (kTwoPi * scale * scale);
      cfg.measure = Measure::density(
          [center, scale, peak](const Vec& y) {
            const double d = dist2(y, center);
            return peak * std::exp(-d * d / (2.0 * scale * scale));
          },
          box, resolution);
      return;
    }
    issues.at(line,
              "key 'kind': expected nested_circles, marching_circles, circle, "
              "density_gaussian_bump or uniform_box, got '" +
                  kind + "'");
  } catch (const std::invalid_argument& e) {
    issues.at(line, std::string("[measure] ") + e.what());
  }
}

void read_symbol(SectionReader& sec, ExperimentConfig& cfg, Issues& issues) {
  if (!sec.present()) return;
  RawEntry* mode_entry = sec.take("mode");
  if (!mode_entry) {
    issues.at(sec.line(), "[symbol] requires 'mode'");
    return;
  }
  const std::string mode = trim(mode_entry->value);
  if (mode == "smoothed") {
    cfg.symbol.mode = SymbolMode::smoothed;
    if (!cfg.measure.has_value())
      issues.at(mode_entry->line,
                "symbol mode smoothed needs a [measure] section");
  } else if (mode == "constant") {
    cfg.symbol.mode = SymbolMode::constant;
    if (std::optional<double> v = sec.real("value")) {
      if (*v < 0.0)
        issues.at(mode_entry->line, "key 'value': must be nonnegative");
      else
        cfg.symbol.value = *v;
    }
  } else if (mode == "gaussian_bump") {
    cfg.symbol.mode = SymbolMode::gaussian_bump;
    if (std::optional<double> a = sec.real("amplitude")) {
      if (*a < 0.0)
        issues.at(mode_entry->line, "key 'amplitude': must be nonnegative");
      else
        cfg.symbol.amplitude = *a;
    }
    if (std::optional<double> w = sec.real("width")) {
      if (!(*w > 0.0))
        issues.at(mode_entry->line, "key 'width': must be positive");
      else
        cfg.symbol.width = *w;
    }
    if (std::optional<Vec> c = sec.reals("center")) cfg.symbol.center = *c;
  } else {
    issues.at(mode_entry->line,
              "key 'mode': expected smoothed, constant or gaussian_bump, "
              "got '" +
                  mode + "'");
  }
}

void read_run(SectionReader& sec, ExperimentConfig& cfg, Issues& issues) {
  if (!sec.present()) return;
  RunSettings& run = cfg.run;
  if (std::optional<double> t = sec.real("t")) {
    if (!(*t > 0.0))
      issues.at(sec.last_line(), "key 't': must be positive");
    else
      run.t = *t;
  }
  if (std::optional<Vec> x = sec.reals("x")) {
    if (x->empty())
      issues.at(sec.last_line(), "key 'x': needs at least one component");
    else
      run.x = *x;
  }
  if (std::optional<std::size_t> n = sec.count("n")) run.n = *n;
  if (std::optional<std::size_t> p = sec.count("paths")) run.paths = *p;
  if (std::optional<std::uint64_t> s = sec.u64("seed")) run.seed = *s;
  if (std::optional<std::size_t> r = sec.count("replicates"))
    run.replicates = *r;
  if (std::optional<std::vector<std::size_t>> nl = sec.counts("n_list")) {
    if (nl->empty())
      issues.at(sec.last_line(), "key 'n_list': needs at least one entry");
    else
      run.n_list = *nl;
  }
  if (RawEntry* e = sec.take("deltas")) {
    Vec ds;
    bool good = true;
    for (const std::string& tok : split(e->value, ',')) {
      double v;
      if (!parse_real_token(tok, v) || !(v > 0.0)) {
        issues.at(e->line, "key 'deltas': expected positive reals");
        good = false;
        break;
      }
      ds.push_back(v);
    }
    for (std::size_t i = 1; good && i < ds.size(); ++i) {
      if (!(ds[i] < ds[i - 1])) {
        issues.at(e->line, "key 'deltas': must be strictly decreasing");
        good = false;
      }
    }
    if (good && !ds.empty()) run.deltas = ds;
  }
  if (RawEntry* e = sec.take("radii")) {
    Vec rs;
    bool good = true;
    for (const std::string& tok : split(e->value, ',')) {
      double v;
      if (!parse_real_token(tok, v) || !(v > 0.0)) {
        issues.at(e->line, "key 'radii': expected positive reals");
        good = false;
        break;
      }
      rs.push_back(v);
    }
    if (good) run.radii = rs;
  }
  if (std::optional<std::size_t> s = sec.count("substeps")) run.substeps = *s;
  if (std::optional<bool> a = sec.boolean("antithetic")) run.antithetic = *a;
  if (std::optional<CallForm> c = sec.call("terminal")) {
    if (c->name == "one" && c->args.empty()) {
      run.terminal.kind = TerminalKind::one;
    } else if (c->name == "gauss" && c->args.empty()) {
      run.terminal.kind = TerminalKind::gauss;
    } else if (c->name == "ball" && c->args.size() == 1) {
      double r;
      if (!parse_real_token(c->args[0], r) || !(r > 0.0)) {
        issues.at(sec.last_line(),
                  "key 'terminal': ball(r) needs a positive radius");
      } else {
        run.terminal.kind = TerminalKind::ball;
        run.terminal.radius = r;
      }
    } else {
      issues.at(sec.last_line(), "key 'terminal': expected one, gauss or ball(r)");
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  Issues issues;
  std::map<std::string, RawSection> sections = scan_lines(text, issues);

  ExperimentConfig cfg;
  SectionReader diffusion(sections, "diffusion", issues);
  read_diffusion(diffusion, cfg, issues);
  SectionReader innovation(sections, "innovation", issues);
  read_innovation(innovation, cfg, issues);
  SectionReader measure(sections, "measure", issues);
  read_measure(measure, cfg, issues);
  SectionReader symbol(sections, "symbol", issues);
  read_symbol(symbol, cfg, issues);
  SectionReader run(sections, "run", issues);
  read_run(run, cfg, issues);

  // leftover-key sweep: anything not consumed is either foreign to its
  // section or inapplicable to the chosen variant
  for (const auto& [name, sec] : sections) {
    if (!kKnownSections.count(name)) continue;
    const std::set<std::string>& vocab = kSectionKeys.at(name);
    for (const auto& [key, entry] : sec.entries) {
      if (entry.used) continue;
      if (vocab.count(key))
        issues.at(entry.line, "key '" + key + "' in [" + name +
                                  "] does not apply to this configuration");
      else
        issues.at(entry.line, "unknown key '" + key + "' in [" + name + "]");
    }
  }

  if (!issues.list.empty()) throw config_error(std::move(issues.list));
  return cfg;
}

void require_for_command(const ExperimentConfig& cfg,
                         const std::string& command) {
  std::vector<std::string> missing;
  auto need_diffusion = [&] {
    if (!cfg.has_diffusion)
      missing.push_back("command '" + command +
                        "' needs a [diffusion] section");
  };
  auto need_measure = [&] {
    if (!cfg.measure.has_value())
      missing.push_back("command '" + command + "' needs a [measure] section");
  };
  auto need_symbol = [&] {
    if (cfg.symbol.mode == SymbolMode::none)
      missing.push_back("command '" + command + "' needs a [symbol] section");
  };
  if (command == "simulate") {
    need_diffusion();
  } else if (command == "characteristics") {
    need_measure();
  } else if (command == "estimate-u" || command == "convergence") {
    need_diffusion();
    need_symbol();
  } else if (command == "check-measure") {
    need_measure();
  } else if (command == "couple") {
    need_diffusion();
  } else if (command == "acceptance") {
    // self-contained
  } else {
    missing.push_back("unknown command '" + command + "'");
  }
  if (!missing.empty()) throw config_error(std::move(missing));
}

}  // namespace ltmc
