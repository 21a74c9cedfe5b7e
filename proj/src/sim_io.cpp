#include "immocz/sim_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace immocz {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number for " + what + ": '" + token + "'");
  }
}

std::int64_t parse_int(const std::string& token, const std::string& what) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer for " + what + ": '" + token + "'");
  }
}

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::kMocz ? "MOCZ" : "IM-MOCZ";
}

std::string to_string(Detector detector) {
  return detector == Detector::kRfmd ? "RFMD" : "DiZeT";
}

Scheme parse_scheme(const std::string& token) {
  const std::string t = lower(token);
  if (t == "mocz") return Scheme::kMocz;
  if (t == "im-mocz" || t == "immocz" || t == "im_mocz") return Scheme::kImMocz;
  throw std::invalid_argument("unknown scheme '" + token + "' (expected MOCZ or IM-MOCZ)");
}

Detector parse_detector(const std::string& token) {
  const std::string t = lower(token);
  if (t == "rfmd") return Detector::kRfmd;
  if (t == "dizet") return Detector::kDizet;
  throw std::invalid_argument("unknown detector '" + token + "' (expected rfmd or dizet)");
}

SimConfig parse_sim_config(std::istream& in, const std::string& source_name) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(source_name + ":" + std::to_string(line_number) +
                    ": expected key=value");
    }
    kv[lower(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(source_name + ": missing key '" + key + "'");
    const std::string value = it->second;
    kv.erase(it);
    return value;
  };
  auto take_or = [&](const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const std::string value = it->second;
    kv.erase(it);
    return value;
  };

  SimConfig config;
  config.params.message_bits = static_cast<int>(parse_int(take("n"), "N"));
  config.params.explicit_bits = static_cast<int>(parse_int(take("k"), "K"));
  config.params.channel_taps = static_cast<int>(parse_int(take("l_ch"), "L_ch"));
  config.params.outer_radius = parse_double(take_or("r", "1.1974"), "R");
  config.scheme = parse_scheme(take("scheme"));
  config.detector = parse_detector(take("detector"));

  const std::vector<std::string> point_tokens = split(take("ebn0_points"), ',');
  if (point_tokens.empty()) throw std::invalid_argument(source_name + ": empty ebn0_points");
  std::vector<std::string> trial_tokens =
      split(take_or("trials_per_point", ""), ',');

  for (std::size_t i = 0; i < point_tokens.size(); ++i) {
    SweepPoint point;
    point.ebn0_db = parse_double(point_tokens[i], "ebn0_points");
    if (trial_tokens.empty() || trial_tokens.front().empty()) {
      point.trials = default_trials_for(point.ebn0_db);
    } else if (trial_tokens.size() == 1) {
      point.trials = parse_int(trial_tokens[0], "trials_per_point");
    } else if (trial_tokens.size() == point_tokens.size()) {
      point.trials = parse_int(trial_tokens[i], "trials_per_point");
    } else {
      throw std::invalid_argument(source_name +
                    ": trials_per_point must hold one count or one per point");
    }
    config.points.push_back(point);
  }

  config.master_seed =
      static_cast<std::uint64_t>(parse_int(take_or("master_seed", "1"), "master_seed"));
  config.workers = static_cast<int>(parse_int(take_or("workers", "1"), "workers"));

  const std::string norm = lower(take_or("channel_normalization", "expectation"));
  if (norm == "expectation") {
    config.channel_normalization = ChannelNormalization::kExpectation;
  } else if (norm == "per-realization" || norm == "per_realization") {
    config.channel_normalization = ChannelNormalization::kPerRealization;
  } else {
    throw std::invalid_argument(source_name + ": unknown channel_normalization '" + norm + "'");
  }

  const std::string conv = lower(take_or("ebn0_convention", "per-explicit-bit"));
  if (conv == "per-explicit-bit" || conv == "per_explicit_bit" || conv == "paper") {
    config.ebn0_convention = Ebn0Convention::kPerExplicitBit;
  } else if (conv == "per-information-bit" || conv == "per_information_bit") {
    config.ebn0_convention = Ebn0Convention::kPerInformationBit;
  } else {
    throw std::invalid_argument(source_name + ": unknown ebn0_convention '" + conv + "'");
  }

  if (!kv.empty()) {
    throw std::invalid_argument(source_name + ": unknown key '" + kv.begin()->first + "'");
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source_name + ": " + e.what());
  }
  return config;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_sim_config(in, path);
}

std::int64_t default_trials_for(double ebn0_db) {
  if (ebn0_db <= 10.0) return 20000;
  if (ebn0_db <= 22.0) return 40000;
  if (ebn0_db <= 34.0) return 60000;
  return 110000;
}

namespace {

struct PresetSpec {
  int n;
  int k;
  int l_ch;
};

const std::map<std::string, PresetSpec>& preset_table() {
  static const std::map<std::string, PresetSpec> table = {
      {"fig3-K8", {10, 8, 3}},  {"fig3-K6", {10, 6, 3}},  {"fig3-K4", {10, 4, 3}},
      {"fig4-K18", {20, 18, 6}}, {"fig4-K16", {20, 16, 6}}, {"fig4-K14", {20, 14, 6}},
  };
  return table;
}

std::vector<SweepPoint> default_grid() {
  std::vector<SweepPoint> points;
  for (double db = -5.0; db <= 43.0; db += 3.0) {
    points.push_back({db, default_trials_for(db)});
  }
  return points;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : preset_table()) names.push_back(name);
  return names;
}

std::vector<SimConfig> preset_runs(const std::string& name, std::uint64_t master_seed,
                                   int workers) {
  const auto it = preset_table().find(name);
  if (it == preset_table().end()) {
    std::string known;
    for (const std::string& n : preset_names()) known += " " + n;
    throw std::invalid_argument("unknown preset '" + name + "'; available:" + known);
  }
  const PresetSpec& spec = it->second;

  std::vector<SimConfig> runs;
  for (const Scheme scheme : {Scheme::kImMocz, Scheme::kMocz}) {
    for (const Detector detector : {Detector::kRfmd, Detector::kDizet}) {
      SimConfig config;
      config.params.message_bits = spec.n;
      config.params.explicit_bits = scheme == Scheme::kMocz ? spec.n : spec.k;
      config.params.channel_taps = spec.l_ch;
      config.params.outer_radius = 1.1974;
      config.scheme = scheme;
      config.detector = detector;
      config.points = default_grid();
      config.master_seed = master_seed;
      config.workers = workers;
      runs.push_back(std::move(config));
    }
  }
  return runs;
}

std::string csv_header() {
  return "scheme,detector,N,K,L_ch,R,ebn0_db,trials,bits,bit_errors,ber,"
         "implicit_ber,explicit_ber,codebook_error_rate,ci95,ties,"
         "empty_sectors,root_failures\n";
}

std::string csv_rows(const BerCurve& curve) {
  const SimConfig& c = curve.config;
  std::string out;
  for (const PointStats& s : curve.points) {
    out += to_string(c.scheme) + "," + to_string(c.detector) + "," +
           std::to_string(c.params.message_bits) + "," +
           std::to_string(c.params.explicit_bits) + "," +
           std::to_string(c.params.channel_taps) + "," +
           format_double(c.params.outer_radius) + "," +
           format_double(s.ebn0_db) + "," + std::to_string(s.trials) + "," +
           std::to_string(s.bits) + "," + std::to_string(s.bit_errors) + "," +
           format_double(s.ber) + "," + format_double(s.implicit_ber) + "," +
           format_double(s.explicit_ber) + "," +
           format_double(s.codebook_error_rate) + "," + format_double(s.ci95) +
           "," + std::to_string(s.ties) + "," + std::to_string(s.empty_sectors) +
           "," + std::to_string(s.root_failures) + "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string plot_script_for(const std::string& csv_path) {
  std::string script;
  script += "#!/usr/bin/env python3\n";
  script += "\"\"\"Plot BER-vs-Eb/N0 curves from " + csv_path + ".\"\"\"\n";
  script += "import csv\n";
  script += "from collections import defaultdict\n";
  script += "import matplotlib\n";
  script += "matplotlib.use(\"Agg\")\n";
  script += "import matplotlib.pyplot as plt\n";
  script += "\n";
  script += "curves = defaultdict(list)\n";
  script += "with open(\"" + csv_path + "\", newline=\"\") as f:\n";
  script += "    for row in csv.DictReader(f):\n";
  script += "        label = \"{} K={} {}\".format(row[\"scheme\"], row[\"K\"], "
            "row[\"detector\"])\n";
  script += "        curves[label].append((float(row[\"ebn0_db\"]), "
            "float(row[\"ber\"])))\n";
  script += "\n";
  script += "fig, ax = plt.subplots(figsize=(7, 5))\n";
  script += "for label, pts in sorted(curves.items()):\n";
  script += "    pts.sort()\n";
  script += "    xs = [p[0] for p in pts]\n";
  script += "    ys = [max(p[1], 1e-12) for p in pts]\n";
  script += "    ax.semilogy(xs, ys, marker=\"o\", label=label)\n";
  script += "ax.set_xlabel(\"Eb/N0 (dB)\")\n";
  script += "ax.set_ylabel(\"BER\")\n";
  script += "ax.grid(True, which=\"both\", alpha=0.3)\n";
  script += "ax.legend()\n";
  script += "out = \"" + csv_path + ".png\"\n";
  script += "fig.savefig(out, dpi=150, bbox_inches=\"tight\")\n";
  script += "print(\"wrote\", out)\n";
  return script;
}

ComplexVector read_signal_file(const std::string& path, int expected_length) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal file '" + path + "'");
  std::vector<Complex> samples;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) continue;
    std::istringstream fields(body);
    double re = 0.0, im = 0.0;
    std::string rest;
    if (!(fields >> re >> im) || (fields >> rest)) {
      throw IoError(path + ":" + std::to_string(line_number) +
                    ": expected two numbers 're im'");
    }
    samples.emplace_back(re, im);
  }
  if (samples.empty()) {
    throw IoError(path + ":1: empty signal file");
  }
  if (static_cast<int>(samples.size()) != expected_length) {
    throw IoError(path + ":" + std::to_string(line_number) + ": got " +
                  std::to_string(samples.size()) + " samples, expected " +
                  std::to_string(expected_length) + " (K + L_ch)");
  }
  ComplexVector y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = samples[i];
  }
  return y;
}

std::string format_codebook_dump(const CodebookSet& set) {
  std::string out;
  char buf[128];
  for (const Codebook& book : set.books) {
    for (std::size_t k = 0; k < book.pairs.size(); ++k) {
      const ZeroPair& pair = book.pairs[k];
      std::snprintf(buf, sizeof(buf), "%d,%zu,outer,%.16g,%.16g\n", book.index,
                    k + 1, pair.outer.real(), pair.outer.imag());
      out += buf;
      std::snprintf(buf, sizeof(buf), "%d,%zu,inner,%.16g,%.16g\n", book.index,
                    k + 1, pair.inner.real(), pair.inner.imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace immocz
