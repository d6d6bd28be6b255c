#include "fqb/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace fqb {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_real(v[i]);
  return out;
}

std::string join_sites(const std::vector<int>& v, int offset) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i] + offset);
  return out;
}

std::string sig12(double v) { return fmt::format("{:.12g}", v); }

std::string log_base_name(LogBase b) { return b == LogBase::Natural ? "e" : "2"; }

LogBase parse_log_base(const std::string& s) {
  if (s == "e") return LogBase::Natural;
  if (s == "2") return LogBase::Two;
  throw std::invalid_argument("log base must be 'e' or '2', got '" + s + "'");
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex pi_form(R"(^([0-9]*\.?[0-9]*(?:[eE][-+]?[0-9]+)?)\s*\*?\s*pi\s*(?:/\s*([0-9]+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    const double factor = m[1].length() > 0 ? parse_real(m[1].str()) : 1.0;
    const long denom = m[2].matched ? parse_long(m[2].str()) : 1;
    if (denom == 0) throw std::invalid_argument("zero denominator in angle '" + s + "'");
    return factor * std::numbers::pi / static_cast<double>(denom);
  }
  return parse_real(s);
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty grid");
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw std::invalid_argument("range grid must be start:stop:step, got '" + s + "'");
    const double start = parse_angle(parts[0]);
    const double stop = parse_angle(parts[1]);
    const double step = parse_angle(parts[2]);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("invalid range grid '" + s + "'");
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (long k = 0; k < count; ++k) grid.push_back(start + static_cast<double>(k) * step);
    return grid;
  }
  std::vector<double> grid;
  for (const auto& part : split(s, ',')) grid.push_back(parse_angle(part));
  return grid;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split(trim(text), ',')) out.push_back(static_cast<int>(parse_long(part)));
  return out;
}

std::string format_real(double v) { return fmt::format("{}", v); }

std::string canonical_params(const ChargerParams& p) {
  return fmt::format("n_sites={} coupling={} hx={} hz={} omega={} tau0={} tau1={} boundary={} range={} "
                     "antipodal_halving={}",
                     p.n_sites, format_real(p.coupling), format_real(p.hx), format_real(p.hz), format_real(p.omega),
                     format_real(p.tau0), format_real(p.tau1), to_string(p.boundary), to_string(p.range),
                     p.antipodal_halving ? 1 : 0);
}

ChargerParams parse_canonical_params(std::string_view line) {
  ChargerParams p;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed params token '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "n_sites") p.n_sites = static_cast<int>(parse_long(value));
    else if (key == "coupling") p.coupling = parse_real(value);
    else if (key == "hx") p.hx = parse_real(value);
    else if (key == "hz") p.hz = parse_real(value);
    else if (key == "omega") p.omega = parse_real(value);
    else if (key == "tau0") p.tau0 = parse_real(value);
    else if (key == "tau1") p.tau1 = parse_real(value);
    else if (key == "boundary") p.boundary = parse_boundary(value);
    else if (key == "range") p.range = parse_range(value);
    else if (key == "antipodal_halving") p.antipodal_halving = parse_bool(value);
    else throw std::invalid_argument("unknown params key '" + key + "'");
  }
  return p;
}

long RunConfig::effective_kicks() const { return kicks.value_or(command == "validate" ? 50 : kDefaultKicks); }

std::string config_to_string(const RunConfig& cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  const ChargerParams& p = cfg.params;
  tree.put("charger.n_sites", p.n_sites);
  tree.put("charger.coupling", format_real(p.coupling));
  tree.put("charger.hx", format_real(p.hx));
  tree.put("charger.hz", format_real(p.hz));
  tree.put("charger.omega", format_real(p.omega));
  tree.put("charger.tau0", format_real(p.tau0));
  tree.put("charger.tau1", format_real(p.tau1));
  tree.put("charger.boundary", to_string(p.boundary));
  tree.put("charger.range", to_string(p.range));
  tree.put("charger.antipodal_halving", p.antipodal_halving ? "true" : "false");

  tree.put("run.command", cfg.command);
  if (cfg.kicks) tree.put("run.kicks", *cfg.kicks);
  tree.put("run.workers", cfg.workers);
  tree.put("run.out", cfg.out);
  tree.put("run.plot", cfg.plot);

  tree.put("sweep.grid", join_reals(cfg.grid));
  tree.put("sweep.sizes", join_sites(cfg.sizes, 0));
  tree.put("sweep.couplings", join_reals(cfg.couplings));
  tree.put("sweep.fixed", cfg.fixed == FixedInterval::Tau0 ? "tau0" : "tau1");
  if (cfg.fixed_value) tree.put("sweep.fixed_value", format_real(*cfg.fixed_value));

  tree.put("entropy.sites", join_sites(cfg.entropy_sites, 1));
  tree.put("entropy.log_base", log_base_name(cfg.log_base));

  tree.put("validate.max_sites", cfg.max_sites);
  tree.put("validate.tolerance", format_real(cfg.tolerance));

  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

RunConfig config_from_string(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  RunConfig cfg;
  ChargerParams& p = cfg.params;
  const auto get = [&](const std::string& key) { return tree.get_optional<std::string>(key); };

  static const char* const known[] = {
      "charger.n_sites", "charger.coupling", "charger.hx", "charger.hz", "charger.omega", "charger.tau0",
      "charger.tau1", "charger.boundary", "charger.range", "charger.antipodal_halving", "run.command", "run.kicks",
      "run.workers", "run.out", "run.plot", "sweep.grid", "sweep.sizes", "sweep.couplings", "sweep.fixed",
      "sweep.fixed_value", "entropy.sites", "entropy.log_base", "validate.max_sites", "validate.tolerance"};
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (std::find(std::begin(known), std::end(known), full) == std::end(known)) {
        throw std::invalid_argument("config: unknown key '" + full + "'");
      }
    }
  }

  try {
    if (auto v = get("charger.n_sites")) p.n_sites = static_cast<int>(parse_long(*v));
    if (auto v = get("charger.coupling")) p.coupling = parse_real(trim(*v));
    if (auto v = get("charger.hx")) p.hx = parse_real(trim(*v));
    if (auto v = get("charger.hz")) p.hz = parse_real(trim(*v));
    if (auto v = get("charger.omega")) p.omega = parse_real(trim(*v));
    if (auto v = get("charger.tau0")) p.tau0 = parse_angle(*v);
    if (auto v = get("charger.tau1")) p.tau1 = parse_angle(*v);
    if (auto v = get("charger.boundary")) p.boundary = parse_boundary(trim(*v));
    if (auto v = get("charger.range")) p.range = parse_range(trim(*v));
    if (auto v = get("charger.antipodal_halving")) p.antipodal_halving = parse_bool(trim(*v));

    if (auto v = get("run.command")) cfg.command = trim(*v);
    if (auto v = get("run.kicks")) cfg.kicks = parse_long(trim(*v));
    if (auto v = get("run.workers")) cfg.workers = static_cast<unsigned>(parse_long(trim(*v)));
    if (auto v = get("run.out")) cfg.out = trim(*v);
    if (auto v = get("run.plot")) cfg.plot = trim(*v);

    if (auto v = get("sweep.grid"); v && !trim(*v).empty()) cfg.grid = parse_grid(*v);
    if (auto v = get("sweep.sizes"); v && !trim(*v).empty()) cfg.sizes = parse_int_list(*v);
    if (auto v = get("sweep.couplings"); v && !trim(*v).empty()) cfg.couplings = parse_grid(*v);
    if (auto v = get("sweep.fixed")) {
      const std::string f = trim(*v);
      if (f != "tau0" && f != "tau1") throw std::invalid_argument("sweep.fixed must be tau0 or tau1");
      cfg.fixed = f == "tau0" ? FixedInterval::Tau0 : FixedInterval::Tau1;
    }
    if (auto v = get("sweep.fixed_value")) cfg.fixed_value = parse_angle(*v);

    if (auto v = get("entropy.sites"); v && !trim(*v).empty()) {
      cfg.entropy_sites = parse_int_list(*v);
      for (int& s : cfg.entropy_sites) --s;
    }
    if (auto v = get("entropy.log_base")) cfg.log_base = parse_log_base(trim(*v));

    if (auto v = get("validate.max_sites")) cfg.max_sites = static_cast<int>(parse_long(trim(*v)));
    if (auto v = get("validate.tolerance")) cfg.tolerance = parse_real(trim(*v));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_string(buf.str());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_series_csv(const KickSeries& series, std::ostream& out, LogBase base) {
  const bool with_entropy = !series.records.empty() && series.records.front().entropy.has_value();
  out << "# params: " << canonical_params(series.params) << '\n';
  out << "n,delta_e,power";
  if (with_entropy) out << (base == LogBase::Natural ? ",entropy,entropy_bits" : ",entropy,entropy_nats");
  out << '\n';
  for (const KickRecord& r : series.records) {
    out << r.n << ',' << sig12(r.delta_e) << ',' << sig12(r.power);
    if (with_entropy) {
      const double nats = r.entropy.value_or(0.0);
      const double bits = nats / std::numbers::ln2;
      out << ',' << sig12(base == LogBase::Natural ? nats : bits) << ','
          << sig12(base == LogBase::Natural ? bits : nats);
    }
    out << '\n';
  }
}

void write_series_csv(const KickSeries& series, const std::filesystem::path& path, LogBase base) {
  std::ofstream out = open_output(path);
  write_series_csv(series, out, base);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

KickSeries read_series_csv(std::istream& in) {
  KickSeries series;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# params: ", 0) != 0) {
    throw std::invalid_argument("series CSV must start with '# params:'");
  }
  series.params = parse_canonical_params(line.substr(10));
  if (!std::getline(in, line)) throw std::invalid_argument("series CSV missing header");
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "n" || header[1] != "delta_e" || header[2] != "power") {
    throw std::invalid_argument("unexpected series CSV header '" + line + "'");
  }
  const bool with_entropy = header.size() == 5;
  const bool entropy_in_bits = with_entropy && header[4] == "entropy_nats";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw std::invalid_argument("ragged series CSV row '" + line + "'");
    KickRecord r;
    r.n = parse_long(cells[0]);
    r.delta_e = parse_real(cells[1]);
    r.power = parse_real(cells[2]);
    if (with_entropy) r.entropy = entropy_in_bits ? parse_real(cells[4]) : parse_real(cells[3]);
    series.records.push_back(r);
  }
  return series;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  out << "# params: " << canonical_params(sweep.base_params) << '\n';
  out << "# axis: " << to_string(sweep.axis) << " n_max: " << sweep.n_max << '\n';
  out << "value,delta_e_max,n_star,p_max,period\n";
  for (const SweepPoint& pt : sweep.points) {
    out << sig12(pt.value) << ',' << sig12(pt.delta_e_max) << ',' << pt.n_star << ',' << sig12(pt.p_max) << ',';
    if (pt.period) out << *pt.period;
    out << '\n';
  }
}

void write_landscape_csv(const std::vector<LandscapeRow>& rows, int n_sites, long n_max, std::ostream& out) {
  out << "# landscape: n_sites=" << n_sites << " n_max=" << n_max << '\n';
  out << "range,dynamics,boundary,tau_index,tau,delta_e_max,n_star,prediction,match,alt_prediction,alt_match\n";
  for (const LandscapeRow& r : rows) {
    out << to_string(r.range) << ',' << (r.integrable ? "integrable" : "nonintegrable") << ','
        << to_string(r.boundary) << ',' << r.tau_index << ',' << sig12(r.tau) << ',' << sig12(r.delta_e_max) << ','
        << r.n_star << ',' << r.prediction.text << ',' << (r.match ? 1 : 0) << ',';
    if (r.alternative) out << r.alternative->text << ',' << (r.alternative_match ? 1 : 0);
    else out << ',';
    out << '\n';
  }
}

void write_validation_csv(const std::vector<ValidationRow>& rows, std::ostream& out) {
  out << "n_sites,boundary,range,hx,tau0,tau1,max_amp_dev,max_energy_dev,pass\n";
  for (const ValidationRow& r : rows) {
    const ChargerParams& p = r.params;
    out << p.n_sites << ',' << to_string(p.boundary) << ',' << to_string(p.range) << ',' << sig12(p.hx) << ','
        << sig12(p.tau0) << ',' << sig12(p.tau1) << ',' << fmt::format("{:.6e}", r.report.max_amp_dev) << ','
        << fmt::format("{:.6e}", r.report.max_energy_dev) << ',' << (r.report.pass ? 1 : 0) << '\n';
  }
}

}  // namespace fqb
