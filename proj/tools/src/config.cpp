#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "cgslab/app.hpp"

namespace cgslab {

namespace {

cgs::Error config_error(const std::string& what) { return cgs::Error(cgs::ErrorKind::Config, what); }

enum class Kind { Integer, Unsigned, Number, Boolean, String, IntList, NumberList, IntMatrix4, Object, ObjectList };

struct Field {
  std::string key;
  Kind kind;
  json fallback;  // null: required
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::vector<std::string> choices = {};
  std::vector<Field> children = {};
};

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Integer: return "integer";
    case Kind::Unsigned: return "non-negative integer";
    case Kind::Number: return "number";
    case Kind::Boolean: return "boolean";
    case Kind::String: return "string";
    case Kind::IntList: return "array of integers";
    case Kind::NumberList: return "array of numbers";
    case Kind::IntMatrix4: return "4x4 array of integers";
    case Kind::Object: return "object";
    case Kind::ObjectList: return "array of objects";
  }
  return "?";
}

constexpr double kInf = std::numeric_limits<double>::infinity();

Field num(std::string key, json fallback, double lo = -kInf, double hi = kInf) {
  return {std::move(key), Kind::Number, std::move(fallback), lo, hi};
}
Field integer(std::string key, json fallback, double lo, double hi) {
  return {std::move(key), Kind::Integer, std::move(fallback), lo, hi};
}
Field count(std::string key, json fallback, double lo = 0, double hi = 1e12) {
  return {std::move(key), Kind::Unsigned, std::move(fallback), lo, hi};
}
Field choice(std::string key, std::string fallback, std::vector<std::string> choices) {
  return {std::move(key), Kind::String, json(std::move(fallback)), -kInf, kInf, std::move(choices)};
}
Field flag(std::string key, bool fallback) { return {std::move(key), Kind::Boolean, json(fallback)}; }

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> t{
      {"symmetry", Command::Symmetry}, {"classical", Command::Classical}, {"loops", Command::Loops},
      {"mc", Command::Mc},             {"ed", Command::Ed},               {"wxy", Command::Wxy},
      {"wkb", Command::Wkb},           {"circuit", Command::Circuit}};
  return t;
}

bool has_lattice(Command c) {
  return c == Command::Classical || c == Command::Loops || c == Command::Mc || c == Command::Ed ||
         c == Command::Wxy;
}

std::vector<Field> command_fields(Command c) {
  switch (c) {
    case Command::Symmetry:
      return {choice("family", "diagonal", {"diagonal", "monomial"}),
              {"W", Kind::IntMatrix4, json(nullptr)}};
    case Command::Classical:
      return {num("J", 1.0, 1e-300),
              count("steps", 64, 1, 100000),
              {"plaquette", Kind::IntList, json::array({0, 0})},
              count("manifold_samples", 10000, 0, 1e8)};
    case Command::Loops:
      return {num("lambda", 1.0, 0.0),
              flag("enumerate", true),
              {"fugacity_K", Kind::NumberList, json::array()},
              {"fugacity_p", Kind::IntList, json::array({3, 4})}};
    case Command::Mc:
      return {num("K_eff", 50.0, 1e-300),
              choice("mode", "effective", {"effective", "full"}),
              count("sweeps", 20000, 1),
              count("burn_in", 2000),
              count("measure_every", 10, 1),
              count("chains", 4, 1, 4096),
              choice("start", "random", {"random", "crystal"}),
              num("loop_tolerance", 1e-3, 1e-300),
              flag("plaquette_moves", true),
              count("blocks", 20, 2)};
    case Command::Ed:
      return {num("lambda_J", json(nullptr)),
              num("lambda_flip", json(nullptr)),
              num("lambda_flip_b", json(nullptr)),
              count("n_low", 8, 1, 4096),
              num("tol", 1e-10, 1e-15, 1e-2),
              flag("conservation", true)};
    case Command::Wxy:
      return {choice("cluster", "waffle", {"waffle", "ring", "lattice"}),
              num("J", 1.0, 1e-300),
              num("h_matter", 0.0),
              num("h_gauge", 0.0),
              count("n_low", 8, 1, 4096)};
    case Command::Wkb:
      return {num("J", 1.0, 1e-300),
              num("C", 1.0, 1e-300),
              num("k", 1.0),
              num("K", 1.0, 1e-300),
              num("jc_min", 10.0, 1e-300),
              num("jc_max", 1e4, 1e-300),
              count("points", 31, 2, 1e6)};
    case Command::Circuit: {
      const auto typical = [](double f) { return f * 1e-15; };
      Field squid{"squid", Kind::Object, json::object()};
      squid.children = {num("J_w", 1.0, 1e-300), num("J_t", 0.1, 0.0), num("Phi_w", 0.0),
                        num("Phi_t", 0.0),       num("e_LJ", 0.01, 0.0), count("points", 64, 4, 1e6)};
      Field target{"targets", Kind::ObjectList, json::array()};
      target.children = {{"name", Kind::String, json("")}, integer("sign", 1, -1, 1),
                         num("J_target", json(nullptr), 1e-300), num("J_w_actual", json(nullptr), 1e-300)};
      Field calibration{"calibration", Kind::Object, json::object()};
      calibration.children = {num("d_J", 0.15, 0.0, 1.0), count("draws", 0, 0, 1e7),
                              num("spread", 0.1, 0.0, 1.0), target};
      Field capacitance{"capacitance", Kind::Object, json::object()};
      capacitance.children = {num("C_J", typical(50), 0.0),     num("C_m", typical(10), 0.0),
                              num("C_g", typical(10), 0.0),     num("C_m_par", typical(1), 0.0),
                              num("C_m_par2", typical(0.3), 0.0), num("C_m_par3", typical(0.1), 0.0),
                              num("C_g_par", typical(1), 0.0),  num("C_g_par2", typical(0.3), 0.0),
                              num("C_g_par3", typical(0.1), 0.0)};
      return {squid, calibration, capacitance};
    }
  }
  return {};
}

bool is_integer(const json& v) {
  if (v.is_number_integer()) return true;
  return v.is_number_float() && std::isfinite(v.get<double>()) && v.get<double>() == std::floor(v.get<double>());
}

void check_range(const std::string& path, double x, const Field& f) {
  if (!(x >= f.lo && x <= f.hi)) {
    throw config_error("key '" + path + "': value " + json(x).dump() + " out of range [" + json(f.lo).dump() +
                       ", " + json(f.hi).dump() + "]");
  }
}

json validate_object(const json& in, const std::vector<Field>& fields, const std::string& prefix);

json validate_value(const json& v, const Field& f, const std::string& path) {
  const auto wrong = [&] { return config_error("key '" + path + "': expected " + kind_name(f.kind)); };
  switch (f.kind) {
    case Kind::Integer:
    case Kind::Unsigned: {
      if (!is_integer(v)) throw wrong();
      if (f.kind == Kind::Unsigned && v.is_number_unsigned()) {
        check_range(path, static_cast<double>(v.get<std::uint64_t>()), f);
        return json(v.get<std::uint64_t>());
      }
      const double x = v.get<double>();
      if (f.kind == Kind::Unsigned && x < 0) throw wrong();
      check_range(path, x, f);
      return f.kind == Kind::Unsigned ? json(static_cast<std::uint64_t>(x)) : json(static_cast<std::int64_t>(x));
    }
    case Kind::Number:
      if (!v.is_number() || !std::isfinite(v.get<double>())) throw wrong();
      check_range(path, v.get<double>(), f);
      return json(v.get<double>());
    case Kind::Boolean:
      if (!v.is_boolean()) throw wrong();
      return v;
    case Kind::String:
      if (!v.is_string()) throw wrong();
      if (!f.choices.empty()) {
        bool ok = false;
        std::string list;
        for (const auto& c : f.choices) {
          ok = ok || c == v.get<std::string>();
          list += (list.empty() ? "" : ", ") + c;
        }
        if (!ok) throw config_error("key '" + path + "': expected one of {" + list + "}");
      }
      return v;
    case Kind::IntList:
    case Kind::NumberList: {
      if (!v.is_array()) throw wrong();
      json out = json::array();
      for (const auto& e : v) {
        if (f.kind == Kind::IntList ? !is_integer(e) : !(e.is_number() && std::isfinite(e.get<double>())))
          throw wrong();
        out.push_back(f.kind == Kind::IntList ? json(static_cast<std::int64_t>(e.get<double>())) : json(e.get<double>()));
      }
      return out;
    }
    case Kind::IntMatrix4: {
      if (!v.is_array() || v.size() != 4) throw wrong();
      for (const auto& row : v) {
        if (!row.is_array() || row.size() != 4) throw wrong();
        for (const auto& e : row)
          if (!is_integer(e)) throw wrong();
      }
      return v;
    }
    case Kind::Object:
      if (!v.is_object()) throw wrong();
      return validate_object(v, f.children, path + ".");
    case Kind::ObjectList: {
      if (!v.is_array()) throw wrong();
      json out = json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_object()) throw config_error("key '" + at + "': expected object");
        out.push_back(validate_object(v[i], f.children, at + "."));
      }
      return out;
    }
  }
  throw wrong();
}

json validate_object(const json& in, const std::vector<Field>& fields, const std::string& prefix) {
  for (const auto& [key, value] : in.items()) {
    bool known = false;
    for (const auto& f : fields) known = known || f.key == key;
    if (!known) throw config_error("unknown key '" + prefix + key + "'");
  }
  json out = json::object();
  for (const auto& f : fields) {
    const std::string path = prefix + f.key;
    if (in.contains(f.key)) {
      out[f.key] = validate_value(in.at(f.key), f, path);
    } else if (f.kind == Kind::Object) {
      out[f.key] = validate_object(json::object(), f.children, path + ".");
    } else {
      out[f.key] = f.fallback;  // null marks required or absent-by-design
    }
  }
  return out;
}

void require(const json& params, const std::string& key, const std::string& why) {
  if (params.at(key).is_null()) throw config_error("missing required key '" + key + "' (" + why + ")");
}

int lattice_dimension(const json& root, const char* key) {
  if (!root.contains(key)) throw config_error(std::string("missing required key '") + key + "' (lattice size)");
  const json& v = root.at(key);
  if (!is_integer(v)) throw config_error(std::string("key '") + key + "': expected integer");
  const double x = v.get<double>();
  if (x < 2 || x > 64 || std::fmod(x, 2.0) != 0.0)
    throw config_error(std::string("key '") + key + "': lattice dimensions must be even and in [2, 64], got " + v.dump());
  return static_cast<int>(x);
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name.c_str();
  return "?";
}

json RunConfig::echo() const {
  json j = params;
  j["command"] = command_name(command);
  if (lx > 0) {
    j["Lx"] = lx;
    j["Ly"] = ly;
  }
  j["seed"] = seed;
  j["output"] = {{"dir", out_dir}, {"format", format == OutputFormat::Csv ? "csv" : "json"}};
  return j;
}

RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config must be a JSON object");
  if (!root.contains("command") || !root.at("command").is_string())
    throw config_error("missing required key 'command' (string)");

  RunConfig c;
  const std::string name = root.at("command").get<std::string>();
  const auto it = command_table().find(name);
  if (it == command_table().end()) throw config_error("unknown command '" + name + "'");
  c.command = it->second;

  json rest = root;
  rest.erase("command");
  const bool lattice = has_lattice(c.command);
  const bool lattice_optional = c.command == Command::Wxy;
  if (lattice && (!lattice_optional || rest.contains("Lx") || rest.contains("Ly"))) {
    c.lx = lattice_dimension(rest, "Lx");
    c.ly = lattice_dimension(rest, "Ly");
  }
  rest.erase("Lx");
  rest.erase("Ly");
  if (!lattice && (root.contains("Lx") || root.contains("Ly")))
    throw config_error("unknown key 'Lx' (command '" + name + "' has no lattice)");

  if (rest.contains("seed")) {
    Field f = count("seed", nullptr, 0, 1.8446744073709552e19);
    c.seed = validate_value(rest.at("seed"), f, "seed").get<std::uint64_t>();
    c.seed_given = true;
    rest.erase("seed");
  }
  if (seed_override) {
    c.seed = *seed_override;
    c.seed_given = true;
  }
  if (c.command == Command::Mc && !c.seed_given)
    throw config_error("missing required key 'seed' (mandatory for mc runs)");
  const bool tables = c.command != Command::Symmetry && c.command != Command::Wxy &&
                      c.command != Command::Circuit;
  c.format = tables ? OutputFormat::Csv : OutputFormat::Json;
  if (rest.contains("output")) {
    Field out{"output", Kind::Object, json::object()};
    out.children = {{"dir", Kind::String, json(c.out_dir)},
                    choice("format", tables ? "csv" : "json", {"json", "csv"})};
    const json o = validate_value(rest.at("output"), out, "output");
    c.out_dir = o.at("dir").get<std::string>();
    c.format = o.at("format").get<std::string>() == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    rest.erase("output");
  }

  c.params = validate_object(rest, command_fields(c.command), "");
  switch (c.command) {
    case Command::Ed:
      require(c.params, "lambda_J", "star coupling");
      require(c.params, "lambda_flip", "plaquette flip amplitude");
      break;
    case Command::Wxy:
      if (c.params.at("cluster") == "lattice" && c.lx == 0)
        throw config_error("missing required key 'Lx' (cluster 'lattice')");
      if (c.params.at("cluster") != "lattice" && c.lx != 0)
        throw config_error("key 'Lx': only used with cluster 'lattice'");
      break;
    case Command::Wkb:
      if (!(c.params.at("jc_max").get<double>() > c.params.at("jc_min").get<double>()))
        throw config_error("key 'jc_max': must exceed jc_min");
      break;
    case Command::Classical:
      if (c.params.at("plaquette").size() != 2) throw config_error("key 'plaquette': expected [x, y]");
      break;
    case Command::Loops:
      for (const auto& p : c.params.at("fugacity_p"))
        if (p.get<int>() < 3) throw config_error("key 'fugacity_p': loop lengths must be >= 3");
      for (const auto& k : c.params.at("fugacity_K"))
        if (k.get<double>() < 0) throw config_error("key 'fugacity_K': stiffness must be >= 0");
      break;
    default:
      break;
  }
  if (c.out_dir.empty()) throw config_error("key 'output.dir': must not be empty");
  return c;
}

}  // namespace cgslab
