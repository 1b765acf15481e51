#include "pefill/config.hpp"

#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

namespace pefill {

CurvatureOptions Config::curvature_options() const {
    CurvatureOptions o;
    o.cap_window = cap_window;
    o.cap_fit_window = cap_fit_window;
    o.einstein_tol = einstein_tol;
    o.weyl_norm = weyl_norm;
    return o;
}

namespace {

struct Field {
    std::function<void(Config&, const std::string&)> set;
    std::function<std::string(const Config&)> get;
};

double parse_number(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw Error("config: bad numeric value '" + v + "' for key '" + key + "'");
    }
}

template <class T>
Field numeric_field(T Config::* member) {
    return {[member](Config& c, const std::string& v) {
                c.*member = static_cast<T>(parse_number("", v));
            },
            [member](const Config& c) {
                if constexpr (std::is_floating_point_v<T>)
                    return num::format_double(c.*member);
                else
                    return std::to_string(c.*member);
            }};
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> f = {
        {"n", numeric_field(&Config::n)},
        {"omega_n", numeric_field(&Config::omega_n)},
        {"weyl_norm",
         {[](Config& c, const std::string& v) {
              if (v == "pair")
                  c.weyl_norm = WeylNorm::PairSum;
              else if (v == "all-indices")
                  c.weyl_norm = WeylNorm::AllIndices;
              else
                  throw Error("config: weyl_norm must be 'pair' or 'all-indices'");
          },
          [](const Config& c) {
              return std::string(c.weyl_norm == WeylNorm::PairSum ? "pair"
                                                                  : "all-indices");
          }}},
        {"cap_window", numeric_field(&Config::cap_window)},
        {"cap_fit_window", numeric_field(&Config::cap_fit_window)},
        {"einstein_tol", numeric_field(&Config::einstein_tol)},
        {"series_order", numeric_field(&Config::series_order)},
        {"ode_tol", numeric_field(&Config::ode_tol)},
        {"series_handoff", numeric_field(&Config::series_handoff)},
        {"ode_r_max", numeric_field(&Config::ode_r_max)},
        {"profile_points", numeric_field(&Config::profile_points)},
        {"profile_r_max", numeric_field(&Config::profile_r_max)},
        {"quad_rel_tol", numeric_field(&Config::quad_rel_tol)},
        {"eps_min", numeric_field(&Config::eps_min)},
        {"eps_max", numeric_field(&Config::eps_max)},
        {"eps_points", numeric_field(&Config::eps_points)},
        {"fit_max_condition", numeric_field(&Config::fit_max_condition)},
        {"fit_stability_tol", numeric_field(&Config::fit_stability_tol)},
        {"gb_quad_rel_tol", numeric_field(&Config::gb_quad_rel_tol)},
        {"gb_s_cut_factor", numeric_field(&Config::gb_s_cut_factor)},
        {"yamabe_grid", numeric_field(&Config::yamabe_grid)},
        {"mc_samples", numeric_field(&Config::mc_samples)},
        {"mc_seed", numeric_field(&Config::mc_seed)},
        {"mc_threads", numeric_field(&Config::mc_threads)},
        {"gate_sec_tol", numeric_field(&Config::gate_sec_tol)},
        {"gate_delta", numeric_field(&Config::gate_delta)},
        {"gate_eta", numeric_field(&Config::gate_eta)},
    };
    return f;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

} // namespace

std::string Config::dump() const {
    std::ostringstream os;
    for (const auto& [key, field] : fields()) os << key << " = " << field.get(*this) << "\n";
    return os.str();
}

void apply_override(Config& cfg, const std::string& key, const std::string& value) {
    auto it = fields().find(key);
    if (it == fields().end()) throw Error("config: unknown key '" + key + "'");
    it->second.set(cfg, value);
}

Config parse_config(const std::string& text, Config base) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config: line " + std::to_string(lineno) +
                        " is not of the form 'key = value'");
        apply_override(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

Config load_config(const std::string& path, Config base) {
    std::ifstream f(path);
    if (!f) throw Error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

} // namespace pefill
