#include "xcav/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "xcav/errors.hpp"

namespace xcav {

namespace {

enum class Unit { length, energy_ev, angle, time, energy_joule, bare };

const std::map<std::string, double, std::less<>> length_units = {
    {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
const std::map<std::string, double, std::less<>> energy_ev_units = {
    {"ev", 1.0}, {"kev", 1e3}, {"mev", 1e-3}, {"uev", 1e-6}, {"nev", 1e-9}};
const std::map<std::string, double, std::less<>> angle_units = {
    {"rad", 1.0}, {"mrad", 1e-3}, {"urad", 1e-6}};
const std::map<std::string, double, std::less<>> time_units = {
    {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}};
const std::map<std::string, double, std::less<>> joule_units = {
    {"j", 1.0}, {"mj", 1e-3}, {"uj", 1e-6}, {"nj", 1e-9}, {"pj", 1e-12}, {"fj", 1e-15}};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& tok, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        fail(line, "malformed number '" + tok + "'");
    }
    if (pos != tok.size()) fail(line, "malformed number '" + tok + "'");
    return v;
}

/// Parse "<number>[unit]" or "<number> <unit>" into SI.
double parse_quantity(const std::vector<std::string>& toks, Unit unit, int line) {
    if (toks.empty()) fail(line, "missing value");
    std::string num = toks[0];
    std::string u;
    // split trailing unit glued to the number
    std::size_t pos = 0;
    try {
        (void)std::stod(num, &pos);
    } catch (const std::exception&) {
        fail(line, "malformed number '" + num + "'");
    }
    if (pos < num.size()) {
        u = num.substr(pos);
        num = num.substr(0, pos);
    } else if (toks.size() > 1) {
        u = toks[1];
    }
    double v = parse_number(num, line);
    if (unit == Unit::bare) {
        if (!u.empty()) fail(line, "unexpected unit '" + u + "'");
        return v;
    }
    const std::map<std::string, double, std::less<>>* table = nullptr;
    const char* kind = "";
    switch (unit) {
        case Unit::length: table = &length_units; kind = "length"; break;
        case Unit::energy_ev: table = &energy_ev_units; kind = "energy"; break;
        case Unit::angle: table = &angle_units; kind = "angle"; break;
        case Unit::time: table = &time_units; kind = "time"; break;
        case Unit::energy_joule: table = &joule_units; kind = "pulse energy"; break;
        case Unit::bare: break;
    }
    if (u.empty()) fail(line, std::string("missing ") + kind + " unit");
    auto it = table->find(lower(u));
    if (it == table->end()) fail(line, "unknown " + std::string(kind) + " unit '" + u + "'");
    return v * it->second;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct KeyLine {
    std::string key;
    std::vector<std::string> values;
    int line;
};

struct Section {
    std::vector<KeyLine> entries;
};

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream is(text);
    std::string raw;
    std::string current;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        auto toks_all = split(raw);
        if (toks_all.empty()) continue;
        std::string joined;
        for (const auto& t : toks_all) joined += t;
        if (joined.front() == '[') {
            if (joined.back() != ']') fail(line, "unterminated section header");
            current = lower(joined.substr(1, joined.size() - 2));
            sections[current]; // create
            continue;
        }
        auto eq = raw.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        if (current.empty()) fail(line, "key outside any [section]");
        auto keytoks = split(raw.substr(0, eq));
        if (keytoks.size() != 1) fail(line, "malformed key");
        KeyLine kl;
        kl.key = lower(keytoks[0]);
        kl.values = split(raw.substr(eq + 1));
        kl.line = line;
        if (kl.values.empty()) fail(line, "missing value for '" + kl.key + "'");
        sections[current].entries.push_back(std::move(kl));
    }
    return sections;
}

Layer parse_layer_line(const KeyLine& kl) {
    // name thickness delta beta [resonant]
    const auto& v = kl.values;
    if (v.size() < 4) fail(kl.line, "layer needs: name thickness delta beta [resonant]");
    Layer layer;
    layer.name = v[0];
    if (lower(v[1]) == "inf") {
        layer.thickness.reset();
        layer.material.delta = parse_number(v[2], kl.line);
        layer.material.beta = parse_number(v[3], kl.line);
        if (v.size() > 4 && lower(v[4]) == "resonant") layer.resonant = true;
        else if (v.size() > 4) fail(kl.line, "unexpected token '" + v[4] + "'");
        return layer;
    }
    // thickness may be "2.5nm" or "2.5 nm"
    std::size_t pos = 0;
    bool glued = false;
    try {
        (void)std::stod(v[1], &pos);
        glued = pos < v[1].size();
    } catch (const std::exception&) {
        fail(kl.line, "malformed thickness '" + v[1] + "'");
    }
    std::size_t next = 2;
    if (glued) {
        layer.thickness = parse_quantity({v[1]}, Unit::length, kl.line);
    } else {
        if (v.size() < 5) fail(kl.line, "layer needs: name thickness delta beta [resonant]");
        layer.thickness = parse_quantity({v[1], v[2]}, Unit::length, kl.line);
        next = 3;
    }
    if (v.size() < next + 2) fail(kl.line, "layer missing delta/beta");
    layer.material.delta = parse_number(v[next], kl.line);
    layer.material.beta = parse_number(v[next + 1], kl.line);
    if (v.size() > next + 2) {
        if (lower(v[next + 2]) == "resonant") layer.resonant = true;
        else fail(kl.line, "unexpected token '" + v[next + 2] + "'");
        if (v.size() > next + 3) fail(kl.line, "trailing tokens after 'resonant'");
    }
    return layer;
}

LayerStack assemble_stack(const Section& sec) {
    double energy_ev = 0.0;
    std::vector<Layer> layers;
    for (const auto& kl : sec.entries) {
        if (kl.key == "photon_energy") {
            energy_ev = parse_quantity(kl.values, Unit::energy_ev, kl.line) ;
        } else if (kl.key == "layer") {
            layers.push_back(parse_layer_line(kl));
        } else {
            fail(kl.line, "unknown [stack] key '" + kl.key + "'");
        }
    }
    if (energy_ev <= 0.0)
        throw config_error("[stack] needs a positive photon_energy");
    // energy arrives in eV via the unit table (values were scaled to eV)
    return LayerStack(layers, energy_ev);
}

bool parse_bool(const KeyLine& kl) {
    std::string v = lower(kl.values[0]);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(kl.line, "expected boolean for '" + kl.key + "'");
}

} // namespace

LayerStack parse_stack(const std::string& text) {
    auto sections = tokenize(text);
    auto it = sections.find("stack");
    if (it == sections.end()) throw config_error("missing [stack] section");
    return assemble_stack(it->second);
}

std::string serialize_stack(const LayerStack& stack) {
    std::ostringstream os;
    os.precision(17);
    os << "[stack]\n";
    os << "photon_energy = " << stack.photon_energy_ev() << " eV\n";
    for (const Layer& l : stack.layers()) {
        os << "layer = " << l.name << ' ';
        if (l.thickness) os << (*l.thickness * 1e9) << " nm ";
        else os << "inf ";
        os << l.material.delta << ' ' << l.material.beta;
        if (l.resonant) os << " resonant";
        os << '\n';
    }
    return os.str();
}

ParsedConfig parse_config(const std::string& text) {
    auto sections = tokenize(text);
    ParsedConfig cfg;
    cfg.raw_text = text;

    auto stack_it = sections.find("stack");
    if (stack_it == sections.end()) throw config_error("missing [stack] section");
    cfg.stack = assemble_stack(stack_it->second);

    if (auto it = sections.find("transition"); it != sections.end()) {
        TransitionSpec t;
        for (const auto& kl : it->second.entries) {
            if (kl.key == "energy")
                t.omega_nuc = omega_from_ev(parse_quantity(kl.values, Unit::energy_ev, kl.line));
            else if (kl.key == "linewidth")
                t.gamma_ev = parse_quantity(kl.values, Unit::energy_ev, kl.line);
            else if (kl.key == "alpha_ic")
                t.alpha_ic = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "spin_ground")
                t.spin_ground = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "spin_excited")
                t.spin_excited = parse_quantity(kl.values, Unit::bare, kl.line);
            else
                fail(kl.line, "unknown [transition] key '" + kl.key + "'");
        }
        t.validate();
        cfg.transition = t;
    }

    if (auto it = sections.find("beam"); it != sections.end()) {
        double theta_in = 0.0, theta_div = 0.0, waist = 0.0;
        double n_photons = -1.0, tau = 0.0, energy = -1.0, brel = 0.0;
        std::array<double, 3> focus{0, 0, 0};
        bool auto_angle = false;
        int beamline = it->second.entries.empty() ? 0 : it->second.entries.front().line;
        for (const auto& kl : it->second.entries) {
            if (kl.key == "theta_in") {
                if (lower(kl.values[0]) == "auto") auto_angle = true;
                else theta_in = parse_quantity(kl.values, Unit::angle, kl.line);
            } else if (kl.key == "theta_div")
                theta_div = parse_quantity(kl.values, Unit::angle, kl.line);
            else if (kl.key == "theta_div_list") {
                // list of angles, last token may be a shared unit
                std::vector<std::string> toks = kl.values;
                std::string unit;
                if (!toks.empty() && angle_units.count(lower(toks.back()))) {
                    unit = toks.back();
                    toks.pop_back();
                }
                for (const auto& tok : toks) {
                    if (unit.empty())
                        cfg.theta_div_list.push_back(parse_quantity({tok}, Unit::angle, kl.line));
                    else
                        cfg.theta_div_list.push_back(parse_quantity({tok, unit}, Unit::angle, kl.line));
                }
            } else if (kl.key == "waist")
                waist = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "n_photons")
                n_photons = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "tau")
                tau = parse_quantity(kl.values, Unit::time, kl.line);
            else if (kl.key == "pulse_energy")
                energy = parse_quantity(kl.values, Unit::energy_joule, kl.line);
            else if (kl.key == "bandwidth_rel")
                brel = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "focus") {
                if (kl.values.size() == 3) {
                    for (int i = 0; i < 3; ++i)
                        focus[i] = parse_quantity({kl.values[i]}, Unit::length, kl.line);
                } else if (kl.values.size() == 4) {
                    for (int i = 0; i < 3; ++i)
                        focus[i] = parse_quantity({kl.values[i], kl.values[3]}, Unit::length, kl.line);
                } else {
                    fail(kl.line, "focus needs three lengths");
                }
            } else
                fail(kl.line, "unknown [beam] key '" + kl.key + "'");
            beamline = kl.line;
        }
        const double omega = cfg.transition ? cfg.transition->omega_nuc : cfg.stack.omega();
        if (theta_div > 0.0 && waist > 0.0)
            fail(beamline, "give either theta_div or waist, not both");
        if (waist <= 0.0 && theta_div > 0.0)
            waist = BeamSpec::waist_from_divergence(omega, theta_div);
        if (waist <= 0.0 && cfg.theta_div_list.empty())
            fail(beamline, "[beam] needs theta_div or waist");
        if (waist <= 0.0 && !cfg.theta_div_list.empty())
            waist = BeamSpec::waist_from_divergence(omega, cfg.theta_div_list.front());
        const bool pair_photons = n_photons >= 0.0 || tau > 0.0;
        const bool pair_energy = energy >= 0.0 || brel > 0.0;
        BeamSpec beam;
        if (pair_photons && pair_energy)
            fail(beamline, "give either (n_photons, tau) or (pulse_energy, bandwidth_rel)");
        if (pair_photons) {
            if (n_photons < 0.0 || tau <= 0.0)
                fail(beamline, "(n_photons, tau) must be given together");
            beam = BeamSpec::from_photons(omega, waist, theta_in, n_photons, tau);
        } else if (pair_energy) {
            if (energy < 0.0 || brel <= 0.0)
                fail(beamline, "(pulse_energy, bandwidth_rel) must be given together");
            beam = BeamSpec::from_energy(omega, waist, theta_in, energy, brel);
        } else {
            fail(beamline, "[beam] needs a pulse pair: (n_photons, tau) or "
                          "(pulse_energy, bandwidth_rel)");
        }
        beam.focus_offset = focus;
        beam.theta_in = theta_in;
        cfg.beam_theta_auto = auto_angle;
        cfg.beam = beam;
    }

    if (auto it = sections.find("grid"); it != sections.end()) {
        for (const auto& kl : it->second.entries) {
            if (kl.key == "n")
                cfg.grid.n = static_cast<std::size_t>(parse_quantity(kl.values, Unit::bare, kl.line));
            else if (kl.key == "x_span")
                cfg.grid.x_span = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "y_span")
                cfg.grid.y_span = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "z_min")
                cfg.grid.z_min = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "z_max")
                cfg.grid.z_max = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "nz")
                cfg.grid.nz = static_cast<std::size_t>(parse_quantity(kl.values, Unit::bare, kl.line));
            else if (kl.key == "sigma_cover")
                cfg.grid.sigma_cover = parse_quantity(kl.values, Unit::bare, kl.line);
            else
                fail(kl.line, "unknown [grid] key '" + kl.key + "'");
        }
        if (cfg.grid.n < 2 || (cfg.grid.n & 1))
            throw config_error("[grid] n must be an even number >= 2");
        if (cfg.grid.nz < 1) throw config_error("[grid] nz must be >= 1");
        if (cfg.grid.z_max < cfg.grid.z_min)
            throw config_error("[grid] z_max must be >= z_min");
    }

    if (auto it = sections.find("output"); it != sections.end()) {
        for (const auto& kl : it->second.entries) {
            if (kl.key == "dir") cfg.output.dir = kl.values[0];
            else if (kl.key == "csv") cfg.output.csv = parse_bool(kl);
            else if (kl.key == "precision") {
                std::string v = lower(kl.values[0]);
                if (v == "single") cfg.output.single_precision = true;
                else if (v == "double") cfg.output.single_precision = false;
                else fail(kl.line, "precision must be single or double");
            } else
                fail(kl.line, "unknown [output] key '" + kl.key + "'");
        }
    }

    if (auto it = sections.find("source"); it != sections.end()) {
        for (const auto& kl : it->second.entries) {
            if (kl.key == "flux")
                cfg.source.flux = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "bandwidth")
                cfg.source.bandwidth_ev = parse_quantity(kl.values, Unit::energy_ev, kl.line);
            else if (kl.key == "pulse_spacing")
                cfg.source.pulse_spacing = parse_quantity(kl.values, Unit::time, kl.line);
            else if (kl.key == "target_thickness")
                cfg.source.target_thickness = parse_quantity(kl.values, Unit::length, kl.line);
            else if (kl.key == "number_density")
                cfg.source.number_density = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "detection_efficiency")
                cfg.source.detection_efficiency = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "b_eff")
                cfg.source.b_eff = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "sigma_pulse")
                cfg.source.sigma_pulse = parse_quantity(kl.values, Unit::time, kl.line);
            else
                fail(kl.line, "unknown [source] key '" + kl.key + "'");
        }
    }

    if (auto it = sections.find("validate"); it != sections.end()) {
        for (const auto& kl : it->second.entries) {
            if (kl.key == "depletion_max")
                cfg.thresholds.depletion_max = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "budget_min")
                cfg.thresholds.budget_min = parse_quantity(kl.values, Unit::bare, kl.line);
            else if (kl.key == "phi_max")
                cfg.thresholds.phi_max = parse_quantity(kl.values, Unit::bare, kl.line);
            else
                fail(kl.line, "unknown [validate] key '" + kl.key + "'");
        }
    }

    return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

} // namespace xcav
