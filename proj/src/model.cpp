#include "rescuefx/model.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "rescuefx/errors.hpp"
#include "rescuefx/normal_math.hpp"

namespace rescuefx {

void ScenarioParams::validate() const {
    for (double v : {alpha1, beta1, alpha2, beta2, gamma, delta})
        if (!std::isfinite(v))
            throw domain_error("scenario: regression coefficients must be finite");
    if (!std::isfinite(c)) throw domain_error("scenario: c must be finite");
    if (n0 < 2 || n1 < 2)
        throw domain_error("scenario: both arms need at least 2 subjects");
    for (int z = 0; z < 2; ++z) {
        if (!(sigma11_by_arm[z] > 0.0) || !std::isfinite(sigma11_by_arm[z]))
            throw domain_error("scenario: sigma11 must be > 0 in both arms");
        for (int r = 0; r < 2; ++r) {
            const double s22 = sigma22_by_cell[z][r];
            const double s12 = sigma12_by_cell[z][r];
            if (!(s22 > 0.0) || !std::isfinite(s22))
                throw domain_error("scenario: sigma22 must be > 0 in every cell");
            if (!std::isfinite(s12) ||
                !(std::fabs(s12) < sigma11_by_arm[z] * s22))
                throw domain_error(
                    "scenario: need |sigma12| < sigma11 * sigma22 in every cell");
        }
    }
}

double mu1(const ScenarioParams& p, int z) {
    return p.alpha1 + p.beta1 * z;
}

double mu2(const ScenarioParams& p, int z, int r) {
    return p.alpha2 + p.beta2 * z + p.gamma * r + p.delta * z * r;
}

double true_biological_effect(const ScenarioParams& p) {
    return p.beta2;
}

namespace {

// E[Y2 | Z=z]: rescue-cell mixture plus the conditional-slope contribution
// of E[Y1 - mu1 | R] inside each cell (the two cell terms cancel exactly
// when the slope is shared across r).
double itt_arm_mean(const ScenarioParams& p, int z) {
    const double s11 = p.sigma11_by_arm[z];
    const double eta = (p.c - mu1(p, z)) / s11;
    const double prob_rescue = std_cdf(eta);
    const double slope0 = p.sigma12_by_cell[z][0] / (s11 * s11);
    const double slope1 = p.sigma12_by_cell[z][1] / (s11 * s11);
    return prob_rescue * mu2(p, z, 1) + (1.0 - prob_rescue) * mu2(p, z, 0) +
           s11 * std_pdf(eta) * (slope0 - slope1);
}

} // namespace

double true_itt_effect(const ScenarioParams& p) {
    p.validate();
    return itt_arm_mean(p, 1) - itt_arm_mean(p, 0);
}

namespace {

const std::map<std::string, double ScenarioParams::*> kScalarKeys = {
    {"alpha1", &ScenarioParams::alpha1}, {"beta1", &ScenarioParams::beta1},
    {"alpha2", &ScenarioParams::alpha2}, {"beta2", &ScenarioParams::beta2},
    {"gamma", &ScenarioParams::gamma},   {"delta", &ScenarioParams::delta},
    {"c", &ScenarioParams::c},
};

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw validation_error("scenario: bad numeric value for '" + key +
                               "': '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw validation_error("scenario: bad integer value for '" + key +
                               "': '" + text + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ScenarioParams params_from_kv(std::istream& in) {
    ScenarioParams p;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error("scenario line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw validation_error("scenario: duplicate key '" + key + "'");

        if (auto it = kScalarKeys.find(key); it != kScalarKeys.end()) {
            p.*(it->second) = parse_double(key, value);
        } else if (key == "n0") {
            p.n0 = parse_int(key, value);
        } else if (key == "n1") {
            p.n1 = parse_int(key, value);
        } else if (key == "sigma11_z0") {
            p.sigma11_by_arm[0] = parse_double(key, value);
        } else if (key == "sigma11_z1") {
            p.sigma11_by_arm[1] = parse_double(key, value);
        } else if (key.size() == 12 && key.compare(0, 8, "sigma22_") == 0) {
            const int z = key[9] - '0', r = key[11] - '0';
            if (key[8] != 'z' || key[10] != 'r' || z < 0 || z > 1 || r < 0 || r > 1)
                throw validation_error("scenario: unknown key '" + key + "'");
            p.sigma22_by_cell[z][r] = parse_double(key, value);
        } else if (key.size() == 12 && key.compare(0, 8, "sigma12_") == 0) {
            const int z = key[9] - '0', r = key[11] - '0';
            if (key[8] != 'z' || key[10] != 'r' || z < 0 || z > 1 || r < 0 || r > 1)
                throw validation_error("scenario: unknown key '" + key + "'");
            p.sigma12_by_cell[z][r] = parse_double(key, value);
        } else {
            throw validation_error("scenario: unknown key '" + key + "'");
        }
    }
    try {
        p.validate();
    } catch (const domain_error& e) {
        throw validation_error(e.what());
    }
    return p;
}

void params_to_kv(const ScenarioParams& p, std::ostream& out) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha1 = " << p.alpha1 << "\nbeta1 = " << p.beta1
       << "\nalpha2 = " << p.alpha2 << "\nbeta2 = " << p.beta2
       << "\ngamma = " << p.gamma << "\ndelta = " << p.delta << "\n";
    for (int z = 0; z < 2; ++z)
        os << "sigma11_z" << z << " = " << p.sigma11_by_arm[z] << "\n";
    for (int z = 0; z < 2; ++z)
        for (int r = 0; r < 2; ++r)
            os << "sigma22_z" << z << "r" << r << " = "
               << p.sigma22_by_cell[z][r] << "\n";
    for (int z = 0; z < 2; ++z)
        for (int r = 0; r < 2; ++r)
            os << "sigma12_z" << z << "r" << r << " = "
               << p.sigma12_by_cell[z][r] << "\n";
    os << "c = " << p.c << "\nn0 = " << p.n0 << "\nn1 = " << p.n1 << "\n";
    out << os.str();
}

void StrataTable::validate() const {
    static const std::set<std::string> known = {"00", "01", "10", "11"};
    std::set<std::string> seen;
    double total = 0.0;
    for (const auto& row : rows) {
        if (known.count(row.stratum) == 0)
            throw domain_error("strata: unknown stratum label '" + row.stratum + "'");
        if (!seen.insert(row.stratum).second)
            throw domain_error("strata: duplicate stratum '" + row.stratum + "'");
        if (!std::isfinite(row.proportion) || row.proportion < 0.0 ||
            row.proportion > 1.0)
            throw domain_error("strata: proportions must lie in [0,1]");
        if (!std::isfinite(row.mean_control) || !std::isfinite(row.mean_treatment))
            throw domain_error("strata: means must be finite");
        total += row.proportion;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw domain_error("strata: proportions must sum to 1");
}

StrataEffects strata_effects(const StrataTable& table) {
    table.validate();
    StrataEffects out;
    out.itt_effect = 0.0;
    for (const auto& row : table.rows) {
        const double effect = row.mean_treatment - row.mean_control;
        out.per_stratum.push_back(effect);
        out.itt_effect += row.proportion * effect;
        if (row.stratum == "00") out.stratum00_effect = effect;
    }
    return out;
}

} // namespace rescuefx
