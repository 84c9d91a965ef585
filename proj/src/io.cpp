#include "entsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <sstream>

#include "entsim/states.hpp"

namespace entsim {

namespace {

constexpr const char* kBasisTag = "HH,HV,VH,VV";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::json density_to_json(const DensityMatrix& rho) {
    nlohmann::json matrix = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            row.push_back({rho(r, c).real(), rho(r, c).imag()});
        }
        matrix.push_back(std::move(row));
    }
    return {{"basis", kBasisTag}, {"matrix", std::move(matrix)}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
    if (j.value("basis", "") != kBasisTag) {
        throw ValidationError("density_from_json: unexpected basis tag");
    }
    const auto& matrix = j.at("matrix");
    if (!matrix.is_array() || matrix.size() != 4) {
        throw ValidationError("density_from_json: matrix must be 4x4");
    }
    Mat4 rho;
    for (int r = 0; r < 4; ++r) {
        const auto& row = matrix.at(r);
        if (!row.is_array() || row.size() != 4) {
            throw ValidationError("density_from_json: matrix must be 4x4");
        }
        for (int c = 0; c < 4; ++c) {
            const auto& entry = row.at(c);
            rho(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return DensityMatrix(rho);
}

nlohmann::json report_to_json(const StateReport& report) {
    return {{"tangle", report.tangle},
            {"concurrence", report.concurrence},
            {"linear_entropy", report.linear_entropy},
            {"purity", report.purity},
            {"ppt_min_eigenvalue", report.ppt_min_eigenvalue},
            {"chsh_max", report.chsh_max},
            {"singlet_fraction_estimate", report.singlet_fraction_estimate}};
}

DensityMatrix state_from_spec(const nlohmann::json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    DensityMatrix rho = maximally_mixed();
    if (family == "bell") {
        rho = from_pure(bell_phi(spec.at("phi").get<double>()));
    } else if (family == "singlet") {
        rho = singlet_density();
    } else if (family == "werner") {
        rho = werner(spec.at("p").get<double>());
    } else if (family == "mems") {
        rho = mems(spec.at("p").get<double>());
    } else if (family == "sectors") {
        rho = sector_mixture({spec.at("wA").get<double>(), spec.at("wB").get<double>(),
                              spec.at("wC").get<double>()});
    } else if (family == "displacement") {
        rho = werner(p_from_displacement(spec.at("dx").get<double>(),
                                         spec.value("x0", 1.0)));
    } else if (family == "mixed") {
        // maximally mixed default
    } else {
        throw ValidationError("state_from_spec: unknown family '" + family + "'");
    }
    if (spec.contains("visibility")) {
        rho = with_visibility(rho, spec.at("visibility").get<double>());
    }
    return rho;
}

std::string count_records_to_csv(const std::vector<CountRecord>& records) {
    std::ostringstream out;
    out << "setting_id,theta_a_deg,theta_b_deg,duration_s,coincidences,"
           "accidental_estimate\n";
    for (const auto& r : records) {
        out << r.setting_id << ',';
        if (std::isfinite(r.theta_a)) out << format_double(r.theta_a * 180.0 / std::numbers::pi);
        out << ',';
        if (std::isfinite(r.theta_b)) out << format_double(r.theta_b * 180.0 / std::numbers::pi);
        out << ',' << format_double(r.duration_s) << ',' << format_double(r.coincidences)
            << ',' << format_double(r.accidental_estimate) << '\n';
    }
    return out.str();
}

std::vector<CountRecord> count_records_from_csv(std::istream& in) {
    std::vector<CountRecord> records;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() < 5 || fields.size() > 6) {
            throw ValidationError("count CSV: malformed row '" + line + "'");
        }
        CountRecord rec;
        rec.setting_id = fields[0];
        if (!fields[1].empty()) rec.theta_a = std::stod(fields[1]) * std::numbers::pi / 180.0;
        if (!fields[2].empty()) rec.theta_b = std::stod(fields[2]) * std::numbers::pi / 180.0;
        rec.duration_s = std::stod(fields[3]);
        rec.coincidences = std::stod(fields[4]);
        rec.accidental_estimate = fields.size() == 6 && !fields[5].empty()
                                      ? std::stod(fields[5])
                                      : 0.0;
        records.push_back(rec);
    }
    return records;
}

nlohmann::json count_records_to_json(const std::vector<CountRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j = {{"setting_id", r.setting_id},
                            {"duration_s", r.duration_s},
                            {"coincidences", r.coincidences},
                            {"accidental_estimate", r.accidental_estimate}};
        if (std::isfinite(r.theta_a)) j["theta_a_deg"] = r.theta_a * 180.0 / std::numbers::pi;
        if (std::isfinite(r.theta_b)) j["theta_b_deg"] = r.theta_b * 180.0 / std::numbers::pi;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace entsim
