#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "entsim/counting.hpp"
#include "entsim/measures.hpp"

namespace entsim {

/// rho as {"basis": "HH,HV,VH,VV", "matrix": 4x4 array of [re, im]}.
/// Round-trips bit-faithfully for finite doubles.
nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const StateReport& report);

/// A state recipe: {"family": "werner", "p": 0.42} and friends.
/// Families: bell (phi, radians), singlet, werner (p), mems (p),
/// sectors (wA, wB, wC), displacement (dx, x0), mixed.
/// An optional "visibility" key mixes in the flat background.
DensityMatrix state_from_spec(const nlohmann::json& spec);

/// CSV with header setting_id,theta_a_deg,theta_b_deg,duration_s,
/// coincidences,accidental_estimate; theta fields are empty for labeled
/// projector settings.
std::string count_records_to_csv(const std::vector<CountRecord>& records);
std::vector<CountRecord> count_records_from_csv(std::istream& in);

nlohmann::json count_records_to_json(const std::vector<CountRecord>& records);

}  // namespace entsim
