#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cqmod/geometry.hpp"
#include "cqmod/solver.hpp"

namespace cqmod {

// One validation target: either a quadrilateral spec for the ODE solver or
// an ordered half-plane vertex quadruple for the exact elliptic pipeline,
// together with the expected values and a provenance label. Closed-form
// expectations are recomputed at construction time and must agree with
// their stored decimals; reference-table values are stored verbatim and
// never recomputed.
struct BenchmarkCase {
    std::string name;
    std::variant<QuadrilateralSpec, std::vector<ExtendedComplex>> input;
    double expected_modulus = 0.0;
    std::optional<double> expected_beta;
    std::optional<double> expected_gamma;
    std::string provenance;
};

// The analytically solvable quadrilateral: spec (sqrt(3/2), sqrt(3),
// sqrt(1/2), sqrt(2)) with beta = arcsin(1/3), gamma = 2/3 and modulus
// K(3/4) / (2 K(1/4)) = 0.6396307855855.
BenchmarkCase exact_case_q4();

// The symmetric hexagon whose vertices A..F map to the real points
// -(3+2 sqrt 2), -1, -(3-2 sqrt 2), 0, 1, infinity. Any four vertices in
// cyclic order select an exactly solvable quadrilateral; (A,B,D,E) has
// modulus 0.92401502327430725964.
BenchmarkCase hexagon_case(const std::array<char, 4>& vertices);

// The circular polygon family P_n whose vertices map to
// -cos(pi k/(n-2)), k = 0..n-2, and infinity; any cyclically ordered four
// of them give an exact modulus.
BenchmarkCase pn_case(int n, const std::array<int, 4>& vertex_indices);

// All 25 members of the (alpha, j) test family paired with the
// higher-accuracy reference moduli.
const std::vector<BenchmarkCase>& table1_fixture();

// Half-plane vertices of the hexagon (order A..F) and the Mobius map
// carrying them onto the unit circle, with the expected disk positions.
std::vector<ExtendedComplex> hexagon_half_plane_vertices();
MobiusMap hexagon_disk_map();
std::vector<complex> hexagon_disk_vertices();

// Decimal and elliptic-ratio forms of the hexagon modulus; their agreement
// is asserted when the fixtures are built.
double hexagon_modulus_decimal();
double hexagon_modulus_closed_form();

// Serializes a set of cases (schema: name, inputs, expected, provenance).
nlohmann::json fixtures_to_json(const std::vector<BenchmarkCase>& cases);

} // namespace cqmod
