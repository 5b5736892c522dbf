#include "cqmod/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cqmod {

namespace {

constexpr double kQ4Modulus = 0.6396307855855;
constexpr double kHexagonModulus = 0.92401502327430725964;

void check_close(double computed, double stored, double tol, const char* what) {
    if (std::abs(computed - stored) > tol) {
        std::ostringstream msg;
        msg << what << ": recomputed value " << computed << " disagrees with stored constant "
            << stored;
        throw error(errc::inconsistency, msg.str());
    }
}

// Validates that the index sequence is a rotation of a strictly increasing
// subsequence, i.e. the four vertices appear in cyclic boundary order.
bool is_cyclic(const std::array<int, 4>& idx) {
    int descents = 0;
    for (int i = 0; i < 4; ++i) {
        if (idx[i] == idx[(i + 1) % 4]) return false;
        if (idx[i] > idx[(i + 1) % 4]) ++descents;
    }
    return descents == 1;
}

std::string provenance_exact() { return "analytic closed form (elliptic integrals)"; }

} // namespace

double hexagon_modulus_decimal() { return kHexagonModulus; }

double hexagon_modulus_closed_form() {
    // K(k)/K(k') with modulus k = 1/sqrt(1+sqrt 2): in parameter form
    // m = 1/(1+sqrt 2) and 1-m = sqrt(2)/(1+sqrt 2).
    const double m = 1.0 / (1.0 + std::sqrt(2.0));
    return elliptic_k(m) / elliptic_k(1.0 - m);
}

std::vector<ExtendedComplex> hexagon_half_plane_vertices() {
    const double s = 3.0 + 2.0 * std::sqrt(2.0);
    return {ExtendedComplex(-s),
            ExtendedComplex(-1.0),
            ExtendedComplex(-(3.0 - 2.0 * std::sqrt(2.0))),
            ExtendedComplex(0.0),
            ExtendedComplex(1.0),
            ExtendedComplex::infinity()};
}

MobiusMap hexagon_disk_map() {
    // w = (4 - (1-3i) z) / (4 - (1+3i) z)
    return MobiusMap(complex(-1.0, 3.0), complex(4.0, 0.0), complex(-1.0, -3.0),
                     complex(4.0, 0.0));
}

std::vector<complex> hexagon_disk_vertices() {
    return {complex(0.0, -1.0),         complex(1.0, 0.0), complex(8.0 / 17.0, 15.0 / 17.0),
            complex(0.0, 1.0),          complex(-0.8, 0.6), complex(-0.8, -0.6)};
}

BenchmarkCase exact_case_q4() {
    BenchmarkCase c;
    c.name = "exact quadrilateral (k = sqrt 2, K = 2)";
    c.input = QuadrilateralSpec::validated(std::sqrt(1.5), std::sqrt(3.0), std::sqrt(0.5),
                                           std::sqrt(2.0));
    c.expected_modulus = kQ4Modulus;
    c.expected_beta = std::asin(1.0 / 3.0);
    c.expected_gamma = 2.0 / 3.0;
    c.provenance = provenance_exact();
    check_close(elliptic_k(0.75) / (2.0 * elliptic_k(0.25)), c.expected_modulus, 1e-13,
                "exact_case_q4 modulus");
    return c;
}

BenchmarkCase hexagon_case(const std::array<char, 4>& vertices) {
    std::array<int, 4> idx{};
    for (int i = 0; i < 4; ++i) {
        const char v = vertices[i];
        if (v < 'A' || v > 'F')
            throw domain_error("hexagon_case: vertices must be letters A..F");
        idx[i] = v - 'A';
    }
    if (!is_cyclic(idx))
        throw domain_error("hexagon_case: vertices must be distinct and in cyclic order");

    const std::vector<ExtendedComplex> hp = hexagon_half_plane_vertices();
    std::vector<ExtendedComplex> quad;
    for (int i : idx) quad.push_back(hp[static_cast<std::size_t>(i)]);

    BenchmarkCase c;
    std::ostringstream name;
    name << "hexagon (" << vertices[0] << vertices[1] << vertices[2] << vertices[3] << ")";
    c.name = name.str();
    c.input = quad;
    c.expected_modulus = half_plane_modulus(quad[0], quad[1], quad[2], quad[3]);
    c.provenance = provenance_exact();

    check_close(hexagon_modulus_closed_form(), kHexagonModulus, 1e-12,
                "hexagon modulus closed form");
    if (idx == std::array<int, 4>{0, 1, 3, 4})
        check_close(c.expected_modulus, kHexagonModulus, 1e-12, "hexagon (ABDE) modulus");
    return c;
}

BenchmarkCase pn_case(int n, const std::array<int, 4>& vertex_indices) {
    const std::vector<ExtendedComplex> images = pn_vertex_images(n);
    for (int i : vertex_indices)
        if (i < 0 || i >= n)
            throw domain_error("pn_case: vertex indices must lie in 0..n-1");
    if (!is_cyclic(vertex_indices))
        throw domain_error("pn_case: vertices must be distinct and in cyclic order");

    std::vector<ExtendedComplex> quad;
    for (int i : vertex_indices) quad.push_back(images[static_cast<std::size_t>(i)]);

    BenchmarkCase c;
    std::ostringstream name;
    name << "P_n (n = " << n << ", vertices " << vertex_indices[0] << "," << vertex_indices[1]
         << "," << vertex_indices[2] << "," << vertex_indices[3] << ")";
    c.name = name.str();
    c.input = quad;
    c.expected_modulus = half_plane_modulus(quad[0], quad[1], quad[2], quad[3]);
    c.provenance = provenance_exact();
    return c;
}

const std::vector<BenchmarkCase>& table1_fixture() {
    // Higher-accuracy reference moduli for alpha = pi/4..pi/8, j = 1..5,
    // stored verbatim.
    static const double kMod[5][5] = {
        {1.65195641811156, 1.41312882432748, 1.23851628549016, 1.10517573064876, 1.0},
        {0.98160730939538, 0.88131392866493, 0.79679236427334, 0.72458889240001,
         0.66218813398119},
        {0.69813355689778, 0.63911229266297, 0.58614411420414, 0.53833144748697,
         0.49493951440663},
        {0.54204377899126, 0.50133063755764, 0.46350872114770, 0.42826373909062,
         0.39531863465020},
        {0.44327582367411, 0.41254658974644, 0.38338339855016, 0.35565066792949,
         0.32922144646084}};

    static const std::vector<BenchmarkCase> cases = [] {
        std::vector<BenchmarkCase> v;
        for (int d = 4; d <= 8; ++d) {
            for (int j = 1; j <= 5; ++j) {
                BenchmarkCase c;
                std::ostringstream name;
                name << "alpha = pi/" << d << ", j = " << j;
                c.name = name.str();
                c.input = quad_from_alpha_j(M_PI / d, j);
                c.expected_modulus = kMod[d - 4][j - 1];
                c.provenance = "reference table, higher-accuracy column";
                v.push_back(std::move(c));
            }
        }
        return v;
    }();
    return cases;
}

namespace {

nlohmann::json vertex_to_json(const ExtendedComplex& z) {
    if (z.is_infinity()) return "inf";
    if (z.value().imag() == 0.0) return z.value().real();
    return nlohmann::json{{"re", z.value().real()}, {"im", z.value().imag()}};
}

} // namespace

nlohmann::json fixtures_to_json(const std::vector<BenchmarkCase>& cases) {
    nlohmann::json out = nlohmann::json::array();
    for (const BenchmarkCase& c : cases) {
        nlohmann::json item;
        item["name"] = c.name;
        if (std::holds_alternative<QuadrilateralSpec>(c.input)) {
            const QuadrilateralSpec& q = std::get<QuadrilateralSpec>(c.input);
            item["inputs"] = {{"t", q.t}, {"s", q.s}, {"r1", q.r1}, {"r2", q.r2}};
        } else {
            nlohmann::json verts = nlohmann::json::array();
            for (const ExtendedComplex& z : std::get<std::vector<ExtendedComplex>>(c.input))
                verts.push_back(vertex_to_json(z));
            item["inputs"] = {{"vertices", verts}};
        }
        nlohmann::json expected;
        expected["modulus"] = c.expected_modulus;
        if (c.expected_beta) expected["beta"] = *c.expected_beta;
        if (c.expected_gamma) expected["gamma"] = *c.expected_gamma;
        item["expected"] = expected;
        item["provenance"] = c.provenance;
        out.push_back(std::move(item));
    }
    return out;
}

} // namespace cqmod
