#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellconn/connection.hpp"
#include "ellconn/family_catalog.hpp"
#include "ellconn/surface_atlas.hpp"

namespace ellconn {

struct VerifyConfig {
    int samples = 100;
    double tol = 1e-8;
    std::uint64_t seed = 0;
};

struct GeneratorResidual {
    std::string name;
    double residual = 0.0;
    int samples = 0;
    int rejected = 0;
};

struct MembershipVerdict {
    std::string name;
    bool member = false;
    double residual = 0.0;
};

struct VerificationReport {
    bool pass = false;
    std::vector<GeneratorResidual> generators;
    std::optional<double> curvature_max;
    std::optional<double> torsion_max;
    std::vector<MembershipVerdict> membership;
    std::vector<Discrepancy> discrepancies;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int samples = 0;

    double max_residual() const;
};

struct FlatnessResult {
    double max_abs = 0.0;
    bool flat = false;
    int samples = 0;
};

FlatnessResult flatness_check(const ConnectionMatrix& c, const SampleDomain& domain, const VerifyConfig& cfg);

VerificationReport verify(const ConnectionMatrix& c, const SurfaceModel& model, const VerifyConfig& cfg,
                          const std::vector<Discrepancy>& discrepancies = {});

// Also compares the printed matrix when the member carries one.
VerificationReport verify_family(const FamilyMember& member, const SurfaceModel& model, const VerifyConfig& cfg);

// Largest residual over the deck generators of the model.
double max_generator_residual(const ConnectionMatrix& c, const SurfaceModel& model, const VerifyConfig& cfg);

nlohmann::json to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);

// Rounds every floating value to 15 significant digits.
nlohmann::json round_numbers(const nlohmann::json& j);

}  // namespace ellconn
