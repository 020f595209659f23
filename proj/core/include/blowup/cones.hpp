#pragma once

#include "blowup/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blowup {

enum class ConfigKind {
    collinear,         // r points on a line
    conic,             // r >= 3 points on a smooth conic
    cubic_chain,       // r >= 3 infinitely near points along an irreducible cubic, starting at a flex
    generic,           // r <= 8 general points
    collinear_triple,  // 4 points, exactly 3 of them collinear (E_1, E_2, E_3 on the line)
};

struct ConfigurationTag {
    ConfigKind kind = ConfigKind::generic;
    int r = 0;

    static ConfigurationTag parse(const std::string& name, int r);
    std::string name() const;
    void validate() const;  // throws InputError for unsupported tags
};

struct ConeDescription {
    ConfigurationTag tag;
    std::vector<DivisorClass> eff_generators;  // prime classes
    std::vector<DivisorClass> nef_generators;  // extreme rays of the dual cone
    std::vector<DivisorClass> nef_ladder;      // cubic chain only: L, L-E1, 2L-E1-E2, 3L-E1-E2-E3, ...
    bool finitely_generated = true;
};

using Decomposition = std::vector<std::pair<DivisorClass, long>>;

std::vector<DivisorClass> enumerate_neg_one_classes(int r);
ConeDescription cone_generators(const ConfigurationTag& tag);
std::vector<DivisorClass> eff_generators(const ConfigurationTag& tag);  // skips the nef double description
bool is_nef(const DivisorClass& F, const ConfigurationTag& tag);
std::optional<Decomposition> decompose_effective(const DivisorClass& C, const ConfigurationTag& tag);

// Recombines a certificate.
DivisorClass recombine(const Decomposition& dec, int r);

// Coefficients of F on the cubic-chain ladder; empty if some coefficient is negative.
std::optional<std::vector<long>> ladder_coefficients(const DivisorClass& F);

}  // namespace blowup
