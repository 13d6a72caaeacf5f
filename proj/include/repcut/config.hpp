#pragma once

#include "repcut/committee.hpp"
#include "repcut/equilibrium.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace repcut {

struct ModelConfig {
    Model model;
    std::optional<CommitteeSpec> committee;
    std::size_t committee_member = 0;

    void validate() const;
    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// JSON with sections signal, beliefs, payoff, transfers, frictions and an
// optional committee. Missing keys keep their defaults; unknown keys are
// rejected with InvalidArgument naming the dotted path.
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::filesystem::path& path);

// Every field, in a form parse_config reads back to an equal config.
std::string dump_config(const ModelConfig& config);

}  // namespace repcut
