#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rxnet/model.hpp"

namespace rxnet {

struct MonomialFactor {
    std::uint32_t species;  // dense species index
    std::uint32_t exponent; // >= 1
};

/// One signed monomial contribution to a species' time derivative:
///   signed_coefficient * rate * prod(conc[f.species]^f.exponent).
struct RateTerm {
    double signed_coefficient;  // +-stoichiometry of the species in the source reaction
    double rate;                // kf or kb of the source reaction
    double folded;              // signed_coefficient * rate, precomputed
    std::uint32_t factors_begin;
    std::uint32_t factors_end;
    std::uint32_t reaction;  // index into reactions()
    bool forward;            // true: forward-direction term, false: backward
};

/// Index-resolved participant of a compiled reaction.
struct IndexedParticipant {
    std::uint32_t species;
    int stoichiometry;
};

/// Compact per-reaction record kept alongside the compiled terms; used for
/// topology export, validation reports and the stoichiometric inverse.
struct CompiledReaction {
    std::string id;
    std::vector<IndexedParticipant> reactants;
    std::vector<IndexedParticipant> products;
    double kf;
    double kb;
    bool paper_compat;
};

/// The superposed ODE system: for every species, the ordered list of signed
/// monomial terms collected from all reactions that touch it. Term order is
/// deterministic: reaction declaration order, forward before backward.
class CompiledNetwork {
public:
    std::size_t species_count() const { return species_.size(); }
    const std::vector<Species>& species() const { return species_; }
    const Species& species_at(std::size_t i) const { return species_[i]; }
    const std::string& species_name(std::size_t i) const { return species_[i].name; }

    /// Dense index of a species name; throws ValidationError if unknown.
    std::uint32_t index_of(const std::string& name) const;
    bool has_species(const std::string& name) const { return index_.count(name) != 0; }

    const std::vector<CompiledReaction>& reactions() const { return reactions_; }

    /// Terms of the superposed equation for species i.
    std::span<const RateTerm> terms(std::size_t i) const;
    std::span<const MonomialFactor> factors(const RateTerm& term) const;

    /// Writes d[conc]/dt into grad (same length as conc). Terms are
    /// accumulated in their stored order with no re-association, so results
    /// are bitwise reproducible.
    void eval_into(std::span<const double> conc, std::span<double> grad) const;

private:
    friend CompiledNetwork compile_network(const ModelDefinition& model);

    std::vector<Species> species_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<CompiledReaction> reactions_;
    std::vector<RateTerm> terms_;
    std::vector<MonomialFactor> factors_;
    std::vector<std::uint32_t> term_offsets_;  // species_count()+1 entries
};

/// Superposes the per-reaction mass-action contributions into one equation
/// per species. The stoichiometric multiplier is applied to both directions
/// unless the reaction carries paper_compat, which drops it on the backward
/// term.
CompiledNetwork compile_network(const ModelDefinition& model);

/// One (reaction, species) participation. Reactant edges point species ->
/// reaction, product edges reaction -> species.
struct TopologyEdge {
    std::string reaction;
    std::string species;
    enum class Role { Reactant, Product } role;
    int stoichiometry;
    bool reversible;
};

/// Deterministic edge list (reaction declaration order, reactants before
/// products) for graph tooling.
std::vector<TopologyEdge> export_topology(const CompiledNetwork& network);

}  // namespace rxnet
