#include "rxnet/network.hpp"

#include "rxnet/errors.hpp"

namespace rxnet {

std::uint32_t CompiledNetwork::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("unknown species " + name);
    return it->second;
}

std::span<const RateTerm> CompiledNetwork::terms(std::size_t i) const {
    return {terms_.data() + term_offsets_[i], terms_.data() + term_offsets_[i + 1]};
}

std::span<const MonomialFactor> CompiledNetwork::factors(const RateTerm& term) const {
    return {factors_.data() + term.factors_begin, factors_.data() + term.factors_end};
}

void CompiledNetwork::eval_into(std::span<const double> conc, std::span<double> grad) const {
    if (conc.size() != species_.size() || grad.size() != species_.size())
        throw ValidationError("state dimension does not match network");
    const RateTerm* terms = terms_.data();
    const MonomialFactor* factors = factors_.data();
    for (std::size_t s = 0, ns = species_.size(); s < ns; ++s) {
        double g = 0.0;
        for (std::uint32_t t = term_offsets_[s]; t < term_offsets_[s + 1]; ++t) {
            const RateTerm& term = terms[t];
            double p = term.folded;
            for (std::uint32_t f = term.factors_begin; f < term.factors_end; ++f) {
                const double x = conc[factors[f].species];
                for (std::uint32_t e = factors[f].exponent; e != 0; --e) p *= x;
            }
            g += p;
        }
        grad[s] = g;
    }
}

CompiledNetwork compile_network(const ModelDefinition& model) {
    validate_model(model);

    CompiledNetwork net;
    net.species_ = model.species;
    for (std::uint32_t i = 0; i < net.species_.size(); ++i)
        net.index_.emplace(net.species_[i].name, i);

    net.reactions_.reserve(model.reactions.size());
    for (const auto& r : model.reactions) {
        CompiledReaction cr;
        cr.id = r.id;
        cr.kf = r.rate.kf;
        cr.kb = r.rate.kb;
        cr.paper_compat = r.paper_compat;
        for (const auto& p : r.reactants)
            cr.reactants.push_back({net.index_.at(p.species), p.stoichiometry});
        for (const auto& p : r.products)
            cr.products.push_back({net.index_.at(p.species), p.stoichiometry});
        net.reactions_.push_back(std::move(cr));
    }

    // Per species, in reaction declaration order, forward before backward.
    net.term_offsets_.assign(net.species_.size() + 1, 0);
    for (std::uint32_t s = 0; s < net.species_.size(); ++s) {
        net.term_offsets_[s] = static_cast<std::uint32_t>(net.terms_.size());
        for (std::uint32_t ri = 0; ri < net.reactions_.size(); ++ri) {
            const CompiledReaction& r = net.reactions_[ri];

            auto emit = [&](double signed_coefficient, double rate,
                            const std::vector<IndexedParticipant>& monomial, bool forward) {
                RateTerm term;
                term.signed_coefficient = signed_coefficient;
                term.rate = rate;
                term.folded = signed_coefficient * rate;
                term.factors_begin = static_cast<std::uint32_t>(net.factors_.size());
                for (const auto& part : monomial)
                    net.factors_.push_back(
                        {part.species, static_cast<std::uint32_t>(part.stoichiometry)});
                term.factors_end = static_cast<std::uint32_t>(net.factors_.size());
                term.reaction = ri;
                term.forward = forward;
                net.terms_.push_back(term);
            };

            // Forward-direction terms: rate kf, monomial over the reactants.
            for (const auto& part : r.reactants)
                if (part.species == s) emit(-double(part.stoichiometry), r.kf, r.reactants, true);
            for (const auto& part : r.products)
                if (part.species == s) emit(+double(part.stoichiometry), r.kf, r.reactants, true);

            if (r.kb == 0.0) continue;

            // Backward-direction terms: rate kb, monomial over the products.
            // paper_compat drops the stoichiometric multiplier here.
            for (const auto& part : r.reactants)
                if (part.species == s)
                    emit(r.paper_compat ? 1.0 : +double(part.stoichiometry), r.kb, r.products,
                         false);
            for (const auto& part : r.products)
                if (part.species == s)
                    emit(r.paper_compat ? -1.0 : -double(part.stoichiometry), r.kb, r.products,
                         false);
        }
    }
    net.term_offsets_[net.species_.size()] = static_cast<std::uint32_t>(net.terms_.size());
    return net;
}

std::vector<TopologyEdge> export_topology(const CompiledNetwork& network) {
    std::vector<TopologyEdge> edges;
    for (const auto& r : network.reactions()) {
        for (const auto& part : r.reactants)
            edges.push_back({r.id, network.species_name(part.species),
                             TopologyEdge::Role::Reactant, part.stoichiometry, r.kb != 0.0});
        for (const auto& part : r.products)
            edges.push_back({r.id, network.species_name(part.species),
                             TopologyEdge::Role::Product, part.stoichiometry, r.kb != 0.0});
    }
    return edges;
}

}  // namespace rxnet
