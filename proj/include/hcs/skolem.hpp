#pragma once

// Skolemization of prenex sentences. Each existential variable y preceded by
// universals x1..xm is replaced by sk<N>(x1..xm), a fresh constant when m = 0.
// The counter restarts at 1 on every call and keeps running across the
// conjuncts of a conjunction, so output is reproducible; names already taken
// in the input signature are skipped.

#include "hcs/subst.hpp"

namespace hcs {

namespace detail {
inline std::string fresh_skolem_name(const Signature& sig, int& counter) {
    for (;;) {
        std::string name = "sk" + std::to_string(++counter);
        if (!sig.has_function(name) && !sig.has_predicate(name)) return name;
    }
}
}  // namespace detail

inline UniversalSentence skolemize_one(const PrenexSentence& s, Signature& sig, int& counter) {
    UniversalSentence out;
    SubstMap repl;
    std::vector<TermPtr> universals;
    for (const auto& [q, v] : s.prefix) {
        if (q == Quant::Forall) {
            out.vars.push_back(v);
            universals.push_back(make_var(v));
        } else {
            std::string g = detail::fresh_skolem_name(sig, counter);
            sig.add_function(g, static_cast<int>(universals.size()));
            repl[v] = make_app(g, universals);
        }
    }
    out.matrix = substitute(s.matrix, repl);
    return out;
}

// Returns the all-universal form and the signature extended with exactly the
// fresh Skolem symbols.
inline std::pair<UniversalSentence, Signature> skolemize(const PrenexSentence& s,
                                                         const Signature& sig) {
    validate_sentence(s, sig);
    Signature ext = sig;
    int counter = 0;
    UniversalSentence u = skolemize_one(s, ext, counter);
    return {std::move(u), std::move(ext)};
}

inline std::pair<std::vector<UniversalSentence>, Signature> skolemize(
    const ConjunctionOfPrenex& cs, const Signature& sig) {
    Signature ext = sig;
    int counter = 0;
    std::vector<UniversalSentence> out;
    for (const auto& s : cs) {
        validate_sentence(s, sig);
        out.push_back(skolemize_one(s, ext, counter));
    }
    return {std::move(out), std::move(ext)};
}

// Conjoins universal sentences into a single matrix, renaming variables apart
// (conjunct i's v becomes v_i when a name repeats). This is the form HCS
// instances are built against.
inline UniversalSentence merge_universals(const std::vector<UniversalSentence>& us) {
    UniversalSentence out;
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < us.size(); ++i) {
        SubstMap ren;
        for (const auto& v : us[i].vars) {
            std::string name = v;
            if (std::find(out.vars.begin(), out.vars.end(), name) != out.vars.end()) {
                name = v + "_" + std::to_string(i + 1);
                while (std::find(out.vars.begin(), out.vars.end(), name) != out.vars.end())
                    name += "x";
                ren[v] = make_var(name);
            }
            out.vars.push_back(name);
        }
        parts.push_back(ren.empty() ? us[i].matrix : substitute(us[i].matrix, ren));
    }
    out.matrix = parts.empty() ? nullptr : f_conj(parts);
    return out;
}

}  // namespace hcs
