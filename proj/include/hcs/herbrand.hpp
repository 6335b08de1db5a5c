#pragma once

// Herbrand universe enumeration: all ground terms of nesting depth <= depth,
// ordered by depth and then by printed form. A signature without constants
// gets the designated constant "u0" injected so the universe is nonempty.

#include "hcs/term.hpp"

namespace hcs {

inline std::vector<TermPtr> herbrand_terms(const Signature& sig, int depth) {
    if (depth < 0) throw std::invalid_argument("herbrand_terms: depth must be >= 0");

    std::vector<std::pair<std::string, int>> fns(sig.functions.begin(), sig.functions.end());
    std::vector<TermPtr> levels;         // all terms of depth <= current level
    std::vector<std::string> seen;       // printed forms, for dedup
    auto add = [&](std::vector<TermPtr>& dst, const TermPtr& t) {
        std::string p = print_term(t);
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
            seen.push_back(p);
            dst.push_back(t);
        }
    };

    std::vector<TermPtr> level0;
    for (const auto& [name, arity] : fns)
        if (arity == 0) add(level0, make_const(name));
    if (level0.empty()) add(level0, make_const("u0"));
    std::sort(level0.begin(), level0.end(),
              [](const TermPtr& a, const TermPtr& b) { return print_term(a) < print_term(b); });

    std::vector<TermPtr> out = level0;
    std::vector<TermPtr> prev = level0;  // depth <= d-1 pool
    for (int d = 1; d <= depth; ++d) {
        std::vector<TermPtr> fresh;
        for (const auto& [name, arity] : fns) {
            if (arity == 0) continue;
            std::vector<std::size_t> idx(arity, 0);
            for (;;) {
                std::vector<TermPtr> args;
                int maxd = 0;
                for (int j = 0; j < arity; ++j) {
                    args.push_back(prev[idx[j]]);
                    maxd = std::max(maxd, term_depth(prev[idx[j]]));
                }
                if (maxd == d - 1) add(fresh, make_app(name, args));
                int j = arity - 1;
                while (j >= 0 && ++idx[j] == prev.size()) idx[j--] = 0;
                if (j < 0) break;
            }
        }
        std::sort(fresh.begin(), fresh.end(),
                  [](const TermPtr& a, const TermPtr& b) { return print_term(a) < print_term(b); });
        out.insert(out.end(), fresh.begin(), fresh.end());
        prev.insert(prev.end(), fresh.begin(), fresh.end());
    }
    return out;
}

}  // namespace hcs
