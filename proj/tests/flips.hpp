#pragma once

// Single-hypothesis violations derived from a valid case, shared by the unit
// tests and the acceptance binary.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tbl/characters.hpp"
#include "tbl/identities.hpp"

namespace tbl::testing {

struct Flip {
    std::string what;
    IdentityCase c;
};

struct CharRef {
    int q;
    int index;
};

inline CharRef find_character(bool primitive, bool principal, Parity parity) {
    for (int q = 3; q <= 40; ++q)
        for (const auto& c : enumerate_characters(q))
            if (c.is_primitive() == primitive && c.is_principal() == principal && c.parity() == parity)
                return {q, c.index()};
    return {1, 0};
}

// Flips every hypothesis of base's theorem once. base must be valid.
inline std::vector<Flip> hypothesis_flips(const IdentityCase& base) {
    const TheoremInfo& info = theorem_info(base.theorem_id);
    const std::string& th = info.id;
    std::vector<Flip> out;
    auto add = [&](std::string what, auto mutate) {
        IdentityCase c = base;
        mutate(c);
        out.push_back({th + ": " + what, c});
    };

    // characters: parity, primitivity, principality, one slot at a time
    const bool parity_free = th == "C2_1" || th == "C2_2";
    for (int slot = 0; slot < info.characters; ++slot) {
        const bool second = slot == 1;
        const int q = second ? base.q : (info.characters == 2 ? base.p : base.q);
        const int idx = second ? base.char2_index : base.char_index;
        const Parity par = character(q, idx).parity();
        const Parity other = par == Parity::Even ? Parity::Odd : Parity::Even;
        auto set = [second, two = info.characters == 2](IdentityCase& c, CharRef r) {
            if (second) {
                c.q = r.q;
                c.char2_index = r.index;
            } else if (two) {
                c.p = r.q;
                c.char_index = r.index;
            } else {
                c.q = r.q;
                c.char_index = r.index;
            }
        };
        const std::string name = info.characters == 2 ? (second ? "chi2" : "chi1") : "chi";
        if (!parity_free) {
            const CharRef r = find_character(true, false, other);
            add(name + " parity flipped", [&](IdentityCase& c) { set(c, r); });
        }
        const CharRef imp = find_character(false, false, par);
        add(name + " imprimitive", [&](IdentityCase& c) { set(c, imp); });
        add(name + " principal", [&](IdentityCase& c) { set(c, CharRef{5, 0}); });
    }

    // k
    if (info.uses_k) {
        add("k parity flipped", [](IdentityCase& c) { c.k = *c.k + 1; });
        add("k negative", [](IdentityCase& c) { c.k = -2; });
        if (th == "T2_3" || th == "T2_4") add("k = 0", [](IdentityCase& c) { c.k = 0; });
    } else {
        add("k given", [](IdentityCase& c) { c.k = 1; });
    }

    // nu
    switch (info.section) {
        case Section::Integer:
            if (info.uses_nu) {
                add("nu = 0", [](IdentityCase& c) { c.nu = 0.0; });
                add("nu < 0", [](IdentityCase& c) { c.nu = -0.4; });
            } else {
                add("nu given", [](IdentityCase& c) { c.nu = 0.3; });
            }
            add("a <= 0", [](IdentityCase& c) { c.a = -1.0; });
            add("x <= 0", [](IdentityCase& c) { c.x = 0.0; });
            if (th == "T2_9" || th == "T2_12" || th == "T2_13") {
                add("a^2 M x / 16 pi^2 integral", [&](IdentityCase& c) {
                    const double M = info.characters == 2 ? double(c.p) * c.q : double(c.q);
                    c.x = 16.0 * std::numbers::pi * std::numbers::pi / (c.a * c.a * M);
                });
            }
            break;
        case Section::Cohen:
        case Section::Classical: {
            const bool half = th == "C3_1" || th == "C3_2" || th == "C3_3" || th == "C3_4";
            if (half) {
                add("nu != 1/2", [](IdentityCase& c) { c.nu = 0.3; });
            } else {
                add("nu integral", [](IdentityCase& c) { c.nu = 1.0; });
                add("nu < 0", [](IdentityCase& c) { c.nu = -0.3; });
            }
            if (info.uses_N) {
                add("N below floor((nu + 1) / 2)", [](IdentityCase& c) {
                    c.nu = 1.7;
                    c.N = 0;
                });
                if (th == "T3_4" || th == "T3_6" || th == "T3_7" || th == "C3_6")
                    add("N = 0", [](IdentityCase& c) { c.N = 0; });
            }
            add("qx integral", [&](IdentityCase& c) {
                double M = 1.0;
                if (info.characters == 2) M = double(c.p) * c.q;
                else if (th == "C3_5" || th == "C3_6") M = double(c.q) * c.q;
                else if (info.characters == 1) M = c.q;
                c.x = 2.0 / M;
            });
            add("x <= 0", [](IdentityCase& c) { c.x = -0.5; });
            break;
        }
        case Section::Voronoi:
            add("nu >= 1/2", [](IdentityCase& c) { c.nu = 0.6; });
            add("nu = 0", [](IdentityCase& c) { c.nu = 0.0; });
            add("alpha integral", [](IdentityCase& c) { c.alpha = 1.0; });
            add("beta integral", [](IdentityCase& c) { c.beta = 3.0; });
            add("alpha > beta", [](IdentityCase& c) { std::swap(c.alpha, c.beta); });
            break;
    }
    return out;
}

}  // namespace tbl::testing
