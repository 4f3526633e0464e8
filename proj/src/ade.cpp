#include "sextic/ade.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "sextic/errors.hpp"

namespace sextic {

std::string ADEComponent::name() const {
    const char* fam = family == ADEFamily::A ? "A" : family == ADEFamily::D ? "D" : "E";
    return fam + std::to_string(n);
}

int ADEType::mu() const {
    int s = 0;
    for (const auto& c : components) s += c.rank();
    return s;
}

std::string ADEType::name() const {
    if (components.empty()) return "0";
    std::string out;
    size_t i = 0;
    while (i < components.size()) {
        size_t j = i;
        while (j < components.size() && components[j] == components[i]) ++j;
        if (!out.empty()) out += "+";
        size_t mult = j - i;
        if (mult > 1) out += std::to_string(mult);
        out += components[i].name();
        i = j;
    }
    return out;
}

ADEType parse_ade(const std::string& s) {
    ADEType r;
    if (s == "0" || s.empty()) return r;
    size_t pos = 0;
    auto fail = [&](const std::string& msg) {
        throw parse_error("ADE parse error at position " + std::to_string(pos) + ": " + msg);
    };
    while (pos < s.size()) {
        size_t mult = 0;
        bool has_mult = false;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            has_mult = true;
            mult = mult * 10 + static_cast<size_t>(s[pos] - '0');
            if (mult > 19) fail("multiplicity too large");
            ++pos;
        }
        if (!has_mult) mult = 1;
        if (mult == 0) fail("zero multiplicity");
        if (pos >= s.size()) fail("expected family letter");
        char fam = s[pos];
        ADEFamily family;
        if (fam == 'A' || fam == 'a') family = ADEFamily::A;
        else if (fam == 'D' || fam == 'd') family = ADEFamily::D;
        else if (fam == 'E' || fam == 'e') family = ADEFamily::E;
        else fail("expected A, D or E");
        ++pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected subscript");
        int sub = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            sub = sub * 10 + (s[pos] - '0');
            if (sub > 19) fail("subscript too large");
            ++pos;
        }
        if (family == ADEFamily::A && sub < 1) fail("A_l requires l >= 1");
        if (family == ADEFamily::D && sub < 4) fail("D_m requires m >= 4");
        if (family == ADEFamily::E && (sub < 6 || sub > 8)) fail("E_n requires n in {6,7,8}");
        for (size_t k = 0; k < mult; ++k) r.components.push_back({family, sub});
        if (pos < s.size()) {
            if (s[pos] != '+') fail("expected '+'");
            ++pos;
            if (pos >= s.size()) fail("trailing '+'");
        }
    }
    std::sort(r.components.begin(), r.components.end());
    if (r.mu() > 19) throw parse_error("total rank " + std::to_string(r.mu()) + " exceeds 19");
    return r;
}

namespace {

std::vector<std::pair<int, int>> component_edges(const ADEComponent& c) {
    std::vector<std::pair<int, int>> e;  // 0-based pairs
    switch (c.family) {
        case ADEFamily::A:
            for (int i = 0; i + 1 < c.n; ++i) e.emplace_back(i, i + 1);
            break;
        case ADEFamily::D:
            e.emplace_back(0, 2);  // e1 - e3
            e.emplace_back(1, 2);  // e2 - e3
            for (int i = 2; i + 1 < c.n; ++i) e.emplace_back(i, i + 1);
            break;
        case ADEFamily::E:
            e.emplace_back(0, 3);  // e1 - e4
            for (int i = 1; i + 1 < c.n; ++i) e.emplace_back(i, i + 1);
            break;
    }
    return e;
}

}  // namespace

IMat component_gram(const ADEComponent& c) {
    IMat g(c.n, c.n);
    for (int i = 0; i < c.n; ++i) g.at(i, i) = -2;
    for (auto [a, b] : component_edges(c)) {
        g.at(a, b) = 1;
        g.at(b, a) = 1;
    }
    return g;
}

IMat ade_gram(const ADEType& r) {
    IMat g(r.mu(), r.mu());
    int off = 0;
    for (const auto& c : r.components) {
        IMat b = component_gram(c);
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) g.at(off + i, off + j) = b.at(i, j);
        off += c.n;
    }
    return g;
}

std::vector<int> component_involution(const ADEComponent& c) {
    std::vector<int> p(c.n);
    for (int i = 0; i < c.n; ++i) p[i] = i;
    switch (c.family) {
        case ADEFamily::A:
            for (int i = 0; i < c.n; ++i) p[i] = c.n - 1 - i;
            break;
        case ADEFamily::D:
            if (c.n % 2 == 1) std::swap(p[0], p[1]);
            break;
        case ADEFamily::E:
            if (c.n == 6) {
                // e1 fixed, e_i <-> e_{8-i} for i = 2..6
                p[1] = 5; p[5] = 1;
                p[2] = 4; p[4] = 2;
            }
            break;
    }
    return p;
}

std::vector<int> ade_involution(const ADEType& r) {
    std::vector<int> p(r.mu());
    int off = 0;
    for (const auto& c : r.components) {
        auto q = component_involution(c);
        for (int i = 0; i < c.n; ++i) p[off + i] = off + q[i];
        off += c.n;
    }
    return p;
}

bool even_multiplicity(const ADEComponent& c, int i) {
    if (i < 1 || i > c.n) throw domain_error("even_multiplicity: index out of range");
    switch (c.family) {
        case ADEFamily::A:
            return true;
        case ADEFamily::D:
            if (c.n % 2 == 0) return i % 2 == 0 || i == 1 || i == 2;
            return i % 2 == 1 || i == 1 || i == 2;
        case ADEFamily::E:
            if (c.n == 6) return i != 1;
            if (c.n == 7) return i != 2 && i != 4 && i != 6;
            return i != 2 && i != 4 && i != 6 && i != 8;
    }
    return false;
}

std::vector<int> smooth_branch_classes(const ADEComponent& c) {
    switch (c.family) {
        case ADEFamily::A:
            if (c.n % 2 == 1) return {(c.n + 1) / 2};
            return {};
        case ADEFamily::D:
            if (c.n % 2 == 0) return {1, 2, c.n};
            return {c.n};
        case ADEFamily::E:
            if (c.n == 7) return {7};
            return {};
    }
    return {};
}

Rat sigma_p(const ADEComponent& c, int tau) {
    if (tau == 0) return Rat(0);
    if (tau < 1 || tau > c.n) throw domain_error("sigma_p: index out of range");
    switch (c.family) {
        case ADEFamily::A: {
            int m = std::min(tau, c.n + 1 - tau);
            return make_rat(-static_cast<long>(m) * m, c.n + 1);
        }
        case ADEFamily::D: {
            if (tau <= 2) {
                if (c.n % 2 == 0) return make_rat(-c.n, 4);
                return make_rat(2 - c.n, 4);
            }
            return Rat(tau - c.n - 1);
        }
        case ADEFamily::E: {
            static const long e6n[6] = {-2, -2, -8, -6, -8, -2};
            static const long e6d[6] = {1, 3, 3, 1, 3, 3};
            static const long e7n[7] = {-7, -2, -6, -12, -15, -4, -3};
            static const long e7d[7] = {2, 1, 1, 1, 2, 1, 2};
            static const long e8n[8] = {-8, -4, -14, -30, -20, -12, -6, -2};
            if (c.n == 6) return make_rat(e6n[tau - 1], e6d[tau - 1]);
            if (c.n == 7) return make_rat(e7n[tau - 1], e7d[tau - 1]);
            return Rat(e8n[tau - 1]);
        }
    }
    return Rat(0);
}

std::vector<std::vector<int>> component_diagram_autos(const ADEComponent& c) {
    std::vector<std::vector<int>> gens;
    auto ident = [&]() {
        std::vector<int> p(c.n);
        for (int i = 0; i < c.n; ++i) p[i] = i;
        return p;
    };
    switch (c.family) {
        case ADEFamily::A:
            if (c.n >= 2) gens.push_back(component_involution(c));
            break;
        case ADEFamily::D:
            if (c.n == 4) {
                // full S3 on {e1, e2, e4}
                auto s = ident();
                std::swap(s[0], s[1]);
                gens.push_back(s);
                auto t = ident();
                std::swap(t[0], t[3]);
                gens.push_back(t);
            } else {
                auto s = ident();
                std::swap(s[0], s[1]);
                gens.push_back(s);
            }
            break;
        case ADEFamily::E:
            if (c.n == 6) gens.push_back(component_involution(c));
            break;
    }
    return gens;
}

std::vector<std::vector<int>> aut_generators(const ADEType& r) {
    std::vector<std::vector<int>> gens;
    const int mu = r.mu();
    std::vector<int> offsets;
    int off = 0;
    for (const auto& c : r.components) {
        offsets.push_back(off);
        off += c.n;
    }
    auto ident = [&]() {
        std::vector<int> p(mu);
        for (int i = 0; i < mu; ++i) p[i] = i;
        return p;
    };
    for (size_t k = 0; k < r.components.size(); ++k) {
        for (const auto& local : component_diagram_autos(r.components[k])) {
            auto p = ident();
            for (int i = 0; i < r.components[k].n; ++i) p[offsets[k] + i] = offsets[k] + local[i];
            gens.push_back(std::move(p));
        }
    }
    // Swaps of adjacent identical components.
    for (size_t k = 0; k + 1 < r.components.size(); ++k) {
        if (!(r.components[k] == r.components[k + 1])) continue;
        auto p = ident();
        for (int i = 0; i < r.components[k].n; ++i) {
            p[offsets[k] + i] = offsets[k + 1] + i;
            p[offsets[k + 1] + i] = offsets[k] + i;
        }
        gens.push_back(std::move(p));
    }
    return gens;
}

size_t permutation_group_order(const std::vector<std::vector<int>>& gens, int n) {
    std::set<std::vector<int>> seen;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::vector<std::vector<int>> frontier = {id};
    seen.insert(id);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                std::vector<int> q(n);
                for (int i = 0; i < n; ++i) q[i] = g[p[i]];
                if (seen.insert(q).second) next.push_back(std::move(q));
            }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace sextic
