#ifndef GRAPESHOT_POLYRING_HPP
#define GRAPESHOT_POLYRING_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grapeshot/common.hpp"

namespace grapeshot {

// Monomial in edge variables. Variables are dense integer ids; only nonzero
// exponents are stored, sorted by variable id.
struct Monomial {
    std::vector<std::pair<int, int>> vars;

    static Monomial one() { return Monomial{}; }

    static Monomial var(int v, int exp = 1) {
        Monomial m;
        if (exp > 0) m.vars.emplace_back(v, exp);
        return m;
    }

    bool is_one() const { return vars.empty(); }

    int degree() const {
        int d = 0;
        for (auto& [v, e] : vars) d += e;
        return d;
    }

    int exponent(int v) const {
        for (auto& [w, e] : vars)
            if (w == v) return e;
        return 0;
    }

    bool contains(int v) const { return exponent(v) > 0; }

    Monomial times(const Monomial& o) const {
        Monomial out;
        out.vars.reserve(vars.size() + o.vars.size());
        size_t i = 0, j = 0;
        while (i < vars.size() && j < o.vars.size()) {
            if (vars[i].first < o.vars[j].first)
                out.vars.push_back(vars[i++]);
            else if (vars[i].first > o.vars[j].first)
                out.vars.push_back(o.vars[j++]);
            else {
                out.vars.emplace_back(vars[i].first, vars[i].second + o.vars[j].second);
                ++i, ++j;
            }
        }
        while (i < vars.size()) out.vars.push_back(vars[i++]);
        while (j < o.vars.size()) out.vars.push_back(o.vars[j++]);
        return out;
    }

    bool operator==(const Monomial& o) const { return vars == o.vars; }
    bool operator<(const Monomial& o) const { return vars < o.vars; }
};

// Polynomial with arbitrary-precision integer coefficients; no zero
// coefficients stored.
struct Poly {
    std::map<Monomial, Int> terms;

    static Poly zero() { return Poly{}; }
    static Poly constant(const Int& c) {
        Poly p;
        if (c != 0) p.terms[Monomial::one()] = c;
        return p;
    }
    static Poly monomial(const Monomial& m, const Int& c = 1) {
        Poly p;
        if (c != 0) p.terms[m] = c;
        return p;
    }
    static Poly var(int v) { return monomial(Monomial::var(v)); }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly out = *this;
        for (auto& [m, c] : o.terms) out.add_term(m, c);
        return out;
    }
    Poly operator-(const Poly& o) const {
        Poly out = *this;
        for (auto& [m, c] : o.terms) out.add_term(m, -c);
        return out;
    }
    Poly operator*(const Poly& o) const {
        Poly out;
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : o.terms) out.add_term(m1.times(m2), c1 * c2);
        return out;
    }
    Poly operator*(const Int& c) const {
        Poly out;
        if (c == 0) return out;
        for (auto& [m, v] : terms) out.terms[m] = v * c;
        return out;
    }
    Poly pow(int n) const {
        Poly out = constant(1);
        for (int i = 0; i < n; ++i) out = out * (*this);
        return out;
    }
    bool operator==(const Poly& o) const { return terms == o.terms; }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms) d = std::max(d, m.degree());
        return d;
    }

    int degree_in(int v) const {
        int d = 0;
        for (auto& [m, c] : terms) d = std::max(d, m.exponent(v));
        return d;
    }

    // Substitute each variable by a polynomial; variables without an entry in
    // `image` are kept as themselves.
    Poly substitute(const std::map<int, Poly>& image) const {
        Poly out;
        for (auto& [m, c] : terms) {
            Poly t = constant(c);
            for (auto& [v, e] : m.vars) {
                auto it = image.find(v);
                Poly base = (it != image.end()) ? it->second : var(v);
                t = t * base.pow(e);
            }
            out = out + t;
        }
        return out;
    }
};

// Element of the tensor square of the edge ring.
struct TensorPoly {
    std::map<std::pair<Monomial, Monomial>, Int> terms;

    void add_term(const Monomial& a, const Monomial& b, const Int& c) {
        if (c == 0) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    TensorPoly operator+(const TensorPoly& o) const {
        TensorPoly out = *this;
        for (auto& [k, c] : o.terms) out.add_term(k.first, k.second, c);
        return out;
    }
    TensorPoly operator*(const TensorPoly& o) const {
        TensorPoly out;
        for (auto& [k1, c1] : terms)
            for (auto& [k2, c2] : o.terms)
                out.add_term(k1.first.times(k2.first), k1.second.times(k2.second),
                             c1 * c2);
        return out;
    }
    bool operator==(const TensorPoly& o) const { return terms == o.terms; }
};

// sha*(E^a) = sum over b <= a of binom(a,b) E^b (x) E^{a-b}; extended
// coefficientwise. Agrees with the ring homomorphism sending e to
// e(x)1 + 1(x)e.
inline TensorPoly sha_star(const Monomial& m) {
    TensorPoly out;
    out.add_term(Monomial::one(), Monomial::one(), 1);
    for (auto& [v, a] : m.vars) {
        TensorPoly factor;
        for (int b = 0; b <= a; ++b)
            factor.add_term(Monomial::var(v, b), Monomial::var(v, a - b),
                            binomial(a, b));
        out = out * factor;
    }
    return out;
}

inline TensorPoly sha_star(const Poly& p) {
    TensorPoly out;
    for (auto& [m, c] : p.terms) {
        TensorPoly t = sha_star(m);
        for (auto& [k, v] : t.terms) out.add_term(k.first, k.second, v * c);
    }
    return out;
}

// Counit checks on the tensor square: project one side to weight 0.
inline Poly tensor_left_counit(const TensorPoly& t) {
    Poly out;
    for (auto& [k, c] : t.terms)
        if (k.first.is_one()) out.add_term(k.second, c);
    return out;
}
inline Poly tensor_right_counit(const TensorPoly& t) {
    Poly out;
    for (auto& [k, c] : t.terms)
        if (k.second.is_one()) out.add_term(k.first, c);
    return out;
}
inline TensorPoly tensor_swap(const TensorPoly& t) {
    TensorPoly out;
    for (auto& [k, c] : t.terms) out.add_term(k.second, k.first, c);
    return out;
}

// Membership in the subalgebra generated by edge differences: substitute
// e -> x_e + t (with x_{e0} = 0) and test that t does not survive.
inline bool in_r0(const Poly& p, int e0) {
    int maxv = e0;
    for (auto& [m, c] : p.terms)
        for (auto& [v, e] : m.vars) maxv = std::max(maxv, v);
    const int t_id = maxv + 1;
    std::map<int, Poly> image;
    image[e0] = Poly::var(t_id);
    for (auto& [m, c] : p.terms)
        for (auto& [v, e] : m.vars)
            if (v != e0 && !image.count(v))
                image[v] = Poly::var(v) + Poly::var(t_id);
    return p.substitute(image).degree_in(t_id) == 0;
}

// All monomials of degree d in the difference variables {e - e0 : e != e0},
// expanded as polynomials in the original edge variables.
inline std::vector<Poly> r0_homogeneous_basis(const std::vector<int>& edges, int e0,
                                              int d) {
    std::vector<int> others;
    for (int e : edges)
        if (e != e0) others.push_back(e);
    std::vector<Poly> out;
    if (d == 0) {
        out.push_back(Poly::constant(1));
        return out;
    }
    if (others.empty()) return out;
    // Enumerate exponent vectors of total degree d over `others`.
    std::vector<int> exps(others.size(), 0);
    auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
        if (pos + 1 == others.size()) {
            exps[pos] = remaining;
            Poly p = Poly::constant(1);
            for (size_t i = 0; i < others.size(); ++i) {
                Poly diff = Poly::var(others[i]) - Poly::var(e0);
                p = p * diff.pow(exps[i]);
            }
            out.push_back(p);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exps[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, d);
    return out;
}

// Canonical text form, e.g. "e1^2*e2 - 3*e2".
inline std::string monomial_to_string(const Monomial& m,
                                      const std::vector<std::string>& names) {
    if (m.is_one()) return "1";
    std::string s;
    for (auto& [v, e] : m.vars) {
        if (!s.empty()) s += "*";
        s += names.at(static_cast<size_t>(v));
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string poly_to_string(const Poly& p,
                                  const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : p.terms) {
        Int a = c;
        if (s.empty()) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (m.is_one())
            s += a.get_str();
        else {
            if (a != 1) s += a.get_str() + "*";
            s += monomial_to_string(m, names);
        }
    }
    return s;
}

}  // namespace grapeshot

#endif
