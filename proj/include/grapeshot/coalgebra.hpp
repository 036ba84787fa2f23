#ifndef GRAPESHOT_COALGEBRA_HPP
#define GRAPESHOT_COALGEBRA_HPP

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "grapeshot/homology.hpp"
#include "grapeshot/swiatkowski.hpp"

namespace grapeshot {

// ---------------------------------------------------------------------------
// DGCA axiom verification on the chain level.
// ---------------------------------------------------------------------------
struct AxiomReport {
    bool cocommutative = true;
    bool coassociative = true;
    bool counital = true;
    bool coderivation = true;
    long elements_checked = 0;
    std::string counterexample;  // first failing basis element, if any

    bool all_pass() const {
        return cocommutative && coassociative && counital && coderivation;
    }
};

namespace detail {

inline STensorChain koszul_swap(const STensorChain& t) {
    STensorChain out;
    for (auto& [k, c] : t.terms) {
        Int s = ((k.first.degree() * k.second.degree()) % 2) ? -1 : 1;
        out.add_term(k.second, k.first, c * s);
    }
    return out;
}

inline STripleChain coshuffle_left(const SComplex& C, const STensorChain& t) {
    STripleChain out;
    for (auto& [k, c] : t.terms) {
        STensorChain s = C.coshuffle(k.first);
        for (auto& [k2, c2] : s.terms) out.add_term(k2.first, k2.second, k.second, c * c2);
    }
    return out;
}

inline STripleChain coshuffle_right(const SComplex& C, const STensorChain& t) {
    STripleChain out;
    for (auto& [k, c] : t.terms) {
        STensorChain s = C.coshuffle(k.second);
        for (auto& [k2, c2] : s.terms) out.add_term(k.first, k2.first, k2.second, c * c2);
    }
    return out;
}

inline SChain counit_left(const STensorChain& t) {
    SChain out;
    for (auto& [k, c] : t.terms)
        if (k.first.is_unit()) out.add_term(k.second, c);
    return out;
}

inline SChain counit_right(const STensorChain& t) {
    SChain out;
    for (auto& [k, c] : t.terms)
        if (k.second.is_unit()) out.add_term(k.first, c);
    return out;
}

}  // namespace detail

// Checks cocommutativity, coassociativity, counit and the coderivation rule
// exactly on every basis element with weight <= max_weight and degree <=
// max_degree. Stops recording after the first counterexample but still
// reports all four axiom verdicts.
inline AxiomReport verify_coalgebra_axioms(const SComplex& C, int max_weight,
                                           int max_degree) {
    AxiomReport rep;
    for (int k = 0; k <= max_weight; ++k) {
        for (int i = 0; i <= std::min(max_degree, C.max_degree()); ++i) {
            for (const auto& b : C.basis(i, k)) {
                ++rep.elements_checked;
                STensorChain sha = C.coshuffle(b);
                bool ok = true;
                if (!(detail::koszul_swap(sha) == sha)) {
                    rep.cocommutative = false;
                    ok = false;
                }
                if (!(detail::coshuffle_left(C, sha) == detail::coshuffle_right(C, sha))) {
                    rep.coassociative = false;
                    ok = false;
                }
                SChain self = SChain::of(b);
                if (!(detail::counit_left(sha) == self) ||
                    !(detail::counit_right(sha) == self)) {
                    rep.counital = false;
                    ok = false;
                }
                if (!(C.coshuffle(C.boundary(b)) == C.tensor_boundary(sha))) {
                    rep.coderivation = false;
                    ok = false;
                }
                if (!ok && rep.counterexample.empty())
                    rep.counterexample = C.to_string(b);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Induced comultiplication on homology via Künneth coordinates.
// ---------------------------------------------------------------------------
struct KunnethBlock {
    int i1 = 0, k1 = 0, i2 = 0, k2 = 0;
    long b1 = 0, b2 = 0;  // betti of each factor slice

    auto key() const { return std::make_tuple(i1, k1, i2, k2); }
    bool operator<(const KunnethBlock& o) const { return key() < o.key(); }
};

// Layout of the Künneth coordinate vector of a total bigrading (i,k): one
// block per split with nonzero homology on both sides, flattened as
// (a, b) -> offset + a*b2 + b.
struct KunnethLayout {
    int degree = 0, weight = 0;
    std::vector<KunnethBlock> blocks;
    std::vector<long> offsets;
    long total_cols = 0;
};

inline KunnethLayout kunneth_layout(SliceSolver& solver, int i, int k) {
    KunnethLayout out;
    out.degree = i;
    out.weight = k;
    for (int i1 = 0; i1 <= i; ++i1)
        for (int k1 = 0; k1 <= k; ++k1) {
            long b1 = solver.slice(i1, k1).betti;
            long b2 = solver.slice(i - i1, k - k1).betti;
            if (b1 == 0 || b2 == 0) continue;
            out.blocks.push_back({i1, k1, i - i1, k - k1, b1, b2});
            out.offsets.push_back(out.total_cols);
            out.total_cols += b1 * b2;
        }
    return out;
}

// Coordinates of a homogeneous tensor-complex cycle under phi (x) phi.
// Because phi kills boundaries, the result depends only on the homology
// class of the cycle.
inline std::vector<Rat> kunneth_coords(SliceSolver& solver, const KunnethLayout& lay,
                                       const STensorChain& z) {
    std::vector<Rat> row(static_cast<size_t>(lay.total_cols), Rat(0));
    std::map<std::tuple<int, int, int, int>, size_t> block_of;
    for (size_t bi = 0; bi < lay.blocks.size(); ++bi)
        block_of.emplace(lay.blocks[bi].key(), bi);
    for (auto& [key, c] : z.terms) {
        int i1 = key.first.degree(), k1 = key.first.weight();
        int i2 = key.second.degree(), k2 = key.second.weight();
        auto it = block_of.find(std::make_tuple(i1, k1, i2, k2));
        if (it == block_of.end()) continue;  // factor slice has no homology
        const KunnethBlock& blk = lay.blocks[it->second];
        const SliceData& s1 = solver.slice(i1, k1);
        const SliceData& s2 = solver.slice(i2, k2);
        int c1 = s1.index.at(key.first);
        int c2 = s2.index.at(key.second);
        for (long a = 0; a < blk.b1; ++a) {
            const Rat& p1 = s1.phi.a[static_cast<size_t>(a)][static_cast<size_t>(c1)];
            if (p1 == 0) continue;
            for (long b = 0; b < blk.b2; ++b) {
                const Rat& p2 = s2.phi.a[static_cast<size_t>(b)][static_cast<size_t>(c2)];
                if (p2 == 0) continue;
                row[static_cast<size_t>(lay.offsets[it->second] + a * blk.b2 + b)] +=
                    p1 * p2 * Rat(c);
            }
        }
    }
    return row;
}

// Sha*_H restricted to one (degree, weight) slice: row j is the coordinate
// vector of the class of Sha*(z_j) over all Künneth blocks, columns labeled
// (block, a, b) with a and b homology coordinates of the factors.
struct CoproductSlice {
    int degree = 0, weight = 0;
    long betti = 0;
    std::vector<KunnethBlock> blocks;
    std::vector<long> block_offset;  // column offset per block
    long total_cols = 0;
    QMat lambda;  // betti x total_cols
};

class HomologyCoalgebra {
  public:
    explicit HomologyCoalgebra(SwContext& ctx) : ctx_(&ctx) {}

    // The Künneth coordinates of a tensor-complex cycle, assembled with the
    // per-slice coordinate functionals.
    CoproductSlice comultiplication(int i, int k, Ring ring = Ring::Rationals) {
        if (ctx_->shape() == GraphShape::Circle) return circle_comultiplication(i, k);
        if (ring == Ring::Integers) require_torsion_free(i, k);
        const SliceData& s = ctx_->solver().slice(i, k);
        std::vector<SChain> reps;
        for (long j = 0; j < s.betti; ++j) reps.push_back(s.representative(static_cast<int>(j)));
        CoproductSlice out = comultiplication_from(i, k, reps);
        if (ring == Ring::Integers) {
            for (auto& row : out.lambda.a)
                for (auto& v : row)
                    if (v.get_den() != 1)
                        throw TorsionPresent("non-integral Künneth coordinate");
        }
        return out;
    }

    // Same coordinates computed from caller-provided cycle representatives
    // (used by the representative-independence property).
    CoproductSlice comultiplication_from(int i, int k, const std::vector<SChain>& reps) {
        CoproductSlice out;
        out.degree = i;
        out.weight = k;
        out.betti = static_cast<long>(reps.size());
        KunnethLayout lay = kunneth_layout(ctx_->solver(), i, k);
        out.blocks = lay.blocks;
        out.block_offset = lay.offsets;
        out.total_cols = lay.total_cols;
        out.lambda = QMat(static_cast<int>(out.betti), static_cast<int>(out.total_cols));
        for (size_t j = 0; j < reps.size(); ++j) {
            STensorChain z = ctx_->complex().coshuffle(reps[j]);
            out.lambda.a[j] = kunneth_coords(ctx_->solver(), lay, z);
        }
        return out;
    }

    // Kernel of x -> Sha*_H(x) - x(x)[unit] - [unit](x)x on H_i(B_k), over Q.
    // Columns of the returned matrix are a basis in homology coordinates.
    QMat primitive_kernel(int i, int k) {
        if (ctx_->shape() == GraphShape::Circle) return circle_primitive_kernel(i, k);
        CoproductSlice cp = comultiplication(i, k, Ring::Rationals);
        QMat P(static_cast<int>(cp.total_cols), static_cast<int>(cp.betti));
        for (long j = 0; j < cp.betti; ++j)
            for (long c = 0; c < cp.total_cols; ++c)
                P.a[static_cast<size_t>(c)][static_cast<size_t>(j)] =
                    cp.lambda.a[static_cast<size_t>(j)][static_cast<size_t>(c)];
        // Subtract the two unit-split identities.
        for (size_t bi = 0; bi < cp.blocks.size(); ++bi) {
            const KunnethBlock& blk = cp.blocks[bi];
            if (blk.i2 == 0 && blk.k2 == 0 && blk.i1 == i && blk.k1 == k) {
                for (long j = 0; j < cp.betti; ++j)
                    P.a[static_cast<size_t>(cp.block_offset[bi] + j * blk.b2)][static_cast<size_t>(j)] -= 1;
            }
            if (blk.i1 == 0 && blk.k1 == 0 && blk.i2 == i && blk.k2 == k) {
                for (long j = 0; j < cp.betti; ++j)
                    P.a[static_cast<size_t>(cp.block_offset[bi] + j)][static_cast<size_t>(j)] -= 1;
            }
        }
        return q_kernel(P);
    }

    void require_torsion_free(int i, int k) {
        for (int i1 = 0; i1 <= i; ++i1)
            for (int k1 = 0; k1 <= k; ++k1)
                if (!ctx_->solver().slice(i1, k1).torsion.empty())
                    throw TorsionPresent("torsion at degree " + std::to_string(i1) +
                                         ", weight " + std::to_string(k1));
    }

  private:
    SwContext* ctx_;

    // Closed forms for the circle: H = R[e] + R[e]<beta>, with
    // Sha*(e^a . gamma) given by the binomial formula.
    CoproductSlice circle_comultiplication(int i, int k) {
        CoproductSlice out;
        out.degree = i;
        out.weight = k;
        long betti = (i == 0 || (i == 1 && k >= 1)) ? 1 : 0;
        out.betti = betti;
        auto slice_betti = [&](int d, int w) -> long {
            return (d == 0 || (d == 1 && w >= 1)) ? 1 : 0;
        };
        for (int i1 = 0; i1 <= i; ++i1)
            for (int k1 = 0; k1 <= k; ++k1) {
                long b1 = slice_betti(i1, k1), b2 = slice_betti(i - i1, k - k1);
                if (b1 == 0 || b2 == 0) continue;
                out.blocks.push_back({i1, k1, i - i1, k - k1, b1, b2});
                out.block_offset.push_back(out.total_cols);
                out.total_cols += 1;
            }
        out.lambda = QMat(static_cast<int>(betti), static_cast<int>(out.total_cols));
        if (betti == 0) return out;
        for (size_t bi = 0; bi < out.blocks.size(); ++bi) {
            const KunnethBlock& blk = out.blocks[bi];
            Int coef = 0;
            if (i == 0) {
                coef = binomial(k, blk.k1);
            } else {
                // e^{k-1} beta: the beta factor sits on the side with i = 1.
                if (blk.i1 == 1)
                    coef = binomial(k - 1, blk.k1 - 1);
                else
                    coef = binomial(k - 1, blk.k1);
            }
            out.lambda.a[0][static_cast<size_t>(out.block_offset[bi])] = Rat(coef);
        }
        return out;
    }

    QMat circle_primitive_kernel(int i, int k) {
        long betti = (i == 0 || (i == 1 && k >= 1)) ? 1 : 0;
        bool primitive = (i == 0 && k == 1) || (i == 1 && k == 1);
        if (betti == 0) return QMat(0, 0);
        QMat out(1, primitive ? 1 : 0);
        if (primitive) out.a[0][0] = 1;
        return out;
    }
};

}  // namespace grapeshot

#endif
