#ifndef GRAPESHOT_HOMOLOGY_HPP
#define GRAPESHOT_HOMOLOGY_HPP

#include <atomic>
#include <map>
#include <memory>
#include <thread>
#include <utility>
#include <vector>

#include "grapeshot/linalg.hpp"
#include "grapeshot/swiatkowski.hpp"

namespace grapeshot {

enum class Ring { Integers, Rationals };

struct HomologyPresentation {
    int degree = 0;
    int weight = 0;
    long betti = 0;
    std::vector<Int> torsion;            // nontrivial invariant factors (> 1)
    std::vector<SChain> representatives; // cycles spanning the free part
};

// Homology of one (degree, weight) slice together with a coordinate
// functional phi. phi is a rational matrix (betti x dim) that maps any cycle
// to its homology coordinates and kills boundaries; it is what makes the
// Künneth bookkeeping representative-independent.
struct SliceData {
    std::vector<SBasisElement> basis;
    std::map<SBasisElement, int> index;
    long betti = 0;
    std::vector<Int> torsion;
    DenseIntMatrix reps;  // dim x betti, integer cycle columns
    QMat phi;             // betti x dim

    int dim() const { return static_cast<int>(basis.size()); }

    std::vector<Rat> coords(const SChain& cycle) const {
        std::vector<Rat> out(static_cast<size_t>(betti), Rat(0));
        for (auto& [b, c] : cycle.terms) {
            auto it = index.find(b);
            if (it == index.end())
                throw IndexOutOfRange("chain term outside the slice basis");
            for (long r = 0; r < betti; ++r)
                out[static_cast<size_t>(r)] += phi.a[static_cast<size_t>(r)][static_cast<size_t>(it->second)] * Rat(c);
        }
        return out;
    }

    SChain representative(int j) const {
        SChain out;
        for (int r = 0; r < dim(); ++r)
            out.add_term(basis[static_cast<size_t>(r)], reps.at(r, j));
        return out;
    }
};

class SliceSolver {
  public:
    explicit SliceSolver(const SComplex& c) : C_(&c) {}

    const SliceData& slice(int i, int k) {
        auto key = std::make_pair(i, k);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, compute(i, k)).first->second;
    }

    const SComplex& complex() const { return *C_; }

  private:
    const SComplex* C_;
    std::map<std::pair<int, int>, SliceData> cache_;

    SliceData compute(int i, int k) const {
        SliceData s;
        s.basis = C_->basis(i, k);
        for (size_t r = 0; r < s.basis.size(); ++r)
            s.index.emplace(s.basis[r], static_cast<int>(r));
        const int n = s.dim();
        if (n == 0) return s;

        DenseIntMatrix Mi = DenseIntMatrix::from_sparse(C_->boundary_matrix(i, k));
        DenseIntMatrix Mip1 = DenseIntMatrix::from_sparse(C_->boundary_matrix(i + 1, k));

        // Kernel lattice of the outgoing boundary.
        SnfResult si = snf_with_transforms(Mi, SnfOpts{false, false, true});
        DenseIntMatrix K = si.V.columns(si.rank, n);  // n x z
        const int z = K.nc;
        if (z == 0) return s;

        // Rational left inverse of K from its own SNF: L = V_K D^-1 U_K[:z].
        SnfResult sk = snf_with_transforms(K, SnfOpts{true, false, true});
        if (sk.rank != z) throw std::logic_error("kernel basis not of full column rank");
        QMat L(z, n);
        for (int r = 0; r < z; ++r)
            for (int c = 0; c < n; ++c) {
                Rat acc(0);
                for (int t = 0; t < z; ++t) {
                    if (sk.V.at(r, t) == 0) continue;
                    acc += Rat(sk.V.at(r, t)) / Rat(sk.diag[static_cast<size_t>(t)]) *
                           Rat(sk.U.at(t, c));
                }
                L.a[static_cast<size_t>(r)][static_cast<size_t>(c)] = acc;
            }

        // Incoming boundaries in kernel coordinates; entries are integers
        // because the kernel lattice is saturated.
        DenseIntMatrix A(z, Mip1.nc);
        {
            QMat Aq = L.mul(QMat::from_int(Mip1));
            for (int r = 0; r < z; ++r)
                for (int c = 0; c < Mip1.nc; ++c) {
                    Rat& v = Aq.a[static_cast<size_t>(r)][static_cast<size_t>(c)];
                    if (v.get_den() != 1)
                        throw std::logic_error("boundary not in the kernel lattice");
                    A.at(r, c) = v.get_num();
                }
        }

        SnfResult sa = snf_with_transforms(A, SnfOpts{true, true, false});
        s.betti = z - sa.rank;
        for (const Int& d : sa.diag)
            if (d > 1) s.torsion.push_back(d);

        DenseIntMatrix reps_all = K.mul(sa.Uinv);
        s.reps = reps_all.columns(sa.rank, z);

        QMat UAL = QMat::from_int(sa.U).mul(L);
        s.phi = QMat(static_cast<int>(s.betti), n);
        for (long r = 0; r < s.betti; ++r)
            s.phi.a[static_cast<size_t>(r)] = UAL.a[static_cast<size_t>(sa.rank + r)];

        // Deterministic sign convention: the first nonzero entry of each
        // representative is positive. In particular the class of the empty
        // configuration is +[1] at (0,0).
        for (long j = 0; j < s.betti; ++j) {
            int lead = -1;
            for (int r = 0; r < n; ++r)
                if (s.reps.at(r, static_cast<int>(j)) != 0) {
                    lead = r;
                    break;
                }
            if (lead >= 0 && s.reps.at(lead, static_cast<int>(j)) < 0) {
                for (int r = 0; r < n; ++r)
                    s.reps.at(r, static_cast<int>(j)) = -s.reps.at(r, static_cast<int>(j));
                for (int c = 0; c < n; ++c)
                    s.phi.a[static_cast<size_t>(j)][static_cast<size_t>(c)] =
                        -s.phi.a[static_cast<size_t>(j)][static_cast<size_t>(c)];
            }
        }
        return s;
    }
};

// Shape of the graph after smoothing: the Świątkowski complex applies as
// soon as no bivalent vertices remain; the circle needs its closed form.
enum class GraphShape { Complex, Circle };

class SwContext {
  public:
    explicit SwContext(const Graph& g) : smoothed_(smooth_bivalent(g)) {
        if (!smoothed_.connected())
            throw GraphError("homology requires a connected graph");
        if (smoothed_.ne() == 1 && smoothed_.is_loop(0) &&
            smoothed_.essential_vertices().empty())
            shape_ = GraphShape::Circle;
        complex_ = std::make_unique<SComplex>(SComplex::swiatkowski(smoothed_));
        solver_ = std::make_unique<SliceSolver>(*complex_);
    }

    GraphShape shape() const { return shape_; }
    const Graph& smoothed() const { return smoothed_; }
    const SComplex& complex() const { return *complex_; }
    SliceSolver& solver() { return *solver_; }

    HomologyPresentation homology(int i, int k) {
        HomologyPresentation out;
        out.degree = i;
        out.weight = k;
        if (shape_ == GraphShape::Circle) {
            out.betti = (i == 0 || (i == 1 && k >= 1)) ? 1 : 0;
            return out;
        }
        const SliceData& s = solver_->slice(i, k);
        out.betti = s.betti;
        out.torsion = s.torsion;
        for (long j = 0; j < s.betti; ++j)
            out.representatives.push_back(s.representative(static_cast<int>(j)));
        return out;
    }

    long betti_rational(int i, int k) {
        if (shape_ == GraphShape::Circle) return (i == 0 || (i == 1 && k >= 1)) ? 1 : 0;
        QMat Mi = QMat::from_int(DenseIntMatrix::from_sparse(complex_->boundary_matrix(i, k)));
        QMat Mip1 =
            QMat::from_int(DenseIntMatrix::from_sparse(complex_->boundary_matrix(i + 1, k)));
        long nullity = Mi.nc - q_rank(Mi);
        return nullity - q_rank(Mip1);
    }

  private:
    Graph smoothed_;
    GraphShape shape_ = GraphShape::Complex;
    std::unique_ptr<SComplex> complex_;
    std::unique_ptr<SliceSolver> solver_;
};

struct TableRow {
    int degree = 0;
    int weight = 0;
    long betti = 0;
    std::vector<Int> torsion;
};

// Betti/torsion table over all degrees <= max_degree and weights <=
// max_weight. Slices are independent; `jobs` > 1 fans them out to a worker
// pool with deterministic aggregation by slice index.
inline std::vector<TableRow> homology_table(const Graph& g, int max_degree, int max_weight,
                                            Ring ring = Ring::Integers, int jobs = 1) {
    Graph sm = smooth_bivalent(g);
    if (!sm.connected()) throw GraphError("homology requires a connected graph");
    bool circle = sm.ne() == 1 && sm.is_loop(0) && sm.essential_vertices().empty();
    SComplex C = SComplex::swiatkowski(sm);

    std::vector<TableRow> rows;
    for (int i = 0; i <= max_degree; ++i)
        for (int k = 0; k <= max_weight; ++k) rows.push_back({i, k, 0, {}});

    auto work = [&](TableRow& row) {
        if (circle) {
            row.betti = (row.degree == 0 || (row.degree == 1 && row.weight >= 1)) ? 1 : 0;
            return;
        }
        SparseIntMatrix Mi = C.boundary_matrix(row.degree, row.weight);
        SparseIntMatrix Mip1 = C.boundary_matrix(row.degree + 1, row.weight);
        if (ring == Ring::Integers) {
            SnfResult a = snf_diagonal(Mi);
            SnfResult b = snf_diagonal(Mip1);
            row.betti = Mi.ncols - a.rank - b.rank;
            for (const Int& d : b.diag)
                if (d > 1) row.torsion.push_back(d);
        } else {
            long nullity = Mi.ncols - q_rank(QMat::from_int(DenseIntMatrix::from_sparse(Mi)));
            row.betti = nullity - q_rank(QMat::from_int(DenseIntMatrix::from_sparse(Mip1)));
        }
    };

    if (jobs <= 1) {
        for (auto& r : rows) work(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    size_t idx = next.fetch_add(1);
                    if (idx >= rows.size()) return;
                    work(rows[idx]);
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace grapeshot

#endif
