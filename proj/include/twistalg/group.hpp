#pragma once

#include <compare>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twistalg/smith.hpp"

namespace twistalg {

using IntVec = std::vector<long long>;
using IntMat = std::vector<std::vector<long long>>;

// Element (v, s) of Z^rank x| F: translation part v and the index s of the
// point part in the finite-part list of the owning GroupSpec.
struct GroupElement {
    IntVec v;
    int s = 0;

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

inline std::string to_string(const GroupElement& g) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        if (i) os << ",";
        os << g.v[i];
    }
    os << ";" << g.s << ")";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    return os << to_string(g);
}

// A crystallographic group Z^rank x| F presented by the integer matrices of
// the finite point group F acting on the translation lattice.  Construction
// validates the presentation: the identity matrix listed first, entries in
// GL(rank, Z), closure under products, existence of inverses, and the
// free-away-from-the-origin condition det(M - I) != 0 for M != I.
class GroupSpec {
public:
    GroupSpec(int rank, std::vector<IntMat> finite_part, std::string preset_name = "custom")
        : rank_(rank), finite_(std::move(finite_part)), preset_(std::move(preset_name)) {
        validate_and_build_tables();
    }

    // Free abelian group Z^rank (trivial point group).
    static GroupSpec preset_Zn(int rank) {
        return GroupSpec(rank, {identity_mat(rank)}, "Zn");
    }

    // Z^2 x| Z/3 with the point group generated by A = [[-1,-1],[1,0]].
    static GroupSpec preset_Z2xZ3() {
        const IntMat a = {{-1, -1}, {1, 0}};
        return GroupSpec(2, {identity_mat(2), a, mat_mul(a, a)}, "Z2xZ3");
    }

    int rank() const { return rank_; }
    int finite_order() const { return static_cast<int>(finite_.size()); }
    const std::string& preset() const { return preset_; }
    const std::vector<IntMat>& finite_part() const { return finite_; }
    const IntMat& matrix(int s) const { return finite_[check_index(s)]; }

    int mul_index(int s, int t) const { return mul_[check_index(s)][check_index(t)]; }
    int inv_index(int s) const { return inv_[check_index(s)]; }

    // Multiplicative order of the point-part matrix.
    int point_order(int s) const {
        check_index(s);
        int k = 1;
        int t = s;
        while (t != 0) {
            t = mul_[t][s];
            ++k;
        }
        return k;
    }

    IntVec apply(int s, const IntVec& v) const {
        check_vector(v);
        return mat_vec(finite_[check_index(s)], v);
    }

    GroupElement identity() const { return GroupElement{IntVec(rank_, 0), 0}; }

    GroupElement make(IntVec v, int s) const {
        check_vector(v);
        check_index(s);
        return GroupElement{std::move(v), s};
    }

    // (v, s)(w, t) = (v + M_s w, s t)
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
        check_element(a);
        check_element(b);
        IntVec v = mat_vec(finite_[a.s], b.v);
        for (int i = 0; i < rank_; ++i) v[i] += a.v[i];
        return GroupElement{std::move(v), mul_[a.s][b.s]};
    }

    // (v, s)^{-1} = (-M_{s^{-1}} v, s^{-1})
    GroupElement inverse(const GroupElement& a) const {
        check_element(a);
        const int si = inv_[a.s];
        IntVec v = mat_vec(finite_[si], a.v);
        for (auto& x : v) x = -x;
        return GroupElement{std::move(v), si};
    }

    GroupElement power(const GroupElement& g, long long k) const {
        check_element(g);
        GroupElement base = k < 0 ? inverse(g) : g;
        long long reps = k < 0 ? -k : k;
        GroupElement acc = identity();
        for (long long i = 0; i < reps; ++i) acc = multiply(acc, base);
        return acc;
    }

    // Order of g; std::nullopt means infinite.
    std::optional<long long> element_order(const GroupElement& g) const {
        check_element(g);
        if (g == identity()) return 1;
        if (g.s == 0) return std::nullopt;  // nontrivial pure translation
        // With det(M_s - I) != 0 the s-block elements are torsion of order
        // ord(M_s); verify by iteration rather than assumption.
        const int cap = point_order(g.s);
        GroupElement acc = g;
        for (int k = 1; k <= cap; ++k) {
            if (acc == identity()) return k;
            acc = multiply(acc, g);
        }
        return std::nullopt;
    }

    bool is_torsion(const GroupElement& g) const {
        const auto n = element_order(g);
        return n.has_value() && *n > 1;
    }

    // All (v, s) with |v|_inf <= radius; size (2R+1)^rank * |F|, enumerated
    // deterministically (v lexicographic, then s).
    std::vector<GroupElement> ball(int radius) const {
        if (radius < 0) throw std::invalid_argument("GroupSpec::ball: negative radius");
        std::vector<GroupElement> out;
        IntVec v(rank_, -radius);
        for (;;) {
            for (int s = 0; s < finite_order(); ++s) out.push_back(GroupElement{v, s});
            int i = rank_ - 1;
            while (i >= 0 && v[i] == radius) {
                v[i] = -radius;
                --i;
            }
            if (i < 0) break;
            ++v[i];
        }
        return out;
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.rank_ == b.rank_ && a.finite_ == b.finite_;
    }

    static IntMat identity_mat(int n) {
        IntMat m(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    }

    static IntMat mat_mul(const IntMat& a, const IntMat& b) {
        const std::size_t n = a.size();
        IntMat r(n, IntVec(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
            }
        }
        return r;
    }

    static IntVec mat_vec(const IntMat& m, const IntVec& v) {
        IntVec r(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
        }
        return r;
    }

private:
    int check_index(int s) const {
        if (s < 0 || s >= finite_order()) {
            throw std::invalid_argument("GroupSpec: point-part index " + std::to_string(s) +
                                        " out of range");
        }
        return s;
    }

    void check_vector(const IntVec& v) const {
        if (static_cast<int>(v.size()) != rank_) {
            throw std::invalid_argument("GroupSpec: translation vector has wrong rank");
        }
    }

    void check_element(const GroupElement& g) const {
        check_vector(g.v);
        check_index(g.s);
    }

    static IntMatrix to_int_matrix(const IntMat& m) {
        IntMatrix r(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            r[i].reserve(m[i].size());
            for (long long x : m[i]) r[i].push_back(to_int(x));
        }
        return r;
    }

    void validate_and_build_tables() {
        if (rank_ < 1) throw std::invalid_argument("GroupSpec: rank must be >= 1");
        if (finite_.empty()) throw std::invalid_argument("GroupSpec: finite part must be nonempty");
        for (const auto& m : finite_) {
            if (static_cast<int>(m.size()) != rank_) {
                throw std::invalid_argument("GroupSpec: finite-part matrix has wrong shape");
            }
            for (const auto& row : m) {
                if (static_cast<int>(row.size()) != rank_) {
                    throw std::invalid_argument("GroupSpec: finite-part matrix has wrong shape");
                }
            }
        }
        if (finite_[0] != identity_mat(rank_)) {
            throw std::invalid_argument("GroupSpec: first finite-part matrix must be the identity");
        }
        for (std::size_t i = 0; i < finite_.size(); ++i) {
            for (std::size_t j = i + 1; j < finite_.size(); ++j) {
                if (finite_[i] == finite_[j]) {
                    throw std::invalid_argument("GroupSpec: duplicate finite-part matrix");
                }
            }
        }
        for (const auto& m : finite_) {
            const Int det = determinant(to_int_matrix(m));
            if (det != 1 && det != -1) {
                throw std::invalid_argument("GroupSpec: finite-part matrix not in GL(n, Z)");
            }
        }
        // Free away from the origin: no nonzero fixed vectors for M != I.
        for (std::size_t s = 1; s < finite_.size(); ++s) {
            IntMat mi = finite_[s];
            for (int i = 0; i < rank_; ++i) mi[i][i] -= 1;
            if (determinant(to_int_matrix(mi)) == 0) {
                throw std::invalid_argument(
                    "GroupSpec: point group does not act freely away from the origin "
                    "(det(M - I) = 0 for a non-identity M)");
            }
        }
        // Closure and inverse tables.
        mul_.assign(finite_.size(), std::vector<int>(finite_.size(), -1));
        for (std::size_t i = 0; i < finite_.size(); ++i) {
            for (std::size_t j = 0; j < finite_.size(); ++j) {
                const IntMat p = mat_mul(finite_[i], finite_[j]);
                int idx = -1;
                for (std::size_t k = 0; k < finite_.size(); ++k) {
                    if (finite_[k] == p) {
                        idx = static_cast<int>(k);
                        break;
                    }
                }
                if (idx < 0) {
                    throw std::invalid_argument("GroupSpec: finite part not closed under products");
                }
                mul_[i][j] = idx;
            }
        }
        inv_.assign(finite_.size(), -1);
        for (std::size_t i = 0; i < finite_.size(); ++i) {
            for (std::size_t j = 0; j < finite_.size(); ++j) {
                if (mul_[i][j] == 0 && mul_[j][i] == 0) {
                    inv_[i] = static_cast<int>(j);
                    break;
                }
            }
            if (inv_[i] < 0) {
                throw std::invalid_argument("GroupSpec: finite part misses an inverse");
            }
        }
    }

    int rank_;
    std::vector<IntMat> finite_;
    std::string preset_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
};

}  // namespace twistalg
