#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stda/field.hpp"
#include "stda/laurent.hpp"

namespace stda {

/// A finite word of field elements with a base index: values[i] sits at
/// position base + i.
struct Row {
    long long base = 0;
    std::vector<Fp> values;

    long long lo() const { return base; }
    long long hi() const { return base + static_cast<long long>(values.size()) - 1; }
    Fp at(long long m) const { return values[static_cast<size_t>(m - base)]; }
    bool covers(long long a, long long b) const { return !values.empty() && lo() <= a && b <= hi(); }
    Row slice(long long a, long long b) const;
};

/// {(m, n) : n >= 0, -m - r n <= t}: the cone generated by (1, 0) and
/// (-r, 1), translated by -(t, 0).
struct ConeSupport {
    int r = 0;
    int t = 0;

    bool contains(long long m, long long n) const { return n >= 0 && -m - static_cast<long long>(r) * n <= t; }
};

/// Dense rectangular window [m0..m1] x [n0..n1] of a spacetime diagram,
/// row-major with n increasing.
class SpacetimeGrid {
public:
    static constexpr long long max_cells = 1LL << 26;

    SpacetimeGrid(FieldPrime field, long long m0, long long m1, long long n0, long long n1);

    const FieldPrime& field() const { return field_; }
    int p() const { return field_.p(); }
    long long m0() const { return m0_; }
    long long m1() const { return m1_; }
    long long n0() const { return n0_; }
    long long n1() const { return n1_; }
    long long width() const { return m1_ - m0_ + 1; }
    long long height() const { return n1_ - n0_ + 1; }

    Fp at(long long m, long long n) const { return cells_[index(m, n)]; }
    void set(long long m, long long n, Fp v) { cells_[index(m, n)] = v; }
    bool contains(long long m, long long n) const {
        return m0_ <= m && m <= m1_ && n0_ <= n && n <= n1_;
    }

    /// Copy of row n restricted to the grid window.
    Row row(long long n) const;
    void set_row(long long n, const Row& row);

    /// Checks U_{m,n+1} = sum_i a_i U_{m+i,n} wherever all referenced cells
    /// lie in the window; returns the first violating (m, n) if any.
    bool obeys_local_rule(const GeneratingPolynomial& phi, long long* bad_m = nullptr,
                          long long* bad_n = nullptr) const;

    const std::vector<Fp>& cells() const { return cells_; }

private:
    size_t index(long long m, long long n) const {
        return static_cast<size_t>((n - n0_) * width() + (m - m0_));
    }

    FieldPrime field_;
    long long m0_, m1_, n0_, n1_;
    std::vector<Fp> cells_;
};

/// One application of the local rule. Input on [a, b] yields output on
/// [a + l, b - r]; the input must be longer than l + r cells.
Row evolve_row(const GeneratingPolynomial& phi, const Row& row);

/// The unique row v with Phi(v) = target that agrees with `seed` on the
/// seed's own index range (seed length must be exactly l + r). The result
/// covers [target.lo - l, target.hi + r].
Row extend_backward(const GeneratingPolynomial& phi, const Row& target, const Row& seed);

/// Reindexing V_{m,n} = U_{m - s - r n, n}. The output window is
/// [0, out_m1] x [n0, n1] of the source's n range; every referenced source
/// cell must lie in the source window.
SpacetimeGrid shear_grid(const SpacetimeGrid& grid, int r, int s, long long out_m1);

Row project_row(const SpacetimeGrid& grid, long long n);

/// Versioned binary grid file: text header, then row-major raw bytes.
void save_grid(const SpacetimeGrid& grid, const std::string& path);
SpacetimeGrid load_grid(const std::string& path);

} // namespace stda
