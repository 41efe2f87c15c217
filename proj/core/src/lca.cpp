#include "stda/lca.hpp"

#include <fstream>
#include <sstream>

namespace stda {

Row Row::slice(long long a, long long b) const {
    if (!covers(a, b)) throw UsageError("row slice out of range");
    Row out;
    out.base = a;
    out.values.assign(values.begin() + static_cast<ptrdiff_t>(a - base),
                      values.begin() + static_cast<ptrdiff_t>(b - base + 1));
    return out;
}

SpacetimeGrid::SpacetimeGrid(FieldPrime field, long long m0, long long m1, long long n0,
                             long long n1)
    : field_(field), m0_(m0), m1_(m1), n0_(n0), n1_(n1) {
    if (m1 < m0 || n1 < n0) throw UsageError("empty grid window");
    long long cells = (m1 - m0 + 1) * (n1 - n0 + 1);
    if (cells > max_cells) {
        throw UsageError("grid of " + std::to_string(cells) + " cells exceeds the size cap");
    }
    cells_.assign(static_cast<size_t>(cells), 0);
}

Row SpacetimeGrid::row(long long n) const {
    if (n < n0_ || n > n1_) throw UsageError("row index outside grid window");
    Row out;
    out.base = m0_;
    out.values.assign(cells_.begin() + static_cast<ptrdiff_t>((n - n0_) * width()),
                      cells_.begin() + static_cast<ptrdiff_t>((n - n0_ + 1) * width()));
    return out;
}

void SpacetimeGrid::set_row(long long n, const Row& row) {
    for (long long m = std::max(m0_, row.lo()); m <= std::min(m1_, row.hi()); ++m) {
        set(m, n, row.at(m));
    }
}

bool SpacetimeGrid::obeys_local_rule(const GeneratingPolynomial& phi, long long* bad_m,
                                     long long* bad_n) const {
    const int l = phi.left_radius();
    const int r = phi.right_radius();
    for (long long n = n0_; n < n1_; ++n) {
        for (long long m = m0_; m <= m1_; ++m) {
            if (m - l < m0_ || m + r > m1_) continue;
            long long acc = 0;
            for (const auto& [e, c] : phi.poly().terms()) {
                acc += static_cast<long long>(c) * at(m - e, n);
            }
            if (field_.reduce(acc) != at(m, n + 1)) {
                if (bad_m) *bad_m = m;
                if (bad_n) *bad_n = n;
                return false;
            }
        }
    }
    return true;
}

Row evolve_row(const GeneratingPolynomial& phi, const Row& row) {
    const int l = phi.left_radius();
    const int r = phi.right_radius();
    if (static_cast<long long>(row.values.size()) <= l + r) {
        throw UsageError("row too short to evolve: need more than l + r cells");
    }
    const FieldPrime& field = phi.field();
    Row out;
    out.base = row.base + l;
    out.values.resize(row.values.size() - static_cast<size_t>(l + r));
    for (size_t k = 0; k < out.values.size(); ++k) {
        long long m = out.base + static_cast<long long>(k);
        long long acc = 0;
        for (const auto& [e, c] : phi.poly().terms()) {
            // coefficient of x^{-i} multiplies u_{m+i}; e = -i.
            acc += static_cast<long long>(c) * row.at(m - e);
        }
        out.values[k] = field.reduce(acc);
    }
    return out;
}

Row extend_backward(const GeneratingPolynomial& phi, const Row& target, const Row& seed) {
    const int l = phi.left_radius();
    const int r = phi.right_radius();
    const FieldPrime& field = phi.field();
    if (phi.poly().coeff(l) == 0 || phi.poly().coeff(-r) == 0) {
        throw UsageError("extend_backward needs exact radii (nonzero extreme coefficients)");
    }
    if (static_cast<long long>(seed.values.size()) != l + r) {
        throw UsageError("backward seed must have exactly l + r cells");
    }
    Row v;
    v.base = target.lo() - l;
    v.values.assign(static_cast<size_t>(target.values.size()) + static_cast<size_t>(l + r), 0);
    const long long c0 = seed.lo();
    if (l + r > 0) {
        if (c0 < v.lo() || seed.hi() > v.hi()) {
            throw UsageError("backward seed lies outside the determinable range");
        }
        for (long long m = c0; m <= seed.hi(); ++m) v.values[static_cast<size_t>(m - v.base)] = seed.at(m);
    }
    const Fp inv_right = field.inv(phi.poly().coeff(-r)); // alpha_r
    const Fp inv_left = field.inv(phi.poly().coeff(l));   // alpha_{-l}
    // Rightward: v_{m+r} from target_m and v_{m-l..m+r-1}.
    for (long long m = c0 + l; m <= target.hi(); ++m) {
        if (m < target.lo()) throw UsageError("target row does not cover the seed position");
        long long acc = 0;
        for (const auto& [e, c] : phi.poly().terms()) {
            long long i = -e;
            if (i == r) continue;
            acc += static_cast<long long>(c) * v.at(m + i);
        }
        Fp rest = field.reduce(acc);
        v.values[static_cast<size_t>(m + r - v.base)] = field.mul(field.sub(target.at(m), rest), inv_right);
    }
    // Leftward: v_{m-l} from target_m and v_{m-l+1..m+r}.
    for (long long m = c0 + l - 1; m >= target.lo(); --m) {
        if (m > target.hi()) throw UsageError("target row does not cover the seed position");
        long long acc = 0;
        for (const auto& [e, c] : phi.poly().terms()) {
            long long i = -e;
            if (i == -l) continue;
            acc += static_cast<long long>(c) * v.at(m + i);
        }
        Fp rest = field.reduce(acc);
        v.values[static_cast<size_t>(m - l - v.base)] = field.mul(field.sub(target.at(m), rest), inv_left);
    }
    return v;
}

SpacetimeGrid shear_grid(const SpacetimeGrid& grid, int r, int s, long long out_m1) {
    SpacetimeGrid out(grid.field(), 0, out_m1, grid.n0(), grid.n1());
    for (long long n = grid.n0(); n <= grid.n1(); ++n) {
        for (long long m = 0; m <= out_m1; ++m) {
            long long src = m - s - static_cast<long long>(r) * n;
            if (!grid.contains(src, n)) {
                throw UsageError("shear_grid: source window does not cover sheared cell");
            }
            out.set(m, n, grid.at(src, n));
        }
    }
    return out;
}

Row project_row(const SpacetimeGrid& grid, long long n) { return grid.row(n); }

void save_grid(const SpacetimeGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write grid file: " + path);
    out << "stdgrid v1\n";
    out << "p " << grid.p() << "\n";
    out << "window " << grid.m0() << " " << grid.m1() << " " << grid.n0() << " " << grid.n1()
        << "\n";
    out.write(reinterpret_cast<const char*>(grid.cells().data()),
              static_cast<std::streamsize>(grid.cells().size()));
}

SpacetimeGrid load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open grid file: " + path);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "stdgrid" || version != "v1") {
        throw UsageError("grid file: expected header \"stdgrid v1\"");
    }
    std::string key;
    int p = 0;
    long long m0, m1, n0, n1;
    in >> key >> p;
    if (key != "p") throw UsageError("grid file: expected key p");
    in >> key >> m0 >> m1 >> n0 >> n1;
    if (key != "window") throw UsageError("grid file: expected key window");
    in.get(); // newline before the raw payload
    SpacetimeGrid grid(FieldPrime(p), m0, m1, n0, n1);
    std::vector<Fp> cells(grid.cells().size());
    in.read(reinterpret_cast<char*>(cells.data()), static_cast<std::streamsize>(cells.size()));
    if (!in) throw UsageError("grid file: truncated payload");
    for (long long n = n0; n <= n1; ++n) {
        for (long long m = m0; m <= m1; ++m) {
            Fp v = cells[static_cast<size_t>((n - n0) * grid.width() + (m - m0))];
            if (v >= p) throw UsageError("grid file: cell value out of range");
            grid.set(m, n, v);
        }
    }
    return grid;
}

} // namespace stda
