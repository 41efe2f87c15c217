#include "stda/empirical.hpp"

#include <algorithm>
#include <map>

namespace stda {

ForwardOracle::ForwardOracle(GeneratingPolynomial phi, InitialConditionSpec spec, long long max_n,
                             long long max_abs_m)
    : phi_(std::move(phi)),
      spec_(std::move(spec)),
      field_(phi_.field()),
      max_n_(max_n),
      max_abs_m_(max_abs_m) {
    spec_.validate();
    if (spec_.p != phi_.p()) throw UsageError("initial condition and rule use different primes");
}

const LaurentPoly& ForwardOracle::row_poly(long long n) const {
    auto it = rows_.find(n);
    if (it == rows_.end()) {
        it = rows_.emplace(n, frobenius_power(phi_.poly(), n)).first;
    }
    return it->second;
}

Fp ForwardOracle::row0(long long m) const {
    auto it = row0_cache_.find(m);
    if (it == row0_cache_.end()) {
        it = row0_cache_.emplace(m, spec_.row0_at(m)).first;
    }
    return it->second;
}

Fp ForwardOracle::at(long long m, long long n) const {
    if (!valid(m, n)) throw UsageError("oracle point outside domain");
    if (n == 0) return row0(m);
    const LaurentPoly& pn = row_poly(n);
    long long acc = 0;
    for (const auto& [e, c] : pn.terms()) {
        acc += static_cast<long long>(c) * row0(m - e);
    }
    return field_.reduce(acc);
}

ZxzOracle::ZxzOracle(GeneratingPolynomial phi, InitialConditionSpec spec, long long max_n,
                     long long max_abs_m, long long depth)
    : upper_(phi, spec, max_n, max_abs_m),
      lower_(generate_grid_zxz(phi, spec, -max_abs_m, max_abs_m, -depth, -1)) {}

namespace {

struct View {
    int depth = 0;
    long long offset_m = 0;
    long long offset_n = 0;
    long long factor_m = 1;
    long long factor_n = 1;
};

constexpr long long factor_cap = 1LL << 56;

} // namespace

EmpiricalResult empirical_kernel(const DiagramOracle& oracle, std::array<AxisBase, 2> axes,
                                 const EmpiricalOptions& opt) {
    const FieldPrime& field = oracle.field();
    const int p = field.p();
    const long long rm = axis_radix(axes[0], p);
    const long long rn = axis_radix(axes[1], p);
    const int w = opt.id_radius;
    const long long m_lo = axes[0] == AxisBase::Pos ? 0 : -w;
    const long long n_lo = axes[1] == AxisBase::Pos ? 0 : -w;

    auto view_at = [&](const View& v, long long m, long long n) {
        return oracle.at(v.factor_m * m + v.offset_m, v.factor_n * n + v.offset_n);
    };
    auto view_valid = [&](const View& v, long long m, long long n) {
        return oracle.valid(v.factor_m * m + v.offset_m, v.factor_n * n + v.offset_n);
    };

    // Signature on the mandatory overlap square; full validity required there.
    auto signature = [&](const View& v) {
        std::vector<Fp> sig;
        const int s = opt.min_overlap;
        const long long slo_m = axes[0] == AxisBase::Pos ? 0 : -s;
        const long long slo_n = axes[1] == AxisBase::Pos ? 0 : -s;
        for (long long n = slo_n; n <= s; ++n) {
            for (long long m = slo_m; m <= s; ++m) {
                if (!view_valid(v, m, n)) {
                    throw BudgetError(
                        "empirical closure ran out of window: a state view leaves the oracle "
                        "domain inside the minimum overlap square; enlarge the oracle window "
                        "or lower the closure depth");
                }
                sig.push_back(view_at(v, m, n));
            }
        }
        return sig;
    };

    auto views_equal = [&](const View& a, const View& b) {
        for (long long n = n_lo; n <= w; ++n) {
            for (long long m = m_lo; m <= w; ++m) {
                bool va = view_valid(a, m, n);
                bool vb = view_valid(b, m, n);
                if (va && vb && view_at(a, m, n) != view_at(b, m, n)) return false;
            }
        }
        return true;
    };

    EmpiricalResult result{Dfao(field, 2, axes), {}, false, false, 0, 0, 0};
    Dfao machine(field, 2, axes);
    std::vector<View> views;
    std::map<std::vector<Fp>, std::vector<int>> buckets;

    auto intern = [&](const View& v) {
        if (v.depth > opt.max_depth || std::abs(v.factor_m) > factor_cap / (w + 2) ||
            std::abs(v.factor_n) > factor_cap / (w + 2)) {
            throw BudgetError("empirical closure exceeded the depth budget");
        }
        std::vector<Fp> sig = signature(v);
        auto& bucket = buckets[sig];
        for (int id : bucket) {
            if (views_equal(views[static_cast<size_t>(id)], v)) return id;
        }
        if (static_cast<int>(views.size()) >= opt.max_states) {
            throw BudgetError("empirical closure exceeded the state budget");
        }
        int id = static_cast<int>(views.size());
        views.push_back(v);
        bucket.push_back(id);
        if (!oracle.valid(v.offset_m, v.offset_n)) {
            throw BudgetError("empirical closure: state origin left the oracle domain");
        }
        machine.add_state(oracle.at(v.offset_m, v.offset_n));
        return id;
    };

    intern(View{});
    for (size_t s = 0; s < views.size(); ++s) {
        ++result.report.closure_iterations;
        View v = views[s];
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                View child;
                child.depth = v.depth + 1;
                child.offset_m = v.offset_m + i * v.factor_m;
                child.offset_n = v.offset_n + j * v.factor_n;
                child.factor_m = v.factor_m * rm;
                child.factor_n = v.factor_n * rn;
                int target = intern(child);
                machine.set_transition(static_cast<int>(s),
                                       machine.tuple_index(static_cast<uint8_t>(i), static_cast<uint8_t>(j)),
                                       target);
            }
        }
    }
    machine.set_initial(0);
    result.report.states_before = machine.state_count();
    result.automaton = minimize(machine);
    result.report.states_after = result.automaton.state_count();

    // Independent verification pass.
    const long long V = opt.verify_radius;
    const long long vm_lo = axes[0] == AxisBase::Pos ? 0 : -V;
    const long long vn_lo = axes[1] == AxisBase::Pos ? 0 : -V;
    for (long long n = vn_lo; n <= V && !result.has_mismatch; ++n) {
        for (long long m = vm_lo; m <= V; ++m) {
            if (!oracle.valid(m, n)) continue;
            ++result.verified_points;
            if (result.automaton.eval(m, n) != oracle.at(m, n)) {
                result.has_mismatch = true;
                result.mismatch_m = m;
                result.mismatch_n = n;
                break;
            }
        }
    }
    result.verified = !result.has_mismatch && result.verified_points > 0;
    return result;
}

} // namespace stda
