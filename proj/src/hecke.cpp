#include "esys/hecke.hpp"

#include <set>
#include <stdexcept>

namespace esys {

// ---------------------------------------------------------------- categorical

HeckeMaps hecke_maps(const HeckeDescriptor& t) {
    HeckeMaps out;
    const auto& auts = aut_group(t.aux);
    for (std::size_t j = 0; j < t.target.size(); ++j) {
        const Component& c = t.target.comps[j];
        const int d = c.rank_bound();
        if (t.aux.rank_bound() != d) throw std::invalid_argument("hecke: rank bound mismatch");
        DirectSum ds;
        try {
            ds = direct_sum(c.obj, t.aux, d);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("hecke: " + c.obj.str() + " (+) " + t.aux.str() + " needs more than " +
                                        std::to_string(d) + " generators");
        }
        const FinMod& s = ds.sum;
        std::vector<IMat> gens;
        ModHom on_aux = ds.inj2.after(ds.proj2);
        ModHom on_tgt = ds.inj1.after(ds.proj1);
        for (auto& h : c.group) gens.push_back(ds.inj1.after(ModHom(c.obj, c.obj, h)).after(ds.proj1).plus(on_aux).matrix());
        for (auto& a : auts) gens.push_back(on_tgt.plus(ds.inj2.after(a).after(ds.proj2)).matrix());
        Component aug = Component::with_group(s, gens);
        out.augmented.comps.push_back(aug);

        const i64 level = s.exponent();
        CdMorphism std_s = level_fibration(s, level);
        CdMorphism m = fibration_from_surjection(ds.proj1);
        CdMorphism r = morphism_from_map(s, c.obj, Submodule::zero(s), ds.inj1.image(),
                                         [&](const Element& x) { return ds.proj1.apply(x); });
        out.m.reps.push_back(Rep{level, compose(m, std_s)});
        out.r.reps.push_back(Rep{level, compose(r, std_s)});
        out.m.pi0.push_back(static_cast<int>(j));
        out.r.pi0.push_back(static_cast<int>(j));
    }
    out.m.src = out.r.src = out.augmented;
    out.m.tgt = out.r.tgt = t.target;
    return out;
}

LevelSection hecke_apply(const HeckeDescriptor& t, const LevelSection& s) {
    HeckeMaps hm = hecke_maps(t);
    return transfer(pullback(s, hm.r), hm.m);
}

// ---------------------------------------------------------------- q-binomials

i64 gauss_binom(int n, int m, i64 q) {
    if (n < 0 || m < 0 || m > n) throw std::invalid_argument("gauss_binom: need 0 <= m <= n");
    if (q < 2) throw std::invalid_argument("gauss_binom: q must be at least 2");
    // q-Pascal: [n m] = [n-1 m-1] + q^m [n-1 m]
    std::vector<i64> row{1};
    for (int k = 1; k <= n; ++k) {
        std::vector<i64> next(k + 1, 1);
        for (int j = 1; j < k; ++j) next[j] = add_checked(row[j - 1], mul_checked(pow_checked(q, j), row[j]));
        row = std::move(next);
    }
    return row[m];
}

std::vector<std::vector<Vec>> enumerate_subspaces(int e, int r, i64 q) {
    if (e < 0 || r < 0 || r > e) throw std::invalid_argument("enumerate_subspaces: need 0 <= r <= e");
    if (!is_prime(q)) throw std::invalid_argument("enumerate_subspaces: q must be prime");
    if (e > 6) throw BoundError("enumerate_subspaces: dimension above 6");
    std::vector<std::vector<Vec>> out;
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    while (true) {
        // free entries: row i, column j > piv[i], j not a pivot
        std::vector<std::pair<int, int>> slots;
        std::set<int> pset(piv.begin(), piv.end());
        for (int i = 0; i < r; ++i)
            for (int j = piv[i] + 1; j < e; ++j)
                if (!pset.count(j)) slots.push_back({i, j});
        std::vector<i64> val(slots.size(), 0);
        while (true) {
            std::vector<Vec> basis(r, Vec(e, 0));
            for (int i = 0; i < r; ++i) basis[i][piv[i]] = 1;
            for (std::size_t k = 0; k < slots.size(); ++k) basis[slots[k].first][slots[k].second] = val[k];
            out.push_back(basis);
            std::size_t k = 0;
            while (k < val.size() && ++val[k] == q) val[k++] = 0;
            if (k == val.size()) break;
        }
        // next pivot combination
        int i = r - 1;
        while (i >= 0 && piv[i] == e - r + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

i64 grassmann_count(int e, int r, i64 q, const std::vector<Vec>& v) {
    i64 n = 0;
    for (auto& w : enumerate_subspaces(e, r, q)) {
        std::vector<Vec> rows = w;
        rows.insert(rows.end(), v.begin(), v.end());
        if (rank_mod_p(rows, q) == r) ++n;
    }
    return n;
}

i64 alternating_sum_check(int e, int dim_v, i64 q) {
    if (dim_v < 0 || dim_v > e) throw std::invalid_argument("alternating_sum_check: need 0 <= dim V <= e");
    std::vector<Vec> v;
    for (int i = 0; i < dim_v; ++i) {
        Vec x(e, 0);
        x[i] = 1;
        v.push_back(x);
    }
    i64 total = 0;
    for (int r = 0; r <= e; ++r) {
        i64 term = mul_checked(pow_checked(q, r * (r - 1) / 2), grassmann_count(e, e - r, q, v));
        total = r % 2 ? sub_checked(total, term) : add_checked(total, term);
    }
    return total;
}

// ---------------------------------------------------------------- double cosets

namespace {

i64 mat_index(const IMat& x, i64 level) {
    const int d = x.rows();
    i64 out = 0, stride = 1;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            out += mod(x(k, i), level) * stride;
            stride *= level;
        }
    return out;
}

i64 mat_count(i64 level, int d) {
    i64 n = 1;
    for (int i = 0; i < d * d; ++i) {
        n = mul_checked(n, level);
        if (n > bounds().vector_entries) throw BoundError("matrix function exceeds the entry bound");
    }
    return n;
}

IMat mat_at(i64 idx, i64 level, int d) {
    IMat x(d, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            x(k, i) = idx % level;
            idx /= level;
        }
    return x;
}

}  // namespace

i64 MatFunction::at(const IMat& x) const { return values[mat_index(x, level)]; }

MatFunction mat_function(i64 level, int d, const std::function<i64(const IMat&)>& fn) {
    MatFunction f{level, d, std::vector<i64>(mat_count(level, d))};
    for (i64 i = 0; i < static_cast<i64>(f.values.size()); ++i) f.values[i] = fn(mat_at(i, level, d));
    return f;
}

std::vector<IMat> double_coset_reps(int r, i64 p, int d) {
    if (!is_prime(p)) throw std::invalid_argument("double_coset_oracle: p must be prime");
    if (d < 1 || d > 3 || r < 0 || r > d) throw std::invalid_argument("double_coset_oracle: need 0 <= r <= d <= 3");
    std::vector<IMat> out;
    for (auto& w : enumerate_subspaces(d, r, p)) {
        IMat u(d, d);
        std::vector<bool> pivot(d, false);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < d; ++j) u(j, i) = w[i][j];
            for (int j = 0; j < d; ++j)
                if (w[i][j] != 0) {
                    pivot[j] = true;
                    break;
                }
        }
        int col = r;
        for (int j = 0; j < d; ++j)
            if (!pivot[j]) u(j, col++) = 1;
        if (std::abs(det(u)) != 1) throw std::logic_error("double_coset_oracle: completion is not unimodular");
        // u^-1 = det * adj since det = +-1
        IMat uinv = adjugate(u);
        if (det(u) == -1)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) uinv(i, j) = -uinv(i, j);
        Vec dg(d, 1);
        for (int i = r; i < d; ++i) dg[i] = p;
        out.push_back(u * IMat::diag(dg) * uinv);
    }
    if (static_cast<i64>(out.size()) != gauss_binom(d, r, p))
        throw std::logic_error("double_coset_oracle: coset count differs from the Gaussian binomial");
    // g_a K == g_b K iff g_a^-1 g_b is integral, i.e. adj(P_a) P_b == 0 mod p^(d-r)
    const i64 pd = pow_checked(p, d - r);
    for (std::size_t a = 0; a < out.size(); ++a) {
        IMat adj = adjugate(out[a]);
        for (std::size_t b = a + 1; b < out.size(); ++b) {
            IMat prod = adj * out[b];
            bool integral = true;
            for (auto v : prod.data())
                if (mod(v, pd) != 0) integral = false;
            if (integral) throw std::logic_error("double_coset_oracle: two representatives share a coset");
        }
    }
    return out;
}

MatFunction double_coset_oracle(int r, i64 p, int d, const MatFunction& phi) {
    if (phi.d != d) throw std::invalid_argument("double_coset_oracle: size mismatch");
    i64 a = phi.level;
    while (a % p == 0) a /= p;
    if (a != 1) throw std::invalid_argument("double_coset_oracle: level must be a power of p");
    const auto reps = double_coset_reps(r, p, d);
    const i64 lv = mul_checked(phi.level, p);
    return mat_function(lv, d, [&](const IMat& x) {
        i64 total = 0;
        for (auto& pg : reps) {
            IMat y = x * pg;
            bool integral = true;
            for (auto v : y.data())
                if (mod(v, p) != 0) integral = false;
            if (!integral) continue;
            IMat z(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) z(i, j) = mod(y(i, j), lv) / p;
            total = add_checked(total, phi.at(z));
        }
        return total;
    });
}

}  // namespace esys
