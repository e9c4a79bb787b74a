#include "esys/lattice.hpp"

#include <sstream>

namespace esys {

namespace {

IMat scaled(const IMat& a, i64 c) {
    IMat r = a;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = mul_checked(r(i, j), c);
    return r;
}

// Coordinates of num (over den) in the lattice basis, if integral.
std::optional<Vec> coords_in(const Lattice& l, const Vec& num, i64 den) {
    i64 d = lcm(den, l.denominator());
    Vec x(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) x[i] = mul_checked(num[i], d / den);
    return solve_lower(l.basis_over(d), x);
}

}  // namespace

Lattice::Lattice(const IMat& basis, i64 den) {
    if (den <= 0) throw std::invalid_argument("lattice denominator must be positive");
    if (basis.rows() != basis.cols() || det(basis) == 0)
        throw std::invalid_argument("lattice basis must be square of full rank");
    b_ = hnf(basis).h;
    i64 g = den;
    for (i64 x : b_.data()) g = gcd(g, x);
    if (g > 1) {
        for (int i = 0; i < b_.rows(); ++i)
            for (int j = 0; j < b_.cols(); ++j) b_(i, j) /= g;
        den /= g;
    }
    den_ = den;
}

Lattice Lattice::standard(int d) { return Lattice(IMat::identity(d)); }

Lattice Lattice::diagonal(const Vec& scales, i64 den) { return Lattice(IMat::diag(scales), den); }

IMat Lattice::basis_over(i64 d) const {
    if (d % den_ != 0) throw std::invalid_argument("basis_over: denominator mismatch");
    return scaled(b_, d / den_);
}

bool Lattice::contains(const Vec& num, i64 den) const {
    if (static_cast<int>(num.size()) != rank()) throw std::invalid_argument("lattice: rank mismatch");
    return coords_in(*this, num, den).has_value();
}

bool Lattice::leq(const Lattice& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("lattice: rank mismatch");
    for (int j = 0; j < rank(); ++j)
        if (!o.contains(b_.column(j), den_)) return false;
    return true;
}

std::pair<i64, i64> Lattice::covolume() const {
    i64 num = 1;
    for (int i = 0; i < rank(); ++i) num = mul_checked(num, b_(i, i));
    i64 den = pow_checked(den_, static_cast<unsigned>(rank()));
    i64 g = gcd(num, den);
    return {num / g, den / g};
}

std::string Lattice::str() const {
    std::ostringstream os;
    os << b_.str();
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("lattice_sum: rank mismatch");
    i64 d = lcm(a.denominator(), b.denominator());
    return Lattice(hnf(a.basis_over(d).hcat(b.basis_over(d))).h, d);
}

Lattice dual_lattice(const Lattice& l) {
    // columns of (B/den)^{-T} = den * adj(B)^T / det(B)
    i64 dt = det(l.basis());
    IMat m = scaled(adjugate(l.basis()).transpose(), l.denominator());
    if (dt < 0) {
        m = scaled(m, -1);
        dt = -dt;
    }
    return Lattice(m, dt);
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("lattice_intersect: rank mismatch");
    return dual_lattice(lattice_sum(dual_lattice(a), dual_lattice(b)));
}

LatticePair::LatticePair(Lattice in, Lattice out) : inner(std::move(in)), outer(std::move(out)) {
    if (!inner.leq(outer)) throw std::invalid_argument("lattice pair: inner not contained in outer");
}

bool LatticePair::leq(const LatticePair& o) const {
    return o.inner.leq(inner) && outer.leq(o.outer);
}

LatticePair connecting_pair(const LatticePair& a, const LatticePair& b) {
    return LatticePair(lattice_intersect(a.inner, b.inner), lattice_sum(a.outer, b.outer));
}

LatticeQuotient::LatticeQuotient(const LatticePair& p) : pair_(p) {
    const int d = p.outer.rank();
    IMat c(d, d);
    for (int j = 0; j < d; ++j) {
        auto col = coords_in(p.outer, p.inner.basis().column(j), p.inner.denominator());
        c.set_column(j, *col);
    }
    SnfResult s = snf(c);
    u_ = s.u;
    diag_ = s.diag;
    Vec f;
    for (int i = 0; i < d; ++i)
        if (diag_[i] > 1) {
            keep_.push_back(i);
            f.push_back(diag_[i]);
        }
    q_ = FinMod(f, d);
}

Element LatticeQuotient::from_outer_coords(const Vec& coords) const {
    Element out(keep_.size());
    for (std::size_t j = 0; j < keep_.size(); ++j) {
        i64 s = diag_[keep_[j]], acc = 0;
        for (int t = 0; t < u_.cols(); ++t) acc = mod(acc + mulmod(u_(keep_[j], t), coords[t], s), s);
        out[j] = acc;
    }
    return out;
}

Element LatticeQuotient::from_point(const Vec& num, i64 den) const {
    auto c = coords_in(pair_.outer, num, den);
    if (!c) throw std::invalid_argument("lattice quotient: point outside the outer lattice");
    return from_outer_coords(*c);
}

}  // namespace esys
