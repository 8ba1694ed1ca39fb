#include "freefft/classical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace freefft {

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const
{
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db)
        return da > db;
    return a > b;
}

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names)) {}

PolyRing PolyRing::matrix(const std::string& symbol, int rows, int cols)
{
    std::vector<std::string> names;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            names.push_back(symbol + std::to_string(i + 1) + std::to_string(j + 1));
    return PolyRing(std::move(names));
}

PolyRing PolyRing::tensor(int m, int n, int t)
{
    auto y = matrix("Y", m, t).names_;
    auto z = matrix("Z", t, n).names_;
    y.insert(y.end(), z.begin(), z.end());
    return PolyRing(std::move(y));
}

namespace {

void enumerate(std::size_t v, int left, Exponent& cur, std::vector<Exponent>& out)
{
    if (v + 1 == cur.size()) {
        cur[v] = static_cast<std::uint8_t>(left);
        out.push_back(cur);
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[v] = static_cast<std::uint8_t>(e);
        enumerate(v + 1, left - e, cur, out);
    }
    cur[v] = 0;
}

} // namespace

std::vector<Exponent> PolyRing::monomials(int k) const
{
    if (k < 0)
        throw std::invalid_argument("negative degree");
    if (k > 255)
        throw std::out_of_range("degree too large");
    std::vector<Exponent> out;
    if (names_.empty()) {
        if (k == 0)
            out.emplace_back();
        return out;
    }
    Exponent cur(names_.size(), 0);
    enumerate(0, k, cur, out);
    return out;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c)
{
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t v)
{
    if (v >= nvars)
        throw std::out_of_range("variable index out of range");
    Exponent e(nvars, 0);
    e[v] = 1;
    return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c)
{
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const auto& last = terms_.rbegin()->first;
    return std::accumulate(last.begin(), last.end(), 0) == degree();
}

void Polynomial::add_term(const Exponent& e, const Rational& c)
{
    if (e.size() != nvars_)
        throw std::invalid_argument("exponent length does not match the ring");
    if (sgn(c) == 0)
        return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw std::invalid_argument("polynomials from different rings");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw std::invalid_argument("polynomials from different rings");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.nvars_ != b.nvars_)
        throw std::invalid_argument("polynomials from different rings");
    Polynomial out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t v = 0; v < e.size(); ++v) {
                const int s = ea[v] + eb[v];
                if (s > 255)
                    throw std::overflow_error("exponent overflow");
                e[v] = static_cast<std::uint8_t>(s);
            }
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial operator*(Polynomial a, const Rational& c)
{
    if (sgn(c) == 0)
        return Polynomial(a.nvars_);
    for (auto& [e, v] : a.terms_)
        v *= c;
    return a;
}

std::string Polynomial::to_string(const PolyRing& ring) const
{
    if (ring.nvars() != nvars_)
        throw std::invalid_argument("ring does not match the polynomial");
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += ring.name(v);
            if (e[v] > 1)
                mono += "^" + std::to_string(e[v]);
        }
        Rational mag = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mono.empty())
            os << freefft::to_string(mag);
        else if (mag == 1)
            os << mono;
        else
            os << freefft::to_string(mag) << "*" << mono;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::map<Exponent, std::size_t> index_of(const std::vector<Exponent>& monos)
{
    std::map<Exponent, std::size_t> idx;
    for (std::size_t i = 0; i < monos.size(); ++i)
        idx.emplace(monos[i], i);
    return idx;
}

SparseVector coords_with(const std::map<Exponent, std::size_t>& idx, const Polynomial& p)
{
    SparseVector v;
    for (const auto& [e, c] : p.terms()) {
        auto it = idx.find(e);
        if (it == idx.end())
            throw std::invalid_argument("polynomial has a term outside the requested degree");
        v.push_back({it->second, c});
    }
    sparse::canonicalize(v);
    return v;
}

void check_shape(int m, int n, int t)
{
    if (m < 1 || n < 1 || t < 1)
        throw std::invalid_argument("m, n, t must be positive");
}

void check_degree(int k)
{
    if (k < 0)
        throw std::invalid_argument("degree must be non-negative");
}

std::size_t y_var(int t, int i, int c) { return static_cast<std::size_t>(i * t + c); }
std::size_t z_var(int m, int n, int t, int c, int j) { return static_cast<std::size_t>(m * t + c * n + j); }

} // namespace

SparseVector coordinates(const PolyRing& ring, const Polynomial& p, int k)
{
    return coords_with(index_of(ring.monomials(k)), p);
}

Polynomial theta_star_generator(int m, int n, int t, int i, int j)
{
    check_shape(m, n, t);
    if (i < 0 || i >= m || j < 0 || j >= n)
        throw std::out_of_range("X index out of range");
    const std::size_t nv = static_cast<std::size_t>(m * t + t * n);
    Polynomial out(nv);
    for (int k = 0; k < t; ++k)
        out += Polynomial::variable(nv, y_var(t, i, k)) * Polynomial::variable(nv, z_var(m, n, t, k, j));
    return out;
}

Polynomial theta_star(int m, int n, int t, const Polynomial& p)
{
    check_shape(m, n, t);
    if (p.nvars() != static_cast<std::size_t>(m * n))
        throw std::invalid_argument("polynomial is not in O(M_{m,n})");
    const std::size_t nv = static_cast<std::size_t>(m * t + t * n);
    std::vector<Polynomial> gens;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            gens.push_back(theta_star_generator(m, n, t, i, j));
    Polynomial out(nv);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term = Polynomial::constant(nv, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            for (int r = 0; r < e[v]; ++r)
                term = term * gens[v];
        out += term;
    }
    return out;
}

RationalMatrix theta_star_matrix(int m, int n, int t, int k)
{
    check_shape(m, n, t);
    check_degree(k);
    auto xring = PolyRing::matrix("X", m, n);
    auto tring = PolyRing::tensor(m, n, t);
    auto src = xring.monomials(k);
    auto tgt_idx = index_of(tring.monomials(2 * k));
    std::vector<SparseVector> rows;
    for (const auto& e : src)
        rows.push_back(coords_with(tgt_idx, theta_star(m, n, t, Polynomial::monomial(e))));
    return RationalMatrix::from_rows(tgt_idx.size(), std::move(rows));
}

Subspace theta_star_kernel(int m, int n, int t, int k)
{
    return kernel_basis(theta_star_matrix(m, n, t, k).transpose());
}

Subspace theta_star_image(int m, int n, int t, int k)
{
    return Subspace::span(theta_star_matrix(m, n, t, k));
}

Polynomial minor(int m, int n, const std::vector<int>& rows, const std::vector<int>& cols)
{
    if (rows.size() != cols.size())
        throw std::invalid_argument("minor needs as many rows as columns");
    for (int r : rows)
        if (r < 0 || r >= m)
            throw std::out_of_range("minor row out of range");
    for (int c : cols)
        if (c < 0 || c >= n)
            throw std::out_of_range("minor column out of range");
    const std::size_t nv = static_cast<std::size_t>(m * n);
    const std::size_t s = rows.size();
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial out(nv);
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = a + 1; b < s; ++b)
                if (perm[a] > perm[b])
                    ++inversions;
        Exponent e(nv, 0);
        for (std::size_t a = 0; a < s; ++a)
            ++e[static_cast<std::size_t>(rows[a] * n + cols[perm[a]])];
        out.add_term(e, Rational(inversions % 2 == 0 ? 1 : -1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

void subsets(int n, int size, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int x = start; x < n; ++x) {
        cur.push_back(x);
        subsets(n, size, x + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Polynomial> minors(int m, int n, int size)
{
    if (size < 1)
        throw std::invalid_argument("minor size must be positive");
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(m, size, 0, cur, rs);
    subsets(n, size, 0, cur, cs);
    std::vector<Polynomial> out;
    for (const auto& r : rs)
        for (const auto& c : cs)
            out.push_back(minor(m, n, r, c));
    return out;
}

Subspace minors_component(int m, int n, int t, int k)
{
    check_shape(m, n, t);
    check_degree(k);
    auto ring = PolyRing::matrix("X", m, n);
    auto idx = index_of(ring.monomials(k));
    const int s = t + 1;
    if (k < s || s > std::min(m, n))
        return Subspace(idx.size());
    std::vector<SparseVector> rows;
    for (const auto& g : minors(m, n, s))
        for (const auto& e : ring.monomials(k - s))
            rows.push_back(coords_with(idx, Polynomial::monomial(e) * g));
    return Subspace::span(idx.size(), rows);
}

namespace {

// E_ab applied to a single monomial, accumulated into out.
void derive_monomial(int m, int n, int t, int a, int b, const Exponent& e, const Rational& c, Polynomial& out)
{
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0)
            continue;
        const int var = static_cast<int>(v);
        std::size_t image;
        Rational sign;
        if (var < m * t) {
            const int i = var / t, col = var % t;
            if (col != b)
                continue;
            image = y_var(t, i, a);
            sign = -1;
        } else {
            const int rel = var - m * t;
            const int row = rel / n, j = rel % n;
            if (row != a)
                continue;
            image = z_var(m, n, t, b, j);
            sign = 1;
        }
        Exponent f = e;
        --f[v];
        ++f[image];
        out.add_term(f, c * sign * e[v]);
    }
}

} // namespace

Polynomial derivation(int m, int n, int t, int a, int b, const Polynomial& p)
{
    check_shape(m, n, t);
    if (a < 0 || a >= t || b < 0 || b >= t)
        throw std::out_of_range("derivation index out of range");
    if (p.nvars() != static_cast<std::size_t>(m * t + t * n))
        throw std::invalid_argument("polynomial is not in the tensor ring");
    Polynomial out(p.nvars());
    for (const auto& [e, c] : p.terms())
        derive_monomial(m, n, t, a, b, e, c, out);
    return out;
}

Subspace glt_invariants(int m, int n, int t, int k)
{
    check_shape(m, n, t);
    check_degree(k);
    auto ring = PolyRing::tensor(m, n, t);
    auto monos = ring.monomials(k);
    auto idx = index_of(monos);
    const std::size_t N = monos.size();
    // rows: (ab, target monomial); columns: source monomial
    RationalMatrix mat(static_cast<std::size_t>(t * t) * N, N);
    std::vector<std::vector<SparseVector>> blocks(static_cast<std::size_t>(t * t), std::vector<SparseVector>(N));
    for (std::size_t r = 0; r < N; ++r)
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                Polynomial img(ring.nvars());
                derive_monomial(m, n, t, a, b, monos[r], Rational(1), img);
                auto& block = blocks[static_cast<std::size_t>(a * t + b)];
                for (const auto& [e, c] : img.terms())
                    block[idx.at(e)].push_back({r, c});
            }
    std::vector<SparseVector> rows;
    rows.reserve(static_cast<std::size_t>(t * t) * N);
    for (auto& block : blocks)
        for (auto& row : block)
            rows.push_back(std::move(row)); // already sorted by r
    return kernel_basis(RationalMatrix::from_rows(N, std::move(rows)));
}

// ---------------------------------------------------------------------------

ClassicalReport fft1_check(int m, int n, int t, int max_degree)
{
    check_shape(m, n, t);
    check_degree(max_degree);
    ClassicalReport rep{m, n, t, max_degree, {}, {}};
    for (int k = 0; k <= max_degree; ++k) {
        auto inv = glt_invariants(m, n, t, 2 * k);
        auto img = theta_star_image(m, n, t, k);
        ClassicalDegree row;
        row.k = k;
        row.lhs_dim = inv.dim();
        row.rhs_dim = img.dim();
        row.inclusion = inv.contains(img);
        row.equal = row.inclusion && inv == img;
        if (!row.equal)
            rep.failures.push_back("degree " + std::to_string(k) + ": invariants dim " + std::to_string(inv.dim()) +
                                   " vs image dim " + std::to_string(img.dim()));
        if (k > 0) {
            auto odd = glt_invariants(m, n, t, 2 * k - 1);
            row.odd_vanish = odd.dim() == 0;
            if (!row.odd_vanish)
                rep.failures.push_back("total degree " + std::to_string(2 * k - 1) + ": invariants dim " +
                                       std::to_string(odd.dim()) + ", expected 0");
        }
        rep.degrees.push_back(row);
    }
    return rep;
}

ClassicalReport fft2_check(int m, int n, int t, int max_degree)
{
    check_shape(m, n, t);
    check_degree(max_degree);
    ClassicalReport rep{m, n, t, max_degree, {}, {}};
    for (int k = 0; k <= max_degree; ++k) {
        auto ker = theta_star_kernel(m, n, t, k);
        auto mins = minors_component(m, n, t, k);
        ClassicalDegree row;
        row.k = k;
        row.lhs_dim = ker.dim();
        row.rhs_dim = mins.dim();
        row.inclusion = ker.contains(mins);
        row.equal = row.inclusion && ker == mins;
        if (!row.equal)
            rep.failures.push_back("degree " + std::to_string(k) + ": kernel dim " + std::to_string(ker.dim()) +
                                   " vs minors dim " + std::to_string(mins.dim()));
        rep.degrees.push_back(row);
    }
    return rep;
}

} // namespace freefft
