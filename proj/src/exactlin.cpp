#include "freefft/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace freefft {

Rational parse_rational(std::string_view text)
{
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.remove_suffix(1);

    auto is_integer = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        });
    };

    const auto slash = trimmed.find('/');
    std::string_view num = trimmed.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trimmed.substr(slash + 1);
    if (!is_integer(num, true) || !is_integer(den, false))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    if (num.front() == '+')
        num.remove_prefix(1);

    mpz_class p(std::string(num), 10);
    mpz_class q(std::string(den), 10);
    if (q == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

namespace sparse {

void axpy(SparseVector& x, const Rational& a, const SparseVector& y)
{
    if (sgn(a) == 0 || y.empty())
        return;
    SparseVector out;
    out.reserve(x.size() + y.size());
    auto xi = x.begin();
    auto yi = y.begin();
    Rational tmp;
    while (xi != x.end() || yi != y.end()) {
        if (yi == y.end() || (xi != x.end() && xi->col < yi->col)) {
            out.push_back(std::move(*xi));
            ++xi;
        } else if (xi == x.end() || yi->col < xi->col) {
            mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), yi->value.get_mpq_t());
            out.push_back({yi->col, tmp});
            ++yi;
        } else {
            mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), yi->value.get_mpq_t());
            mpq_add(xi->value.get_mpq_t(), xi->value.get_mpq_t(), tmp.get_mpq_t());
            if (sgn(xi->value) != 0)
                out.push_back(std::move(*xi));
            ++xi;
            ++yi;
        }
    }
    x = std::move(out);
}

void scale(SparseVector& x, const Rational& a)
{
    if (sgn(a) == 0) {
        x.clear();
        return;
    }
    for (auto& e : x)
        e.value *= a;
}

void canonicalize(SparseVector& x)
{
    std::stable_sort(x.begin(), x.end(), [](const SparseEntry& l, const SparseEntry& r) { return l.col < r.col; });
    SparseVector out;
    out.reserve(x.size());
    for (auto& e : x) {
        if (!out.empty() && out.back().col == e.col)
            out.back().value += e.value;
        else
            out.push_back(std::move(e));
        if (sgn(out.back().value) == 0)
            out.pop_back();
    }
    x = std::move(out);
}

SparseVector from_dense(const std::vector<Rational>& dense)
{
    SparseVector out;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (sgn(dense[i]) != 0)
            out.push_back({i, dense[i]});
    return out;
}

std::vector<Rational> to_dense(const SparseVector& x, std::size_t dim)
{
    std::vector<Rational> out(dim);
    for (const auto& e : x)
        out.at(e.col) = e.value;
    return out;
}

} // namespace sparse

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows_[i].push_back({i, Rational(1)});
    return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("ragged dense matrix");
        m.rows_[i] = sparse::from_dense(rows[i]);
    }
    return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, std::vector<SparseVector> rows)
{
    RationalMatrix m;
    m.cols_ = cols;
    for (const auto& r : rows)
        m.check_row(r);
    m.rows_ = std::move(rows);
    return m;
}

void RationalMatrix::check_row(const SparseVector& v) const
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].col >= cols_)
            throw std::out_of_range("sparse row column out of range");
        if (sgn(v[k].value) == 0)
            throw std::invalid_argument("sparse row stores an explicit zero");
        if (k > 0 && v[k - 1].col >= v[k].col)
            throw std::invalid_argument("sparse row not sorted");
    }
}

std::size_t RationalMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.size();
    return n;
}

void RationalMatrix::set_row(std::size_t i, SparseVector v)
{
    check_row(v);
    rows_.at(i) = std::move(v);
}

void RationalMatrix::append_row(SparseVector v)
{
    check_row(v);
    rows_.push_back(std::move(v));
}

Rational RationalMatrix::at(std::size_t i, std::size_t j) const
{
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const SparseEntry& e, std::size_t c) { return e.col < c; });
    if (it != r.end() && it->col == j)
        return it->value;
    return Rational(0);
}

void RationalMatrix::set(std::size_t i, std::size_t j, const Rational& value)
{
    if (j >= cols_)
        throw std::out_of_range("column out of range");
    auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const SparseEntry& e, std::size_t c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
        if (sgn(value) == 0)
            r.erase(it);
        else
            it->value = value;
    } else if (sgn(value) != 0) {
        r.insert(it, {j, value});
    }
}

void RationalMatrix::add(std::size_t i, std::size_t j, const Rational& value)
{
    set(i, j, at(i, j) + value);
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& e : rows_[i])
            t.rows_[e.col].push_back({i, e.value});
    return t;
}

std::vector<std::vector<Rational>> RationalMatrix::dense() const
{
    std::vector<std::vector<Rational>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_)
        out.push_back(sparse::to_dense(r, cols_));
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: inner dimensions differ");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        SparseVector acc;
        for (const auto& e : a.rows_[i])
            sparse::axpy(acc, e.value, b.rows_[e.col]);
        c.rows_[i] = std::move(acc);
    }
    return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: shapes differ");
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        sparse::axpy(c.rows_[i], Rational(1), b.rows_[i]);
    return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: shapes differ");
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        sparse::axpy(c.rows_[i], Rational(-1), b.rows_[i]);
    return c;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b)
{
    std::vector<SparseVector> rows;
    rows.reserve(a.rows() * b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < b.rows(); ++k) {
            SparseVector r;
            for (const auto& ea : a.row(i))
                for (const auto& eb : b.row(k))
                    r.push_back({ea.col * b.cols() + eb.col, ea.value * eb.value});
            rows.push_back(std::move(r));
        }
    }
    return RationalMatrix::from_rows(a.cols() * b.cols(), std::move(rows));
}

std::string to_string(const RationalMatrix& m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        auto d = sparse::to_dense(m.row(i), m.cols());
        for (std::size_t j = 0; j < d.size(); ++j)
            os << (j ? "," : "") << d[j].get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------

bool EchelonForm::insert(SparseVector v)
{
    while (!v.empty()) {
        auto it = pivot_.find(v.front().col);
        if (it == pivot_.end())
            break;
        Rational c = -v.front().value;
        sparse::axpy(v, c, rows_[it->second]);
    }
    if (v.empty())
        return false;
    if (v.front().value != 1) {
        Rational inv = 1 / v.front().value;
        sparse::scale(v, inv);
    }
    pivot_.emplace(v.front().col, rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

SparseVector EchelonForm::reduce(SparseVector v) const
{
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = pivot_.find(v[pos].col);
        if (it == pivot_.end()) {
            ++pos;
            continue;
        }
        // the pivot row only touches columns >= v[pos].col, so the prefix is stable
        Rational c = -v[pos].value;
        sparse::axpy(v, c, rows_[it->second]);
    }
    return v;
}

std::vector<std::size_t> EchelonForm::pivot_cols() const
{
    std::vector<std::size_t> cols;
    cols.reserve(rows_.size());
    for (const auto& r : rows_)
        cols.push_back(r.front().col);
    std::sort(cols.begin(), cols.end());
    return cols;
}

std::vector<SparseVector> EchelonForm::reduced_rows() const
{
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rows_[a].front().col > rows_[b].front().col;
    });

    // back substitution from the last pivot upwards
    EchelonForm done;
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (std::size_t idx : order) {
        SparseVector head{rows_[idx].front()};
        SparseVector tail(rows_[idx].begin() + 1, rows_[idx].end());
        tail = done.reduce(std::move(tail));
        head.insert(head.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
        done.pivot_.emplace(head.front().col, done.rows_.size());
        done.rows_.push_back(head);
        out.push_back(std::move(head));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

RrefResult rref(const RationalMatrix& m)
{
    EchelonForm ech;
    for (const auto& r : m.row_data())
        ech.insert(r);
    RrefResult out;
    out.rank = ech.rank();
    out.pivot_cols = ech.pivot_cols();
    out.reduced = RationalMatrix::from_rows(m.cols(), ech.reduced_rows());
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    EchelonForm ech;
    for (const auto& r : m.row_data())
        ech.insert(r);
    return ech.rank();
}

Subspace::Subspace(std::size_t ambient_dim)
    : basis_(0, ambient_dim)
{
}

Subspace Subspace::span(const RationalMatrix& m)
{
    auto r = rref(m);
    Subspace s;
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivot_cols);
    for (std::size_t i = 0; i < s.pivots_.size(); ++i)
        s.pivot_row_.emplace(s.pivots_[i], i);
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<SparseVector>& vectors)
{
    return span(RationalMatrix::from_rows(ambient_dim, vectors));
}

SparseVector Subspace::reduce(SparseVector v) const
{
    if (!v.empty() && v.back().col >= ambient_dim())
        throw std::invalid_argument("vector exceeds the ambient dimension");
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = pivot_row_.find(v[pos].col);
        if (it == pivot_row_.end()) {
            ++pos;
            continue;
        }
        Rational c = -v[pos].value;
        sparse::axpy(v, c, basis_.row(it->second));
    }
    return v;
}

bool Subspace::contains(const SparseVector& v) const
{
    return reduce(v).empty();
}

bool Subspace::contains(const std::vector<Rational>& v) const
{
    if (v.size() != ambient_dim())
        throw std::invalid_argument("membership: vector length " + std::to_string(v.size()) +
                                    " does not match ambient dimension " + std::to_string(ambient_dim()));
    return contains(sparse::from_dense(v));
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_dim() != ambient_dim())
        throw std::invalid_argument("subspace inclusion: ambient dimensions differ");
    for (const auto& r : other.basis_.row_data())
        if (!contains(r))
            return false;
    return true;
}

Subspace kernel_basis(const RationalMatrix& m)
{
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivot_cols)
        is_pivot[c] = true;

    std::vector<SparseVector> vectors;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        SparseVector x;
        for (std::size_t i = 0; i < r.rank; ++i) {
            Rational c = r.reduced.at(i, f);
            if (sgn(c) != 0)
                x.push_back({r.pivot_cols[i], -c});
        }
        x.push_back({f, Rational(1)});
        sparse::canonicalize(x);
        vectors.push_back(std::move(x));
    }
    return Subspace::span(m.cols(), vectors);
}

} // namespace freefft
