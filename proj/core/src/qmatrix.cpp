#include "equihom/qmatrix.hpp"

#include <sstream>

#include "equihom/errors.hpp"

namespace equihom {

QVec to_dense(const SparseVec& v, int dim) {
    QVec out(dim, Rat(0));
    for (const auto& [i, x] : v) out[i] = x;
    return out;
}

SparseVec to_sparse(const QVec& v) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0) out[i] = v[i];
    return out;
}

QMatrix::QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i][i] = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows) {
    int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows_; ++r) {
        for (int c = 0; c < cols; ++c)
            if (rows[r][c] != 0) m.data_[r][c] = rows[r][c];
    }
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVec>& cols, int dim) {
    QMatrix m(dim, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        for (int r = 0; r < dim; ++r)
            if (cols[c][r] != 0) m.data_[r][c] = cols[c][r];
    }
    return m;
}

Rat QMatrix::at(int r, int c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rat(0) : it->second;
}

void QMatrix::set(int r, int c, const Rat& v) {
    if (v == 0)
        data_[r].erase(c);
    else
        data_[r][c] = v;
}

void QMatrix::add_to(int r, int c, const Rat& v) {
    if (v == 0) return;
    auto [it, inserted] = data_[r].try_emplace(c, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) data_[r].erase(it);
    }
}

long long QMatrix::nonzeros() const {
    long long n = 0;
    for (const auto& row : data_) n += static_cast<long long>(row.size());
    return n;
}

bool QMatrix::is_zero() const {
    for (const auto& row : data_)
        if (!row.empty()) return false;
    return true;
}

bool QMatrix::operator==(const QMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
    QMatrix out = *this;
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : other.data_[r]) out.add_to(r, c, v);
    return out;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
    QMatrix out = *this;
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : other.data_[r]) out.add_to(r, c, -v);
    return out;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
    QMatrix out(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (const auto& [k, a] : data_[r])
            for (const auto& [c, b] : other.data_[k]) out.add_to(r, c, a * b);
    }
    return out;
}

QMatrix QMatrix::scaled(const Rat& s) const {
    QMatrix out(rows_, cols_);
    if (s == 0) return out;
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) out.data_[r][c] = v * s;
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) out.data_[c][r] = v;
    return out;
}

QVec QMatrix::apply(const QVec& v) const {
    QVec out(rows_, Rat(0));
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, a] : data_[r]) out[r] += a * v[c];
    return out;
}

SparseVec QMatrix::apply(const SparseVec& v) const {
    SparseVec out;
    for (int r = 0; r < rows_; ++r) {
        Rat acc(0);
        const auto& row = data_[r];
        if (row.size() <= v.size()) {
            for (const auto& [c, a] : row) {
                auto it = v.find(c);
                if (it != v.end()) acc += a * it->second;
            }
        } else {
            for (const auto& [c, x] : v) {
                auto it = row.find(c);
                if (it != row.end()) acc += it->second * x;
            }
        }
        if (acc != 0) out[r] = acc;
    }
    return out;
}

QVec QMatrix::column(int c) const {
    QVec out(rows_, Rat(0));
    for (int r = 0; r < rows_; ++r) {
        auto it = data_[r].find(c);
        if (it != data_[r].end()) out[r] = it->second;
    }
    return out;
}

std::vector<QVec> QMatrix::columns() const {
    std::vector<QVec> out(cols_, QVec(rows_, Rat(0)));
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) out[c][r] = v;
    return out;
}

void QMatrix::insert_block(int r0, int c0, const QMatrix& B) {
    for (int r = 0; r < B.rows_; ++r)
        for (const auto& [c, v] : B.data_[r]) set(r0 + r, c0 + c, v);
}

QMatrix QMatrix::submatrix(int r0, int rcount, int c0, int ccount) const {
    QMatrix out(rcount, ccount);
    for (int r = 0; r < rcount; ++r) {
        auto it = data_[r0 + r].lower_bound(c0);
        for (; it != data_[r0 + r].end() && it->first < c0 + ccount; ++it)
            out.data_[r][it->first - c0] = it->second;
    }
    return out;
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) os << at(r, c).get_str() << (c + 1 < cols_ ? " " : "");
        os << "\n";
    }
    return os.str();
}

bool EchelonBasis::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const int pivot = v.begin()->first;
    const Rat lead = v.begin()->second;
    for (auto& [c, x] : v) x /= lead;
    // Keep existing rows reduced against the new pivot.
    for (auto& [p, row] : rows_) {
        auto it = row.find(pivot);
        if (it == row.end()) continue;
        Rat coeff = it->second;
        for (const auto& [c, x] : v) {
            auto [jt, inserted] = row.try_emplace(c, -coeff * x);
            if (!inserted) {
                jt->second -= coeff * x;
                if (jt->second == 0) row.erase(jt);
            }
        }
    }
    rows_.emplace(pivot, std::move(v));
    return true;
}

bool EchelonBasis::insert(const QVec& v) { return insert(to_sparse(v)); }

SparseVec EchelonBasis::reduce(SparseVec v) const {
    // Rows are mutually reduced, so a single ascending pass suffices.
    for (const auto& [pivot, row] : rows_) {
        auto it = v.find(pivot);
        if (it == v.end()) continue;
        Rat coeff = it->second;
        for (const auto& [c, x] : row) {
            auto [jt, inserted] = v.try_emplace(c, -coeff * x);
            if (!inserted) {
                jt->second -= coeff * x;
                if (jt->second == 0) v.erase(jt);
            }
        }
    }
    return v;
}

bool EchelonBasis::contains(const SparseVec& v) const { return reduce(v).empty(); }

std::vector<int> EchelonBasis::pivot_columns() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_) out.push_back(p);
    return out;
}

std::vector<int> EchelonBasis::free_columns() const {
    std::vector<int> out;
    auto it = rows_.begin();
    for (int c = 0; c < dim_; ++c) {
        while (it != rows_.end() && it->first < c) ++it;
        if (it != rows_.end() && it->first == c) continue;
        out.push_back(c);
    }
    return out;
}

int rank(const QMatrix& m) {
    EchelonBasis basis(m.cols());
    for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
    return basis.rank();
}

std::vector<QVec> kernel_basis(const QMatrix& m) {
    EchelonBasis basis(m.cols());
    for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
    std::vector<QVec> out;
    for (int f : basis.free_columns()) {
        QVec x(m.cols(), Rat(0));
        x[f] = 1;
        for (const auto& [p, row] : basis.rows()) {
            auto it = row.find(f);
            if (it != row.end()) x[p] = -it->second;
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<QVec> image_basis(const QMatrix& m) {
    EchelonBasis basis(m.cols());
    for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
    std::vector<QVec> out;
    for (int p : basis.pivot_columns()) out.push_back(m.column(p));
    return out;
}

namespace {

// Rows (b_i, e_i): reducing (y, 0) leaves (residue, -coefficients).
struct SpanSolver {
    int n, k;
    EchelonBasis basis;
    SpanSolver(const std::vector<QVec>& span, int dim)
        : n(dim), k(static_cast<int>(span.size())), basis(dim + static_cast<int>(span.size())) {
        for (int i = 0; i < k; ++i) {
            SparseVec row = to_sparse(span[i]);
            row[n + i] = 1;
            basis.insert(std::move(row));
        }
    }
    std::optional<QVec> solve(const QVec& y) const {
        SparseVec res = basis.reduce(to_sparse(y));
        QVec coeffs(k, Rat(0));
        for (const auto& [c, v] : res) {
            if (c < n) return std::nullopt;
            coeffs[c - n] = -v;
        }
        return coeffs;
    }
};

}  // namespace

std::optional<QVec> solve_in_span(const std::vector<QVec>& basis, const QVec& y) {
    if (basis.empty()) {
        for (const auto& v : y)
            if (v != 0) return std::nullopt;
        return QVec{};
    }
    return SpanSolver(basis, static_cast<int>(y.size())).solve(y);
}

QMatrix restrict_operator(const QMatrix& op, const std::vector<QVec>& basis) {
    const int k = static_cast<int>(basis.size());
    QMatrix out(k, k);
    if (k == 0) return out;
    SpanSolver solver(basis, op.cols());
    for (int j = 0; j < k; ++j) {
        auto coords = solver.solve(op.apply(basis[j]));
        if (!coords)
            throw verification_error("qmatrix: operator does not preserve the given subspace");
        for (int i = 0; i < k; ++i) out.set(i, j, (*coords)[i]);
    }
    return out;
}

}  // namespace equihom
