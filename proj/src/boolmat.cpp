#include "lcmix/boolmat.hpp"

#include <algorithm>

namespace lcmix {

BoolMatrix::BoolMatrix(int n) : n_(n), wpr_((n + 63) / 64), words_((size_t)n * wpr_, 0) {
    if (n < 1) throw InputError("matrix dimension must be >= 1");
}

BoolMatrix BoolMatrix::identity(int n) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BoolMatrix BoolMatrix::ones(int n) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int w = 0; w < m.wpr_; ++w) {
            int lo = w * 64;
            int bits = std::min(64, n - lo);
            m.words_[(size_t)i * m.wpr_ + w] = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
        }
    return m;
}

void BoolMatrix::set(int i, int j, bool v) {
    auto& w = words_[(size_t)i * wpr_ + (size_t)(j >> 6)];
    if (v)
        w |= 1ULL << (j & 63);
    else
        w &= ~(1ULL << (j & 63));
}

BoolMatrix BoolMatrix::transposed() const {
    BoolMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

bool BoolMatrix::is_all_ones() const { return *this == ones(n_); }

bool BoolMatrix::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

bool BoolMatrix::has_zero_row() const {
    for (int i = 0; i < n_; ++i) {
        bool any = false;
        for (int w = 0; w < wpr_ && !any; ++w) any = words_[(size_t)i * wpr_ + w] != 0;
        if (!any) return true;
    }
    return false;
}

bool BoolMatrix::has_zero_col() const {
    std::vector<std::uint64_t> acc(wpr_, 0);
    for (int i = 0; i < n_; ++i)
        for (int w = 0; w < wpr_; ++w) acc[w] |= words_[(size_t)i * wpr_ + w];
    for (int j = 0; j < n_; ++j)
        if (!((acc[j >> 6] >> (j & 63)) & 1ULL)) return true;
    return false;
}

bool BoolMatrix::operator<(const BoolMatrix& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return words_ < o.words_;
}

std::string BoolMatrix::grid() const {
    std::string out;
    out.reserve((size_t)n_ * (n_ + 1));
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) out += get(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

bool BoolMatrix::support_leq(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.n_ != b.n_) throw InputError("matrix dimension mismatch");
    for (size_t w = 0; w < a.words_.size(); ++w)
        if (a.words_[w] & ~b.words_[w]) return false;
    return true;
}

BoolMatrix bool_product(const BoolMatrix& m1, const BoolMatrix& m2) {
    if (m1.n_ != m2.n_) throw InputError("matrix dimension mismatch");
    const int n = m1.n_;
    const int wpr = m1.wpr_;
    BoolMatrix out(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t* dst = &out.words_[(size_t)i * wpr];
        for (int k = 0; k < n; ++k) {
            if (!m1.get(i, k)) continue;
            const std::uint64_t* src = &m2.words_[(size_t)k * wpr];
            for (int w = 0; w < wpr; ++w) dst[w] |= src[w];
        }
    }
    return out;
}

BoolMatrix bool_power(const BoolMatrix& m, unsigned long long t) {
    BoolMatrix result = BoolMatrix::identity(m.dim());
    BoolMatrix base = m;
    while (t > 0) {
        if (t & 1) result = bool_product(result, base);
        t >>= 1;
        if (t) base = bool_product(base, base);
    }
    return result;
}

IndicatorTuple IndicatorTuple::alternating(int t) {
    IndicatorTuple x;
    x.entries.reserve(t);
    for (int i = 0; i < t; ++i) x.entries.push_back(i % 2 == 0 ? 1 : -1);
    return x;
}

bool IndicatorTuple::balanced() const {
    int sum = 0;
    for (int e : entries) sum += e;
    return sum == 0;
}

BoolMatrix indicator_power(const BoolMatrix& m, const IndicatorTuple& x) {
    BoolMatrix result = BoolMatrix::identity(m.dim());
    std::optional<BoolMatrix> mt;
    for (int e : x.entries) {
        if (e == 1) {
            result = bool_product(result, m);
        } else if (e == -1) {
            if (!mt) mt = m.transposed();
            result = bool_product(result, *mt);
        } else {
            throw InputError("indicator tuple entries must be +1 or -1");
        }
    }
    return result;
}

namespace {

void reach_from(const BoolMatrix& m, int start, bool transpose, std::vector<char>& seen) {
    std::vector<int> stack{start};
    seen.assign(m.dim(), 0);
    seen[start] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < m.dim(); ++u) {
            bool edge = transpose ? m.get(u, v) : m.get(v, u);
            if (edge && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
}

} // namespace

bool is_irreducible(const BoolMatrix& m) {
    const int n = m.dim();
    if (n == 1) return m.get(0, 0);
    if (m.has_zero_row() || m.has_zero_col()) return false;
    std::vector<char> seen;
    reach_from(m, 0, false, seen);
    for (char c : seen)
        if (!c) return false;
    reach_from(m, 0, true, seen);
    for (char c : seen)
        if (!c) return false;
    return true;
}

bool is_primitive(const BoolMatrix& m) {
    const long long n = m.dim();
    return bool_power(m, (unsigned long long)(n * n - 2 * n + 2)).is_all_ones();
}

std::optional<long long> index_of_primitivity(const BoolMatrix& m) {
    const long long n = m.dim();
    const long long wielandt = n * n - 2 * n + 2;
    BoolMatrix p = m;
    for (long long t = 1; t <= wielandt; ++t) {
        if (p.is_all_ones()) return t;
        // a power with a zero row or column can never grow back to J
        if (p.has_zero_row() || p.has_zero_col()) return std::nullopt;
        if (t < wielandt) p = bool_product(p, m);
    }
    return std::nullopt;
}

SliceSet::SliceSet(int arity, int dim) : r_(arity), dim_(dim) {
    if (arity < 2) throw InputError("slice matrices need arity >= 2");
    mats_.assign((size_t)r_ * (r_ - 1), BoolMatrix(dim));
}

int SliceSet::index(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= r_ || j >= r_)
        throw InputError("slice position pair out of range");
    return i * (r_ - 1) + (j < i ? j : j - 1);
}

BoolMatrix& SliceSet::at(int i, int j) { return mats_[index(i, j)]; }
const BoolMatrix& SliceSet::at(int i, int j) const { return mats_[index(i, j)]; }

SliceSet slice_matrices(const RelationalStructure& monic) {
    if (!monic.is_monic()) throw InputError("slice matrices are defined for monic structures");
    const int r = monic.arity(0);
    if (r < 2) throw InputError("slice matrices need arity >= 2");
    SliceSet s(r, monic.domain_size);
    for (const Tuple& t : monic.relations[0])
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (i != j) s.at(i, j).set(t[i], t[j], true);
    return s;
}

} // namespace lcmix
