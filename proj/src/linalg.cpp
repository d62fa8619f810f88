#include "hedgelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hedgelab {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat& Mat::operator+=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat multiply: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cx aik = (*this)(i, k);
            if (aik == cx(0.0)) continue;
            const cx* brow = &o.a_[size_t(k) * o.cols_];
            cx* rrow = &r.a_[size_t(i) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

Mat operator*(cx s, const Mat& m) {
    Mat r(m.rows_, m.cols_);
    for (size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = s * m.a_[i];
    return r;
}

Mat Mat::adjoint() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cx Mat::trace() const {
    cx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Mat::max_abs_diff(const Mat& o) const {
    double m = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Mat::fro_norm() const {
    double s = 0.0;
    for (const cx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool Mat::is_hermitian(double tol) const {
    if (!square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

Mat Mat::hermitized() const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
}

double Vec::norm() const {
    double s = 0.0;
    for (const cx& v : a) s += std::norm(v);
    return std::sqrt(s);
}

Vec Vec::normalized() const {
    Vec r = *this;
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    for (cx& v : r.a) v /= n;
    return r;
}

cx Vec::inner(const Vec& o) const {
    cx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * o.a[i];
    return s;
}

Vec Vec::operator-(const Vec& o) const {
    Vec r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

Vec Vec::operator+(const Vec& o) const {
    Vec r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

Vec operator*(cx s, const Vec& v) {
    Vec r = v;
    for (cx& x : r.a) x *= s;
    return r;
}

double Vec::distance(const Vec& o) const { return (*this - o).norm(); }

int SubsystemLayout::total_dim() const {
    int d = 1;
    for (int f : dims) d *= f;
    return d;
}

std::vector<int> SubsystemLayout::board_indices() const {
    std::vector<int> v;
    for (int i = 0; i < factor_count(); i += 2) v.push_back(i);
    return v;
}

std::vector<int> SubsystemLayout::message_indices() const {
    std::vector<int> v;
    for (int i = 1; i < factor_count(); i += 2) v.push_back(i);
    return v;
}

int SubsystemLayout::dim_of(const std::vector<int>& subset) const {
    int d = 1;
    for (int f : subset) d *= dims[f];
    return d;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat r(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            const cx aij = A(i, j);
            if (aij == cx(0.0)) continue;
            for (int k = 0; k < B.rows(); ++k)
                for (int l = 0; l < B.cols(); ++l)
                    r(i * B.rows() + k, j * B.cols() + l) = aij * B(k, l);
        }
    return r;
}

Vec kron(const Vec& u, const Vec& v) {
    Vec r(u.dim() * v.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) r[i * v.dim() + j] = u[i] * v[j];
    return r;
}

Mat outer(const Vec& u, const Vec& v) {
    Mat r(u.dim(), v.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

Vec mat_vec(const Mat& M, const Vec& v) {
    if (M.cols() != v.dim()) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec r(M.rows());
    for (int i = 0; i < M.rows(); ++i) {
        cx s = 0.0;
        for (int j = 0; j < M.cols(); ++j) s += M(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

namespace {

// Splits every full index into its packed digits over `sel` and over the
// complement of `sel`, so tensor bookkeeping reduces to table lookups.
struct IndexSplit {
    std::vector<int> sel_part;   // packed digits of the selected factors
    std::vector<int> rest_part;  // packed digits of the remaining factors
    int sel_dim = 1;
    int rest_dim = 1;
};

IndexSplit split_indices(const SubsystemLayout& layout, const std::vector<int>& sel) {
    const int F = layout.factor_count();
    std::vector<bool> in_sel(F, false);
    int prev = -1;
    for (int f : sel) {
        if (f < 0 || f >= F || f <= prev)
            throw std::invalid_argument("factor index set must be strictly ascending and in range");
        in_sel[f] = true;
        prev = f;
    }
    IndexSplit sp;
    for (int f = 0; f < F; ++f)
        (in_sel[f] ? sp.sel_dim : sp.rest_dim) *= layout.dims[f];
    const int total = layout.total_dim();
    sp.sel_part.resize(total);
    sp.rest_part.resize(total);
    for (int I = 0; I < total; ++I) {
        int rem = I, s = 0, r = 0;
        for (int f = 0; f < F; ++f) {
            int stride = 1;
            for (int g = f + 1; g < F; ++g) stride *= layout.dims[g];
            int digit = rem / stride;
            rem %= stride;
            if (in_sel[f]) s = s * layout.dims[f] + digit;
            else r = r * layout.dims[f] + digit;
        }
        sp.sel_part[I] = s;
        sp.rest_part[I] = r;
    }
    return sp;
}

void check_layout_matches(const Mat& M, const SubsystemLayout& layout) {
    if (!M.square() || M.rows() != layout.total_dim())
        throw std::invalid_argument("matrix dimension does not match layout");
}

}  // namespace

Mat partial_trace(const Mat& M, const SubsystemLayout& layout,
                  const std::vector<int>& keep) {
    check_layout_matches(M, layout);
    IndexSplit sp = split_indices(layout, keep);
    Mat r(sp.sel_dim, sp.sel_dim);
    const int total = layout.total_dim();
    for (int I = 0; I < total; ++I)
        for (int J = 0; J < total; ++J)
            if (sp.rest_part[I] == sp.rest_part[J])
                r(sp.sel_part[I], sp.sel_part[J]) += M(I, J);
    return r;
}

Mat embed(const Mat& C, const SubsystemLayout& layout,
          const std::vector<int>& where) {
    IndexSplit sp = split_indices(layout, where);
    if (!C.square() || C.rows() != sp.sel_dim)
        throw std::invalid_argument("embedded operator does not match selected factors");
    const int total = layout.total_dim();
    Mat r(total, total);
    for (int I = 0; I < total; ++I)
        for (int J = 0; J < total; ++J)
            if (sp.rest_part[I] == sp.rest_part[J])
                r(I, J) = C(sp.sel_part[I], sp.sel_part[J]);
    return r;
}

Vec apply_on(const Mat& C, const Vec& psi, const SubsystemLayout& layout,
             const std::vector<int>& where) {
    if (psi.dim() != layout.total_dim())
        throw std::invalid_argument("state dimension does not match layout");
    return mat_vec(embed(C, layout, where), psi);
}

namespace {

std::vector<int> permuted_positions(const SubsystemLayout& layout,
                                    const std::vector<int>& perm) {
    const int F = layout.factor_count();
    if (int(perm.size()) != F)
        throw std::invalid_argument("permutation length does not match factor count");
    std::vector<bool> seen(F, false);
    for (int p : perm) {
        if (p < 0 || p >= F || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    SubsystemLayout out;
    for (int j = 0; j < F; ++j) out.dims.push_back(layout.dims[perm[j]]);
    // map old full index -> new full index
    const int total = layout.total_dim();
    std::vector<int> to_new(total);
    for (int I = 0; I < total; ++I) {
        std::vector<int> digit(F);
        int rem = I;
        for (int f = F - 1; f >= 0; --f) {
            digit[f] = rem % layout.dims[f];
            rem /= layout.dims[f];
        }
        int J = 0;
        for (int j = 0; j < F; ++j) J = J * out.dims[j] + digit[perm[j]];
        to_new[I] = J;
    }
    return to_new;
}

}  // namespace

Vec permute_subsystems(const Vec& psi, const SubsystemLayout& layout,
                       const std::vector<int>& perm) {
    if (psi.dim() != layout.total_dim())
        throw std::invalid_argument("state dimension does not match layout");
    std::vector<int> to_new = permuted_positions(layout, perm);
    Vec r(psi.dim());
    for (int I = 0; I < psi.dim(); ++I) r[to_new[I]] = psi[I];
    return r;
}

Mat permute_subsystems(const Mat& M, const SubsystemLayout& layout,
                       const std::vector<int>& perm) {
    check_layout_matches(M, layout);
    std::vector<int> to_new = permuted_positions(layout, perm);
    Mat r(M.rows(), M.cols());
    for (int I = 0; I < M.rows(); ++I)
        for (int J = 0; J < M.cols(); ++J) r(to_new[I], to_new[J]) = M(I, J);
    return r;
}

EigHerm eig_herm(const Mat& H) {
    if (!H.square()) throw std::invalid_argument("eig_herm: matrix must be square");
    if (!H.is_hermitian(1e-12)) throw std::invalid_argument("eig_herm: matrix is not Hermitian");

    const int n = H.rows();
    Mat A = H.hermitized();
    Mat V = Mat::identity(n);

    const double target = 1e-14 * std::max(1.0, A.fro_norm());
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off += std::norm(A(i, j));
        if (std::sqrt(off) <= target) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(A(p, q));
                const double scale = std::abs(A(p, p)) + std::abs(A(q, q));
                if (r <= 1e-18 * std::max(1.0, scale)) continue;

                // Phase out the pivot, then rotate as in the real case.
                const cx phase = A(p, q) / r;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cx jpp = c * phase, jpq = s * phase;  // J columns: (jpp,-s), (jpq,c)

                for (int k = 0; k < n; ++k) {  // A <- A J
                    const cx akp = A(k, p), akq = A(k, q);
                    A(k, p) = akp * jpp - akq * s;
                    A(k, q) = akp * jpq + akq * c;
                }
                for (int k = 0; k < n; ++k) {  // A <- J^dagger A
                    const cx apk = A(p, k), aqk = A(q, k);
                    A(p, k) = std::conj(jpp) * apk - s * aqk;
                    A(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();
                for (int k = 0; k < n; ++k) {  // V <- V J
                    const cx vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = vkp * jpp - vkq * s;
                    V(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

    EigHerm out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = A(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = V(i, order[k]);
    }
    return out;
}

double min_eig(const Mat& H) { return eig_herm(H).values.front(); }
double max_eig(const Mat& H) { return eig_herm(H).values.back(); }

double spectral_norm_herm(const Mat& H) {
    EigHerm e = eig_herm(H);
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

bool psd_check(const Mat& H, double tol) { return min_eig(H) >= -tol; }

namespace {

template <typename Fn>
Mat spectral_map(const EigHerm& eig, Fn&& fn) {
    const int n = int(eig.values.size());
    Mat r(n, n);
    for (int k = 0; k < n; ++k) {
        const double fk = fn(eig.values[k]);
        if (fk == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cx vik = eig.vectors(i, k);
            if (vik == cx(0.0)) continue;
            for (int j = 0; j < n; ++j)
                r(i, j) += fk * vik * std::conj(eig.vectors(j, k));
        }
    }
    return r;
}

}  // namespace

Mat psd_sqrt(const Mat& P) {
    return spectral_map(eig_herm(P), [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Mat psd_inv_sqrt(const Mat& P, double floor_value) {
    return spectral_map(eig_herm(P), [floor_value](double x) {
        return 1.0 / std::sqrt(std::max(x, floor_value));
    });
}

Mat herm_exp(const Mat& H, double scale) { return herm_exp(eig_herm(H), scale); }

Mat herm_exp(const EigHerm& eig, double scale) {
    return spectral_map(eig, [scale](double x) { return std::exp(scale * x); });
}

}  // namespace hedgelab
