// Dense complex linear algebra for small multipartite quantum systems.
//
// Everything here is sized for dimensions up to 64 (six qubits) and favors
// clarity over asymptotics: matrices are row-major std::complex<double>
// buffers, the eigensolver is cyclic Jacobi, and tensor bookkeeping is done
// with explicit digit arithmetic on subsystem indices.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hedgelab {

using cx = std::complex<double>;

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat zero(int n) { return Mat(n, n); }
    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat& operator+=(const Mat& o);
    friend Mat operator*(cx s, const Mat& m);

    Mat adjoint() const;
    cx trace() const;

    // Largest entrywise |difference| against another matrix of equal shape.
    double max_abs_diff(const Mat& o) const;
    double max_abs() const;
    double fro_norm() const;

    bool is_hermitian(double tol = 1e-12) const;
    // (M + M^dagger)/2, used to absorb float drift on values that are
    // Hermitian by construction.
    Mat hermitized() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cx> a_;
};

struct Vec {
    std::vector<cx> a;

    Vec() = default;
    explicit Vec(int dim) : a(dim) {}
    Vec(std::initializer_list<cx> init) : a(init) {}

    int dim() const { return int(a.size()); }
    cx& operator[](int i) { return a[i]; }
    const cx& operator[](int i) const { return a[i]; }

    double norm() const;
    Vec normalized() const;
    cx inner(const Vec& o) const;  // <this|o>, conjugate-linear in *this
    Vec operator-(const Vec& o) const;
    Vec operator+(const Vec& o) const;
    friend Vec operator*(cx s, const Vec& v);
    double distance(const Vec& o) const;
};

// Ordered tensor-factor dimensions.  The global convention throughout the
// library: factors are game-major, and within each game the board register
// precedes the message register.  Hence board factors sit at even positions
// and message factors at odd positions.
struct SubsystemLayout {
    std::vector<int> dims;

    SubsystemLayout() = default;
    SubsystemLayout(std::initializer_list<int> d) : dims(d) {}
    explicit SubsystemLayout(std::vector<int> d) : dims(std::move(d)) {}

    int factor_count() const { return int(dims.size()); }
    int total_dim() const;
    std::vector<int> board_indices() const;    // even positions
    std::vector<int> message_indices() const;  // odd positions
    int dim_of(const std::vector<int>& subset) const;
};

Mat kron(const Mat& A, const Mat& B);
Vec kron(const Vec& u, const Vec& v);
Mat outer(const Vec& u, const Vec& v);  // |u><v|
Vec mat_vec(const Mat& M, const Vec& v);

// Trace out every factor not listed in `keep` (ascending index set).
Mat partial_trace(const Mat& M, const SubsystemLayout& layout,
                  const std::vector<int>& keep);

// Operator C acting on the `where` factors (in layout order), identity on
// the rest, returned in the full interleaved index order.
Mat embed(const Mat& C, const SubsystemLayout& layout,
          const std::vector<int>& where);
Vec apply_on(const Mat& C, const Vec& psi, const SubsystemLayout& layout,
             const std::vector<int>& where);

// Reorder tensor factors.  perm[j] names the old factor that lands at new
// position j; the returned layout is the permuted one.
Vec permute_subsystems(const Vec& psi, const SubsystemLayout& layout,
                       const std::vector<int>& perm);
Mat permute_subsystems(const Mat& M, const SubsystemLayout& layout,
                       const std::vector<int>& perm);

struct EigHerm {
    std::vector<double> values;  // ascending
    Mat vectors;                 // k-th column pairs with values[k]
};

// Cyclic Jacobi eigendecomposition.  Throws std::invalid_argument when the
// input is not Hermitian to 1e-12.
EigHerm eig_herm(const Mat& H);

double min_eig(const Mat& H);
double max_eig(const Mat& H);
double spectral_norm_herm(const Mat& H);

bool psd_check(const Mat& H, double tol);
Mat psd_sqrt(const Mat& P);
// Eigenvalues below `floor` are clamped to `floor` before the -1/2 power,
// so singular inputs yield a finite result instead of blowing up.
Mat psd_inv_sqrt(const Mat& P, double floor_value = 1e-12);
// exp(scale * H) for Hermitian H.
Mat herm_exp(const Mat& H, double scale);
// Same spectral map, reusing a precomputed eigendecomposition.
Mat herm_exp(const EigHerm& eig, double scale);

}  // namespace hedgelab
